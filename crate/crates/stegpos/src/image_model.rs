//! 8-bit RGB raster images and the global sample-position indexing scheme
//! shared by the matcher, the extractor and position files.
//!
//! Global indices are 1-based and run over the green plane first (row-major),
//! then red, then blue. Index 1 is the green sample of the top-left pixel and
//! index `3 * width * height` is the blue sample of the bottom-right pixel.

use crate::error::{Error, Result};

/// Which image format `load_image` should expect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatHint {
    Ppm,
    Png,
    Bmp,
}

/// Color channel, in global scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Green,
    Red,
    Blue,
}

/// An 8-bit RGB raster image, one plane per channel, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    red: Vec<u8>,
    green: Vec<u8>,
    blue: Vec<u8>,
}

impl RasterImage {
    /// Builds an image from three planes of `width * height` samples each.
    pub fn from_planes(
        width: u32,
        height: u32,
        red: Vec<u8>,
        green: Vec<u8>,
        blue: Vec<u8>,
    ) -> Result<Self> {
        let n = width as usize * height as usize;
        if n == 0 || red.len() != n || green.len() != n || blue.len() != n {
            return Err(Error::MalformedImage(format!(
                "plane sizes {}/{}/{} do not match {}x{}",
                red.len(),
                green.len(),
                blue.len(),
                width,
                height
            )));
        }
        Ok(RasterImage { width, height, red, green, blue })
    }

    /// Builds an image from interleaved RGB bytes (the PPM payload order).
    pub fn from_interleaved_rgb(width: u32, height: u32, rgb: &[u8]) -> Result<Self> {
        let n = width as usize * height as usize;
        if rgb.len() != 3 * n {
            return Err(Error::MalformedImage(format!(
                "expected {} payload bytes for {}x{}, got {}",
                3 * n,
                width,
                height,
                rgb.len()
            )));
        }
        let mut red = Vec::with_capacity(n);
        let mut green = Vec::with_capacity(n);
        let mut blue = Vec::with_capacity(n);
        for px in rgb.chunks_exact(3) {
            red.push(px[0]);
            green.push(px[1]);
            blue.push(px[2]);
        }
        RasterImage::from_planes(width, height, red, green, blue)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Number of samples per plane.
    pub fn plane_len(&self) -> u32 {
        self.width * self.height
    }

    /// Total number of addressable samples, `3 * width * height`. Also the
    /// largest valid global index.
    pub fn sample_count(&self) -> u32 {
        3 * self.plane_len()
    }

    pub fn plane(&self, channel: Channel) -> &[u8] {
        match channel {
            Channel::Red => &self.red,
            Channel::Green => &self.green,
            Channel::Blue => &self.blue,
        }
    }

    /// Maps a 1-based global index to (channel, row, col).
    pub fn index_to_location(&self, index: u32) -> Result<(Channel, u32, u32)> {
        let n = self.plane_len();
        if index < 1 || index > 3 * n {
            return Err(Error::IndexOutOfRange { index, max: 3 * n });
        }
        let zero = index - 1;
        let channel = match zero / n {
            0 => Channel::Green,
            1 => Channel::Red,
            _ => Channel::Blue,
        };
        let within = zero % n;
        Ok((channel, within / self.width, within % self.width))
    }

    /// Inverse of [`RasterImage::index_to_location`].
    pub fn location_to_index(&self, channel: Channel, row: u32, col: u32) -> Result<u32> {
        if row >= self.height || col >= self.width {
            return Err(Error::IndexOutOfRange {
                index: row * self.width + col + 1,
                max: self.plane_len(),
            });
        }
        let base = match channel {
            Channel::Green => 0,
            Channel::Red => self.plane_len(),
            Channel::Blue => 2 * self.plane_len(),
        };
        Ok(base + row * self.width + col + 1)
    }

    /// Sample value at a 1-based global index.
    pub fn sample_at(&self, index: u32) -> Result<u8> {
        let (channel, row, col) = self.index_to_location(index)?;
        Ok(self.plane(channel)[(row * self.width + col) as usize])
    }

    /// Least significant bit of the sample at a global index.
    pub fn lsb_at(&self, index: u32) -> Result<u8> {
        Ok(self.sample_at(index)? % 2)
    }

    /// Interleaved RGB payload bytes, pixel by pixel.
    pub fn to_interleaved_rgb(&self) -> Vec<u8> {
        let n = self.plane_len() as usize;
        let mut out = Vec::with_capacity(3 * n);
        for i in 0..n {
            out.push(self.red[i]);
            out.push(self.green[i]);
            out.push(self.blue[i]);
        }
        out
    }
}

/// Loads an image from raw bytes in the hinted format.
///
/// PPM means binary P6 with maxval 255. PNG and BMP are decoded with the
/// `image` crate; grayscale inputs are replicated into all three planes.
pub fn load_image(source: &[u8], hint: FormatHint) -> Result<RasterImage> {
    match hint {
        FormatHint::Ppm => decode_ppm(source),
        FormatHint::Png => decode_with_image_crate(source, image::ImageFormat::Png),
        FormatHint::Bmp => decode_with_image_crate(source, image::ImageFormat::Bmp),
    }
}

fn decode_with_image_crate(source: &[u8], format: image::ImageFormat) -> Result<RasterImage> {
    let dynimg = image::load_from_memory_with_format(source, format)
        .map_err(|e| Error::MalformedImage(e.to_string()))?;
    use image::DynamicImage::*;
    match &dynimg {
        ImageLuma16(_) | ImageLumaA16(_) | ImageRgb16(_) | ImageRgba16(_) | ImageRgb32F(_)
        | ImageRgba32F(_) => return Err(Error::UnsupportedBitDepth),
        _ => {}
    }
    let rgb = dynimg.to_rgb8();
    RasterImage::from_interleaved_rgb(rgb.width(), rgb.height(), rgb.as_raw())
}

/// Parses a binary P6 PPM. Header comments starting with '#' are allowed.
pub fn decode_ppm(source: &[u8]) -> Result<RasterImage> {
    let mut cursor = 0usize;
    if source.len() < 2 || &source[0..2] != b"P6" {
        return Err(Error::UnsupportedFormat);
    }
    cursor += 2;
    let width = read_ppm_number(source, &mut cursor)?;
    let height = read_ppm_number(source, &mut cursor)?;
    let maxval = read_ppm_number(source, &mut cursor)?;
    if maxval != 255 {
        return Err(Error::UnsupportedBitDepth);
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedImage("zero dimension".into()));
    }
    // Exactly one whitespace byte separates the header from the payload.
    match source.get(cursor) {
        Some(b) if b.is_ascii_whitespace() => cursor += 1,
        _ => return Err(Error::MalformedImage("missing header terminator".into())),
    }
    RasterImage::from_interleaved_rgb(width, height, &source[cursor..])
}

fn read_ppm_number(source: &[u8], cursor: &mut usize) -> Result<u32> {
    // skip whitespace and '#' comments up to end of line
    loop {
        match source.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while let Some(&b) = source.get(*cursor) {
                    *cursor += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            Some(b) if b.is_ascii_digit() => break,
            _ => return Err(Error::MalformedImage("truncated header".into())),
        }
    }
    let mut value: u64 = 0;
    let mut any = false;
    while let Some(&b) = source.get(*cursor) {
        if !b.is_ascii_digit() {
            break;
        }
        any = true;
        value = value * 10 + u64::from(b - b'0');
        if value > u64::from(u32::MAX) {
            return Err(Error::MalformedImage("header number overflow".into()));
        }
        *cursor += 1;
    }
    if !any {
        return Err(Error::MalformedImage("expected number in header".into()));
    }
    Ok(value as u32)
}

/// Serializes to the canonical P6 form: `P6\n<w> <h>\n255\n` plus payload.
pub fn encode_ppm(image: &RasterImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(&image.to_interleaved_rgb());
    out
}
