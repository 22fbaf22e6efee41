//! Classical LSB replacement, kept around as the distortion baseline the
//! position matcher avoids. Samples are adjusted by at most one: an odd
//! sample carrying a 0 bit is decremented, an even sample carrying a 1 bit
//! is incremented, matching samples stay put.

use crate::bitstream::BitStream;
use crate::error::{Error, Result};
use crate::image_model::RasterImage;

/// Embeds bits sequentially along the global scan order (green, red, blue,
/// row-major) and returns the modified copy. The input is untouched.
pub fn embed_lsb(image: &RasterImage, bits: &BitStream) -> Result<RasterImage> {
    let max = image.sample_count() as usize;
    if bits.len() > max {
        return Err(Error::InsufficientCapacity { matched: max, required: bits.len() });
    }
    let n = image.plane_len() as usize;
    let mut planes = [
        image.plane(crate::image_model::Channel::Green).to_vec(),
        image.plane(crate::image_model::Channel::Red).to_vec(),
        image.plane(crate::image_model::Channel::Blue).to_vec(),
    ];
    for (k, &bit) in bits.bits().iter().enumerate() {
        let sample = &mut planes[k / n][k % n];
        if *sample % 2 != bit {
            if *sample % 2 == 1 {
                *sample -= 1;
            } else {
                *sample += 1;
            }
        }
    }
    let [green, red, blue] = planes;
    RasterImage::from_planes(image.width(), image.height(), red, green, blue)
}

/// LSBs of the first `bit_count` samples in scan order.
pub fn extract_lsb(image: &RasterImage, bit_count: usize) -> Result<BitStream> {
    let max = image.sample_count();
    if bit_count > max as usize {
        return Err(Error::IndexOutOfRange { index: bit_count as u32, max });
    }
    let mut bits = Vec::with_capacity(bit_count);
    for k in 1..=bit_count as u32 {
        bits.push(image.lsb_at(k)?);
    }
    Ok(BitStream::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_model::{Channel, RasterImage};

    fn green_image(samples: &[u8]) -> RasterImage {
        let n = samples.len();
        RasterImage::from_planes(n as u32, 1, vec![100; n], samples.to_vec(), vec![200; n])
            .unwrap()
    }

    #[test]
    fn sample_rules() {
        let img = green_image(&[155, 154, 154]);
        let bits = BitStream::from_bits(vec![0, 0, 1]);
        let out = embed_lsb(&img, &bits).unwrap();
        assert_eq!(out.plane(Channel::Green), &[154, 154, 155]);
    }

    #[test]
    fn zero_bits_is_identity() {
        let img = green_image(&[1, 2, 3]);
        let out = embed_lsb(&img, &BitStream::from_bits(vec![])).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn boundary_values_stay_in_range() {
        let img = green_image(&[0, 255]);
        let out = embed_lsb(&img, &BitStream::from_bits(vec![1, 0])).unwrap();
        assert_eq!(out.plane(Channel::Green), &[1, 254]);
    }

    #[test]
    fn untouched_beyond_message() {
        let img = green_image(&[10, 11, 12, 13]);
        let out = embed_lsb(&img, &BitStream::from_bits(vec![1])).unwrap();
        assert_eq!(out.plane(Channel::Green)[1..], img.plane(Channel::Green)[1..]);
        assert_eq!(out.plane(Channel::Red), img.plane(Channel::Red));
        assert_eq!(out.plane(Channel::Blue), img.plane(Channel::Blue));
    }

    #[test]
    fn extract_reads_parities() {
        let img = green_image(&[154, 77, 2, 255]);
        let bits = extract_lsb(&img, 4).unwrap();
        assert_eq!(bits.bits(), &[0, 1, 0, 1]);
        assert!(extract_lsb(&img, 0).unwrap().is_empty());
    }

    #[test]
    fn embed_extract_round_trip() {
        let img = green_image(&[9, 8, 7, 6, 5, 4, 3, 2]);
        let bits = BitStream::from_bits(vec![1, 0, 1, 1, 0, 0, 1, 0]);
        let stego = embed_lsb(&img, &bits).unwrap();
        assert_eq!(extract_lsb(&stego, bits.len()).unwrap(), bits);
    }

    #[test]
    fn over_capacity_is_rejected() {
        let img = green_image(&[1]);
        let err = embed_lsb(&img, &BitStream::from_bits(vec![0, 1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::InsufficientCapacity { matched: 3, required: 4 });
    }
}
