//! Distortion and capacity measurements: MSE, PSNR, per-channel histograms
//! and the one-quarter-match capacity heuristic.

use crate::error::{Error, Result};
use crate::image_model::{Channel, RasterImage};

/// Capacity figures for an image size under the heuristic that roughly one
/// quarter of samples match any given bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityEstimate {
    /// 3 * width * height
    pub total_samples: u64,
    /// floor(total_samples / 4)
    pub estimated_match_bits: u64,
    /// floor(estimated_match_bits / 7)
    pub estimated_characters: u64,
}

/// Mean squared error over all 3 * width * height samples.
pub fn mse(a: &RasterImage, b: &RasterImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch);
    }
    let mut sum = 0u64;
    for channel in [Channel::Red, Channel::Green, Channel::Blue] {
        sum += plane_squared_error(a.plane(channel), b.plane(channel));
    }
    Ok(sum as f64 / a.sample_count() as f64)
}

/// MSE of a single channel, over width * height samples.
pub fn mse_channel(a: &RasterImage, b: &RasterImage, channel: Channel) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch);
    }
    let sum = plane_squared_error(a.plane(channel), b.plane(channel));
    Ok(sum as f64 / a.plane_len() as f64)
}

fn plane_squared_error(a: &[u8], b: &[u8]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum()
}

/// Peak signal-to-noise ratio, 20 * log10(255 / sqrt(MSE)).
/// Positive infinity when the images are sample-identical.
pub fn psnr(a: &RasterImage, b: &RasterImage) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?))
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        20.0 * (255.0 / mse.sqrt()).log10()
    }
}

/// 256-bin intensity histogram of one channel. Bins sum to width * height.
pub fn histogram(image: &RasterImage, channel: Channel) -> [u64; 256] {
    let mut bins = [0u64; 256];
    for &sample in image.plane(channel) {
        bins[sample as usize] += 1;
    }
    bins
}

/// True when every channel's histogram matches bin for bin.
pub fn histograms_identical(a: &RasterImage, b: &RasterImage) -> bool {
    [Channel::Red, Channel::Green, Channel::Blue]
        .iter()
        .all(|&c| histogram(a, c) == histogram(b, c))
}

/// Closed-form capacity estimate for a width x height cover.
pub fn estimate_capacity(width: u32, height: u32) -> CapacityEstimate {
    let total = 3 * width as u64 * height as u64;
    let bits = total / 4;
    CapacityEstimate {
        total_samples: total,
        estimated_match_bits: bits,
        estimated_characters: bits / 7,
    }
}

/// Empirically achievable capacity of a concrete cover: runs the first-fit
/// scan against alternating bits until the image is exhausted and reports
/// how many bits actually matched.
pub fn measured_capacity_bits(image: &RasterImage) -> usize {
    let mut cursor = 1u32;
    let mut matched = 0usize;
    let max = image.sample_count();
    let mut want = 0u8;
    while cursor <= max {
        if image.lsb_at(cursor).unwrap() == want {
            matched += 1;
            want ^= 1;
        }
        cursor += 1;
    }
    matched
}
