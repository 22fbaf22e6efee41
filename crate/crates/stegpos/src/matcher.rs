//! First-fit position matching: the sender-side operation.
//!
//! Instead of writing message bits into the image, a single forward cursor
//! walks the global sample order and records, for each secret bit, the next
//! position whose LSB already equals it. The cover image is never touched.

use crate::bitstream::{encode_text, BitStream};
use crate::error::{Error, Result};
use crate::image_model::RasterImage;

/// One 1-based global index per secret bit, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionList(Vec<u32>);

impl PositionList {
    pub fn from_indices(positions: Vec<u32>) -> Self {
        PositionList(positions)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Options for [`match_positions`].
#[derive(Debug, Clone, Default)]
pub struct MatchOptions {
    /// When set, this name is appended to the message before encoding, so
    /// the positions also spell out which image they belong to.
    pub bind_image_name: Option<String>,
}

/// Finds positions whose LSBs spell the message (plus bound name, if any).
///
/// The scan is a single pass: the cursor starts at index 1 and never
/// rewinds, so the result is strictly increasing. Fails with
/// `InsufficientCapacity` if the image runs out of samples first.
pub fn match_positions(
    image: &RasterImage,
    message: &str,
    options: &MatchOptions,
) -> Result<PositionList> {
    let mut full = message.to_string();
    if let Some(name) = &options.bind_image_name {
        full.push_str(name);
    }
    let bits = encode_text(&full)?;
    match_bits(image, &bits)
}

/// Bit-level form of [`match_positions`].
pub fn match_bits(image: &RasterImage, bits: &BitStream) -> Result<PositionList> {
    let max = image.sample_count();
    let mut positions = Vec::with_capacity(bits.len());
    let mut cursor: u32 = 1;
    for (matched, &bit) in bits.bits().iter().enumerate() {
        loop {
            if cursor > max {
                return Err(Error::InsufficientCapacity {
                    matched,
                    required: bits.len(),
                });
            }
            if image.lsb_at(cursor)? == bit {
                positions.push(cursor);
                cursor += 1;
                break;
            }
            cursor += 1;
        }
    }
    Ok(PositionList(positions))
}

/// Checks that `positions` are strictly increasing, in range, and that the
/// LSB at each one equals the corresponding bit. Never errors; any
/// violation (including a length mismatch) yields `false`.
pub fn verify_positions(image: &RasterImage, positions: &PositionList, bits: &BitStream) -> bool {
    if positions.len() != bits.len() {
        return false;
    }
    let mut previous = 0u32;
    for (&pos, &bit) in positions.indices().iter().zip(bits.bits()) {
        if pos <= previous {
            return false;
        }
        match image.lsb_at(pos) {
            Ok(lsb) if lsb == bit => previous = pos,
            _ => return false,
        }
    }
    true
}
