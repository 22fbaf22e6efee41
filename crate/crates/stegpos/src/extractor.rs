//! Receiver-side extraction: read LSBs back at the recorded positions and
//! regroup them into characters.

use crate::bitstream::{decode_bits, BitStream};
use crate::error::Result;
use crate::image_model::RasterImage;
use crate::matcher::PositionList;

/// Reads the LSB at every position in order and decodes the bit stream as
/// 7-bit ASCII. Exact inverse of the matcher on the same image.
pub fn extract_message(image: &RasterImage, positions: &PositionList) -> Result<String> {
    let bits = extract_bits(image, positions)?;
    decode_bits(&bits)
}

/// The raw bit stream at the given positions.
pub fn extract_bits(image: &RasterImage, positions: &PositionList) -> Result<BitStream> {
    let mut bits = Vec::with_capacity(positions.len());
    for &pos in positions.indices() {
        bits.push(image.lsb_at(pos)?);
    }
    Ok(BitStream::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matcher::{match_positions, MatchOptions, PositionList};
    use crate::image_model::RasterImage;

    fn noisy_image(w: u32, h: u32, seed: u64) -> RasterImage {
        let n = (w * h) as usize;
        let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 32) as u8
        };
        let r: Vec<u8> = (0..n).map(|_| next()).collect();
        let g: Vec<u8> = (0..n).map(|_| next()).collect();
        let b: Vec<u8> = (0..n).map(|_| next()).collect();
        RasterImage::from_planes(w, h, r, g, b).unwrap()
    }

    #[test]
    fn hello_world_round_trip() {
        let img = noisy_image(16, 16, 7);
        let positions = match_positions(&img, "HelloWorld", &MatchOptions::default()).unwrap();
        assert_eq!(positions.len(), 70);
        assert_eq!(extract_message(&img, &positions).unwrap(), "HelloWorld");
    }

    #[test]
    fn empty_positions_empty_message() {
        let img = noisy_image(2, 2, 1);
        assert_eq!(extract_message(&img, &PositionList::from_indices(vec![])).unwrap(), "");
    }

    #[test]
    fn different_image_yields_different_text() {
        let a = noisy_image(8, 8, 42);
        let b = noisy_image(8, 8, 43);
        let positions = match_positions(&a, "Hi", &MatchOptions::default()).unwrap();
        let from_a = extract_message(&a, &positions).unwrap();
        let from_b = extract_message(&b, &positions).unwrap();
        assert_eq!(from_a, "Hi");
        assert_ne!(from_a, from_b);
    }

    #[test]
    fn ragged_position_count_is_an_error() {
        let img = noisy_image(4, 4, 9);
        let positions = PositionList::from_indices(vec![1, 2, 3]);
        assert_eq!(
            extract_message(&img, &positions),
            Err(Error::BitCountNotMultipleOfSeven(3))
        );
    }

    #[test]
    fn out_of_range_position_is_an_error() {
        let img = noisy_image(2, 2, 9);
        let positions = PositionList::from_indices(vec![1, 2, 3, 4, 5, 6, 99]);
        assert_eq!(
            extract_message(&img, &positions),
            Err(Error::IndexOutOfRange { index: 99, max: 12 })
        );
    }
}
