//! Conversion between text and the 7-bit ASCII bit stream.
//!
//! Each character becomes exactly 7 bits, most significant bit first, so a
//! message of `n` characters is always a stream of `7n` bits.

use crate::error::{Error, Result};

/// An ordered sequence of secret-message bits. Length is always a multiple
/// of 7 when produced by [`encode_text`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream(Vec<u8>);

impl BitStream {
    /// Wraps raw bits. Panics if any element is not 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BitStream(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Encodes 7-bit ASCII text into its bit stream, MSB first per character.
pub fn encode_text(text: &str) -> Result<BitStream> {
    let mut bits = Vec::with_capacity(text.chars().count() * 7);
    for (i, ch) in text.chars().enumerate() {
        let code = ch as u32;
        if code > 127 {
            return Err(Error::NonAsciiCharacter(i));
        }
        for shift in (0..7).rev() {
            bits.push(((code >> shift) & 1) as u8);
        }
    }
    Ok(BitStream(bits))
}

/// Decodes a bit stream back into text, grouping 7 bits MSB-first per
/// character. Inverse of [`encode_text`].
pub fn decode_bits(stream: &BitStream) -> Result<String> {
    if stream.len() % 7 != 0 {
        return Err(Error::BitCountNotMultipleOfSeven(stream.len()));
    }
    let mut out = String::with_capacity(stream.len() / 7);
    for group in stream.bits().chunks(7) {
        let code = group.iter().fold(0u8, |acc, &b| (acc << 1) | b);
        out.push(code as char);
    }
    Ok(out)
}
