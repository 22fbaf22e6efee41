//! Position-matching steganography.
//!
//! Classical LSB schemes change a cover image so that its least significant
//! bits spell the secret. This library never touches the cover: it records
//! the positions whose LSBs already equal the secret's bits, seals those
//! positions in a key-gated file, and recovers the message later by reading
//! the LSBs back at those positions. The cover image stays byte-identical,
//! so MSE against the original is exactly zero and histograms are
//! unchanged.
//!
//! A classical LSB-replacement baseline and an MSE/PSNR/histogram metrics
//! suite are included so the zero-distortion property can be checked rather
//! than taken on faith.

pub mod baseline_lsb;
pub mod bitstream;
pub mod error;
pub mod extractor;
pub mod image_model;
pub mod matcher;
pub mod metrics;
pub mod posfile;

pub use error::{Error, Result};

pub use bitstream::{decode_bits, encode_text, BitStream};
pub use extractor::extract_message;
pub use image_model::{load_image, Channel, FormatHint, RasterImage};
pub use matcher::{match_positions, verify_positions, MatchOptions, PositionList};
pub use posfile::{open, seal, OpenedPositionFile, SecretKey};
