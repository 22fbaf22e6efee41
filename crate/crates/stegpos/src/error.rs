use thiserror::Error;

/// Errors produced by the stegpos library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("character at index {0} is not 7-bit ASCII")]
    NonAsciiCharacter(usize),

    #[error("bit count {0} is not a multiple of 7")]
    BitCountNotMultipleOfSeven(usize),

    #[error("malformed image: {0}")]
    MalformedImage(String),

    #[error("unsupported image format")]
    UnsupportedFormat,

    #[error("unsupported bit depth (only 8-bit samples, maxval 255)")]
    UnsupportedBitDepth,

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("insufficient capacity: matched {matched} of {required} bits")]
    InsufficientCapacity { matched: usize, required: usize },

    #[error("position {position} out of range (max {max})")]
    PositionOutOfRange { position: u32, max: u32 },

    #[error("wrong secret key")]
    WrongKey,

    #[error("malformed position file: {0}")]
    MalformedPositionFile(String),

    #[error("image dimensions differ")]
    DimensionMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
