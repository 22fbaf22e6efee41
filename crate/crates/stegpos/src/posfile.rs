//! The SPM1 sealed position-file format.
//!
//! Layout, all multi-byte integers big-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "SPM1"
//! 4       1     version (1)
//! 5       4     width in pixels
//! 9       4     height in pixels
//! 13      1     channel order (0 = green, red, blue)
//! 14      2     bound-image-name length in characters (0 if unbound)
//! 16      4     position count
//! 20      16    salt
//! 36      16    key verifier: first 16 bytes of SHA-256(salt || key)
//! 52      4*n   positions as u32, XORed with the keystream
//! ```
//!
//! The keystream is SHA-256(salt || key || counter) blocks with a 32-bit
//! big-endian counter starting at 0. This is a key gate plus obfuscation,
//! not authenticated encryption; the positions are worthless without the
//! cover image either way.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matcher::PositionList;

pub const MAGIC: &[u8; 4] = b"SPM1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 52;
const CHANNEL_ORDER_GRB: u8 = 0;

/// A non-empty secret key shared between sender and receiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey(Vec<u8>);

impl SecretKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::MalformedPositionFile("empty secret key".into()));
        }
        Ok(SecretKey(bytes))
    }

    pub fn bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Everything recovered from a successfully opened position file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenedPositionFile {
    pub positions: PositionList,
    pub width: u32,
    pub height: u32,
    pub name_length: u16,
}

fn verifier(salt: &[u8; 16], key: &SecretKey) -> [u8; 16] {
    let mut hasher = Sha256::new();
    hasher.update(salt);
    hasher.update(key.bytes());
    let digest = hasher.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&digest[..16]);
    out
}

/// XORs `data` in place with SHA-256(salt || key || counter) blocks.
fn apply_keystream(data: &mut [u8], salt: &[u8; 16], key: &SecretKey) {
    for (counter, chunk) in data.chunks_mut(32).enumerate() {
        let mut hasher = Sha256::new();
        hasher.update(salt);
        hasher.update(key.bytes());
        hasher.update((counter as u32).to_be_bytes());
        let block = hasher.finalize();
        for (byte, k) in chunk.iter_mut().zip(block) {
            *byte ^= k;
        }
    }
}

/// Seals a position list with a caller-supplied salt. Deterministic; tests
/// and the CLI's seed flag go through here.
pub fn seal_with_salt(
    positions: &PositionList,
    key: &SecretKey,
    width: u32,
    height: u32,
    name_length: u16,
    salt: [u8; 16],
) -> Result<Vec<u8>> {
    let max = 3u64 * u64::from(width) * u64::from(height);
    for &pos in positions.indices() {
        if pos == 0 || u64::from(pos) > max {
            return Err(Error::PositionOutOfRange { position: pos, max: max as u32 });
        }
    }
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * positions.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&width.to_be_bytes());
    out.extend_from_slice(&height.to_be_bytes());
    out.push(CHANNEL_ORDER_GRB);
    out.extend_from_slice(&name_length.to_be_bytes());
    out.extend_from_slice(&(positions.len() as u32).to_be_bytes());
    out.extend_from_slice(&salt);
    out.extend_from_slice(&verifier(&salt, key));
    let payload_start = out.len();
    for &pos in positions.indices() {
        out.extend_from_slice(&pos.to_be_bytes());
    }
    apply_keystream(&mut out[payload_start..], &salt, key);
    Ok(out)
}

/// Seals with a fresh random salt.
pub fn seal(
    positions: &PositionList,
    key: &SecretKey,
    width: u32,
    height: u32,
    name_length: u16,
) -> Result<Vec<u8>> {
    let mut salt = [0u8; 16];
    rand::Rng::fill(&mut rand::thread_rng(), &mut salt);
    seal_with_salt(positions, key, width, height, name_length, salt)
}

/// Opens a sealed file. The verifier is checked before any position byte is
/// decoded; a mismatch is `WrongKey` and nothing else is revealed.
pub fn open(data: &[u8], key: &SecretKey) -> Result<OpenedPositionFile> {
    if data.len() < HEADER_LEN {
        return Err(Error::MalformedPositionFile("shorter than header".into()));
    }
    if &data[0..4] != MAGIC {
        return Err(Error::MalformedPositionFile("bad magic".into()));
    }
    if data[4] != VERSION {
        return Err(Error::MalformedPositionFile(format!("unknown version {}", data[4])));
    }
    let width = u32::from_be_bytes(data[5..9].try_into().unwrap());
    let height = u32::from_be_bytes(data[9..13].try_into().unwrap());
    if data[13] != CHANNEL_ORDER_GRB {
        return Err(Error::MalformedPositionFile(format!(
            "unknown channel order {}",
            data[13]
        )));
    }
    let name_length = u16::from_be_bytes(data[14..16].try_into().unwrap());
    let count = u32::from_be_bytes(data[16..20].try_into().unwrap()) as usize;
    let mut salt = [0u8; 16];
    salt.copy_from_slice(&data[20..36]);

    if verifier(&salt, key) != data[36..52] {
        return Err(Error::WrongKey);
    }

    if data.len() != HEADER_LEN + 4 * count {
        return Err(Error::MalformedPositionFile(format!(
            "payload length {} does not match count {}",
            data.len() - HEADER_LEN,
            count
        )));
    }
    if count % 7 != 0 {
        return Err(Error::MalformedPositionFile(format!(
            "position count {count} is not a multiple of 7"
        )));
    }
    let mut payload = data[HEADER_LEN..].to_vec();
    apply_keystream(&mut payload, &salt, key);

    let max = 3u64 * u64::from(width) * u64::from(height);
    let mut positions = Vec::with_capacity(count);
    let mut previous = 0u32;
    for chunk in payload.chunks_exact(4) {
        let pos = u32::from_be_bytes(chunk.try_into().unwrap());
        if pos <= previous {
            return Err(Error::MalformedPositionFile(
                "positions not strictly increasing".into(),
            ));
        }
        if u64::from(pos) > max {
            return Err(Error::MalformedPositionFile(format!(
                "position {pos} exceeds {max}"
            )));
        }
        previous = pos;
        positions.push(pos);
    }

    Ok(OpenedPositionFile {
        positions: PositionList::from_indices(positions),
        width,
        height,
        name_length,
    })
}
