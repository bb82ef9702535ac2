//! On-disk ciphertext: `"PALS" | 0x01 | message key (u32, big-endian) | payload`.

use pals::keyschedule::MessageKey;
use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"PALS";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("not a PALS ciphertext (bad magic)")]
    BadMagic,
    #[error("unsupported ciphertext version {0:#04x}")]
    BadVersion(u8),
    #[error("ciphertext truncated: {0} bytes, header needs {HEADER_LEN}")]
    Truncated(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherFile {
    pub message_key: MessageKey,
    pub payload: Vec<u8>,
}

impl CipherFile {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.message_key.0.to_be_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    /// Magic is checked first, so non-PALS input is rejected even when short.
    pub fn parse(bytes: &[u8]) -> Result<Self, FormatError> {
        let magic_len = bytes.len().min(MAGIC.len());
        if bytes[..magic_len] != MAGIC[..magic_len] {
            return Err(FormatError::BadMagic);
        }
        if bytes.len() > MAGIC.len() && bytes[4] != VERSION {
            return Err(FormatError::BadVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(FormatError::Truncated(bytes.len()));
        }
        let mk = u32::from_be_bytes(bytes[5..9].try_into().expect("four bytes"));
        Ok(CipherFile {
            message_key: MessageKey(mk),
            payload: bytes[HEADER_LEN..].to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_bit_exact() {
        let c = CipherFile {
            message_key: MessageKey(0x0102_0304),
            payload: vec![0xaa, 0xbb],
        };
        assert_eq!(c.to_bytes(), b"PALS\x01\x01\x02\x03\x04\xaa\xbb");
        assert_eq!(CipherFile::parse(&c.to_bytes()).unwrap(), c);
    }

    #[test]
    fn empty_payload() {
        let c = CipherFile::parse(b"PALS\x01\0\0\0\x07").unwrap();
        assert_eq!(c.message_key, MessageKey(7));
        assert!(c.payload.is_empty());
    }

    #[test]
    fn malformed_headers() {
        assert_eq!(
            CipherFile::parse(b"PALX\x01\0\0\0\x07"),
            Err(FormatError::BadMagic)
        );
        assert_eq!(CipherFile::parse(b"XY"), Err(FormatError::BadMagic));
        assert_eq!(
            CipherFile::parse(b"PALS\x02\0\0\0\x07"),
            Err(FormatError::BadVersion(2))
        );
        assert_eq!(
            CipherFile::parse(b"PALS\x01\0\0"),
            Err(FormatError::Truncated(7))
        );
        assert_eq!(CipherFile::parse(b""), Err(FormatError::Truncated(0)));
    }
}
