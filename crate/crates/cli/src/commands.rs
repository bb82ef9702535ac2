use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use pals::analysis::{Report, MIN_BITS};
use pals::keyschedule::{KeyFile, MainKey, MessageKey};
use pals::Pals;
use rand::RngCore;
use thiserror::Error;

use crate::format::{CipherFile, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_REKEY: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {reason}")]
    KeyFile { path: PathBuf, reason: String },
    #[error("message-key counter exhausted; generate a new key file")]
    Rekey,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Cipher(pals::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Format(_) | CliError::KeyFile { .. } => EXIT_FORMAT,
            CliError::Rekey => EXIT_REKEY,
            CliError::Io { .. } | CliError::Cipher(_) => EXIT_OTHER,
        }
    }
}

impl From<pals::Error> for CliError {
    fn from(e: pals::Error) -> Self {
        match e {
            pals::Error::RekeyRequired => CliError::Rekey,
            other => CliError::Cipher(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_key(path: &Path, text: &str) -> CliResult<KeyFile> {
    text.parse().map_err(|e: pals::Error| match e {
        pals::Error::RekeyRequired => CliError::Rekey,
        e => CliError::KeyFile {
            path: path.to_path_buf(),
            reason: e.to_string(),
        },
    })
}

/// Reads and parses a key file under a shared lock.
pub fn read_key(path: &Path) -> CliResult<KeyFile> {
    let mut file = File::open(path).map_err(io_err(path))?;
    file.lock_shared().map_err(io_err(path))?;
    let mut text = String::new();
    file.read_to_string(&mut text).map_err(io_err(path))?;
    parse_key(path, &text)
}

fn random_key(rng: &mut impl RngCore) -> KeyFile {
    let main_key = loop {
        let mut bytes = [0u8; 32];
        rng.fill_bytes(&mut bytes);
        if let Ok(k) = MainKey::new(bytes) {
            break k;
        }
    };
    let mk_seed = loop {
        let s = rng.next_u32();
        if s != 0 {
            break s;
        }
    };
    KeyFile {
        main_key,
        mk_seed,
        mk_counter: 0,
    }
}

/// Writes a fresh key file; refuses to replace an existing one unless
/// `force` is set.
pub fn keygen(path: &Path, force: bool) -> CliResult<KeyFile> {
    let key = random_key(&mut rand::rng());
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let mut file = opts.open(path).map_err(io_err(path))?;
    file.write_all(key.to_string().as_bytes())
        .map_err(io_err(path))?;
    file.sync_all().map_err(io_err(path))?;
    Ok(key)
}

/// Issues the next message key and persists the advanced counter, holding an
/// exclusive lock on the key file throughout.
fn issue_message_key(path: &Path) -> CliResult<(MainKey, MessageKey)> {
    let mut file = OpenOptions::new()
        .read(true)
        .write(true)
        .open(path)
        .map_err(io_err(path))?;
    file.lock().map_err(io_err(path))?;
    let mut text = String::new();
    file.read_to_string(&mut text).map_err(io_err(path))?;
    let mut key = parse_key(path, &text)?;
    let mut state = key.state()?;
    let mk = state.next_message_key()?;
    key.mk_counter = state.counter();
    file.seek(SeekFrom::Start(0)).map_err(io_err(path))?;
    file.set_len(0).map_err(io_err(path))?;
    file.write_all(key.to_string().as_bytes())
        .map_err(io_err(path))?;
    file.sync_all().map_err(io_err(path))?;
    Ok((key.main_key, mk))
}

pub fn encrypt_bytes(key_path: &Path, plaintext: &[u8]) -> CliResult<CipherFile> {
    let pals = Pals::bundled();
    loop {
        let (main, mk) = issue_message_key(key_path)?;
        let mut payload = plaintext.to_vec();
        match pals.apply(&main, mk, &mut payload) {
            Ok(()) => {
                return Ok(CipherFile {
                    message_key: mk,
                    payload,
                })
            }
            // the expanded message key equals the main key; that message
            // key is burnt and the next one is drawn
            Err(pals::Error::ZeroSessionKey) => continue,
            Err(e) => return Err(e.into()),
        }
    }
}

pub fn decrypt_bytes(key_path: &Path, ciphertext: &[u8]) -> CliResult<Vec<u8>> {
    let c = CipherFile::parse(ciphertext)?;
    let key = read_key(key_path)?;
    let mut data = c.payload;
    Pals::bundled().apply(&key.main_key, c.message_key, &mut data)?;
    Ok(data)
}

pub fn encrypt(key_path: &Path, input: &Path, output: &Path) -> CliResult<MessageKey> {
    let plaintext = fs::read(input).map_err(io_err(input))?;
    let c = encrypt_bytes(key_path, &plaintext)?;
    fs::write(output, c.to_bytes()).map_err(io_err(output))?;
    Ok(c.message_key)
}

pub fn decrypt(key_path: &Path, input: &Path, output: &Path) -> CliResult<()> {
    let ciphertext = fs::read(input).map_err(io_err(input))?;
    let plaintext = decrypt_bytes(key_path, &ciphertext)?;
    fs::write(output, plaintext).map_err(io_err(output))
}

/// The given message key, or the one the next encryption would use.
fn resolve_message_key(key: &KeyFile, mk: Option<u32>) -> CliResult<MessageKey> {
    match mk {
        Some(v) => Ok(MessageKey(v)),
        None => Ok(key.state()?.peek_message_key()?),
    }
}

/// `n_bits` of keystream packed MSB-first; a partial last byte is
/// zero-padded.
pub fn keystream(
    key_path: &Path,
    n_bits: usize,
    mk: Option<u32>,
) -> CliResult<(MessageKey, Vec<u8>)> {
    let key = read_key(key_path)?;
    let mk = resolve_message_key(&key, mk)?;
    let mut g = Pals::bundled().generator(&key.main_key, mk)?;
    Ok((mk, g.keystream_packed(n_bits)))
}

pub fn audit(key_path: &Path, n_bits: usize, mk: Option<u32>) -> CliResult<(MessageKey, Report)> {
    if n_bits < MIN_BITS {
        return Err(CliError::Usage(format!(
            "--bits must be at least {MIN_BITS}"
        )));
    }
    let key = read_key(key_path)?;
    let mk = resolve_message_key(&key, mk)?;
    let pals = Pals::bundled();
    let bits_out = pals.generator(&key.main_key, mk)?.keystream(n_bits);
    let report = Report::audit(&bits_out, pals.spn(), &pals::fixtures::bundled().factors)?;
    Ok((mk, report))
}

/// Parses a message key given as up to 8 hex digits.
pub fn parse_message_key(s: &str) -> Result<u32, String> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() || s.len() > 8 {
        return Err("expected 1 to 8 hex digits".into());
    }
    u32::from_str_radix(s, 16).map_err(|e| e.to_string())
}

/// Hex rendering of the first `n_bits` packed bits, one digit per started
/// nibble.
pub fn hex_bits(bytes: &[u8], n_bits: usize) -> String {
    let mut s = hex::encode(bytes);
    s.truncate(n_bits.div_ceil(4));
    s
}
