use std::fmt;
use std::str::FromStr;

use super::{MainKey, MessageKeyState};
use crate::{Error, Result};

/// Text key file:
///
/// ```text
/// mainkey=<64 hex chars>
/// mkseed=<8 hex chars>
/// mkcounter=<decimal>
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyFile {
    pub main_key: MainKey,
    pub mk_seed: u32,
    pub mk_counter: u64,
}

fn field<'a>(line: Option<(usize, &'a str)>, name: &str) -> Result<(usize, &'a str)> {
    let (ln, line) =
        line.ok_or_else(|| Error::parse("key file", 0, format!("missing `{name}` line")))?;
    let value = line
        .strip_prefix(name)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::parse("key file", ln, format!("expected `{name}=`")))?;
    Ok((ln, value))
}

fn parse_hex<const N: usize>(s: &str, ln: usize) -> Result<[u8; N]> {
    if s.len() != 2 * N || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::parse(
            "key file",
            ln,
            format!("expected {} hex digits", 2 * N),
        ));
    }
    let mut out = [0u8; N];
    for (i, o) in out.iter_mut().enumerate() {
        *o = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).expect("validated hex");
    }
    Ok(out)
}

impl KeyFile {
    pub fn state(&self) -> Result<MessageKeyState> {
        MessageKeyState::resume(self.mk_seed, self.mk_counter)
    }
}

impl FromStr for KeyFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (ln, v) = field(lines.next(), "mainkey")?;
        let main_key = MainKey::new(parse_hex::<32>(v, ln)?)?;
        let (ln, v) = field(lines.next(), "mkseed")?;
        let mk_seed = u32::from_be_bytes(parse_hex::<4>(v, ln)?);
        if mk_seed == 0 {
            return Err(Error::parse(
                "key file",
                ln,
                "message-key seed must be nonzero",
            ));
        }
        let (ln, v) = field(lines.next(), "mkcounter")?;
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse("key file", ln, "counter must be decimal"));
        }
        let mk_counter: u64 = v
            .parse()
            .map_err(|_| Error::parse("key file", ln, "counter out of range"))?;
        if let Some((ln, extra)) = lines.next() {
            if !extra.trim().is_empty() || lines.next().is_some() {
                return Err(Error::parse("key file", ln, "unexpected trailing content"));
            }
        }
        Ok(KeyFile {
            main_key,
            mk_seed,
            mk_counter,
        })
    }
}

impl fmt::Display for KeyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mainkey=")?;
        for b in self.main_key.as_bytes() {
            write!(f, "{b:02x}")?;
        }
        writeln!(f)?;
        writeln!(f, "mkseed={:08x}", self.mk_seed)?;
        writeln!(f, "mkcounter={}", self.mk_counter)
    }
}
