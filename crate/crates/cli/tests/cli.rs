use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pals::keyschedule::KeyFile;
use pals_cli::commands::{self, EXIT_FORMAT, EXIT_REKEY, EXIT_USAGE};
use pals_cli::format::CipherFile;

fn pals(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pals"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Env {
    dir: tempfile::TempDir,
    key: PathBuf,
}

fn setup() -> Env {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.key");
    let out = pals(&["keygen", "--key", s(&key)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    Env { dir, key }
}

impl Env {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn key_file(&self) -> KeyFile {
        fs::read_to_string(&self.key).unwrap().parse().unwrap()
    }
}

#[test]
fn keygen_writes_distinct_parseable_keys() {
    let (a, b) = (setup(), setup());
    let (ka, kb) = (a.key_file(), b.key_file());
    assert_ne!(ka.main_key, kb.main_key);
    assert!(ka.main_key.as_bytes().iter().any(|&x| x != 0));
    assert_eq!(ka.mk_counter, 0);
    assert_eq!(ka.to_string(), fs::read_to_string(&a.key).unwrap());
}

#[test]
fn keygen_refuses_to_overwrite() {
    let e = setup();
    let before = fs::read_to_string(&e.key).unwrap();
    assert!(!pals(&["keygen", "--key", s(&e.key)]).status.success());
    assert_eq!(fs::read_to_string(&e.key).unwrap(), before);
    assert!(pals(&["keygen", "--force", "--key", s(&e.key)])
        .status
        .success());
    assert_ne!(fs::read_to_string(&e.key).unwrap(), before);
}

#[test]
fn encrypt_decrypt_round_trip() {
    let e = setup();
    let plain: Vec<u8> = (0..100_000u32).map(|i| (i * 7 + i / 13) as u8).collect();
    let (p, c, d) = (e.path("p"), e.path("c"), e.path("d"));
    fs::write(&p, &plain).unwrap();
    assert!(
        pals(&["encrypt", "--key", s(&e.key), "--in", s(&p), "--out", s(&c)])
            .status
            .success()
    );
    let cipher = fs::read(&c).unwrap();
    assert_eq!(&cipher[..5], b"PALS\x01");
    assert_eq!(cipher.len(), plain.len() + 9);
    assert!(
        pals(&["decrypt", "--key", s(&e.key), "--in", s(&c), "--out", s(&d)])
            .status
            .success()
    );
    assert_eq!(fs::read(&d).unwrap(), plain);
    assert_eq!(e.key_file().mk_counter, 1);
}

#[test]
fn ciphertext_xor_plaintext_is_the_keystream() {
    let e = setup();
    let plain = b"attack at dawn, bring the whole keystream".to_vec();
    let (p, c) = (e.path("p"), e.path("c"));
    fs::write(&p, &plain).unwrap();
    let next = pals(&["keystream", "--key", s(&e.key), "--bits", "8"]);
    assert!(
        pals(&["encrypt", "--key", s(&e.key), "--in", s(&p), "--out", s(&c)])
            .status
            .success()
    );
    let cf = CipherFile::parse(&fs::read(&c).unwrap()).unwrap();
    // the default keystream message key is the one the encryption consumed
    assert!(String::from_utf8_lossy(&next.stderr).contains(&format!("{:08x}", cf.message_key.0)));
    let mk = format!("{:08x}", cf.message_key.0);
    let bits = (plain.len() * 8).to_string();
    let out = pals(&[
        "keystream",
        "--key",
        s(&e.key),
        "--bits",
        &bits,
        "--message-key",
        &mk,
    ]);
    assert!(out.status.success());
    let ks = hex::decode(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    let xored: Vec<u8> = plain.iter().zip(&cf.payload).map(|(a, b)| a ^ b).collect();
    assert_eq!(xored, ks);
}

#[test]
fn same_plaintext_twice_differs() {
    let e = setup();
    let p = e.path("p");
    fs::write(&p, vec![0u8; 256]).unwrap();
    for name in ["c1", "c2"] {
        let c = e.path(name);
        assert!(
            pals(&["encrypt", "--key", s(&e.key), "--in", s(&p), "--out", s(&c)])
                .status
                .success()
        );
    }
    let (c1, c2) = (
        fs::read(e.path("c1")).unwrap(),
        fs::read(e.path("c2")).unwrap(),
    );
    assert_ne!(c1[5..9], c2[5..9]);
    assert_ne!(c1[9..], c2[9..]);
    assert_eq!(e.key_file().mk_counter, 2);
}

#[test]
fn corrupted_magic_is_a_format_error() {
    let e = setup();
    let (c, d) = (e.path("c"), e.path("d"));
    fs::write(&c, b"PALZ\x01\0\0\0\x01abc").unwrap();
    // the key path does not exist: the header is rejected first
    let missing = e.path("missing.key");
    let out = pals(&[
        "decrypt",
        "--key",
        s(&missing),
        "--in",
        s(&c),
        "--out",
        s(&d),
    ]);
    assert_eq!(out.status.code(), Some(EXIT_FORMAT));
    assert!(!d.exists());
    fs::write(&c, b"PALS\x01\0\0").unwrap();
    let out = pals(&["decrypt", "--key", s(&e.key), "--in", s(&c), "--out", s(&d)]);
    assert_eq!(out.status.code(), Some(EXIT_FORMAT));
}

#[test]
fn empty_payload_decrypts_to_empty() {
    let e = setup();
    let (p, c, d) = (e.path("p"), e.path("c"), e.path("d"));
    fs::write(&p, b"").unwrap();
    assert!(
        pals(&["encrypt", "--key", s(&e.key), "--in", s(&p), "--out", s(&c)])
            .status
            .success()
    );
    assert_eq!(fs::read(&c).unwrap().len(), 9);
    assert!(
        pals(&["decrypt", "--key", s(&e.key), "--in", s(&c), "--out", s(&d)])
            .status
            .success()
    );
    assert!(fs::read(&d).unwrap().is_empty());
}

#[test]
fn exhausted_counter_requires_rekey() {
    let e = setup();
    let mut k = e.key_file();
    k.mk_counter = (1u64 << 32) - 2;
    fs::write(&e.key, k.to_string()).unwrap();
    let p = e.path("p");
    fs::write(&p, b"x").unwrap();
    let out = pals(&[
        "encrypt",
        "--key",
        s(&e.key),
        "--in",
        s(&p),
        "--out",
        s(&e.path("c")),
    ]);
    assert_eq!(out.status.code(), Some(EXIT_REKEY));
    assert_eq!(e.key_file().mk_counter, (1u64 << 32) - 2);
}

#[test]
fn last_message_key_can_still_be_used() {
    let e = setup();
    let mut k = e.key_file();
    k.mk_counter = (1u64 << 32) - 3;
    fs::write(&e.key, k.to_string()).unwrap();
    let p = e.path("p");
    fs::write(&p, b"x").unwrap();
    let out = pals(&[
        "encrypt",
        "--key",
        s(&e.key),
        "--in",
        s(&p),
        "--out",
        s(&e.path("c")),
    ]);
    assert!(out.status.success());
}

#[test]
fn malformed_key_file_is_a_format_error() {
    let e = setup();
    fs::write(&e.key, "mainkey=zz\n").unwrap();
    let out = pals(&["keystream", "--key", s(&e.key), "--bits", "8"]);
    assert_eq!(out.status.code(), Some(EXIT_FORMAT));
}

#[test]
fn usage_errors() {
    let e = setup();
    let out = pals(&["audit", "--key", s(&e.key), "--bits", "100"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert_eq!(pals(&["frobnicate"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(
        pals(&["keystream", "--bits", "8"]).status.code(),
        Some(EXIT_USAGE)
    );
    let help = pals(&["--help"]);
    assert!(help.status.success());
    assert!(String::from_utf8_lossy(&help.stdout).contains("Exit status"));
}

#[test]
fn audit_reports_every_section() {
    let e = setup();
    let out = pals(&["audit", "--key", s(&e.key), "--bits", "100000", "--csv"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("metric,value,threshold,verdict\n"));
    for metric in [
        "monobit_p",
        "runs_p",
        "poker_p",
        "linear_complexity_4096",
        "scram5_avalanche_min",
        "keyspace_log2_sum",
        "tmto_log2_time",
        "tmto_log2_memory",
        "cube_log2_time",
    ] {
        assert!(
            csv.lines().any(|l| l.starts_with(&format!("{metric},"))),
            "{metric}"
        );
    }
    let line = |m: &str| csv.lines().find(|l| l.starts_with(m)).unwrap().to_string();
    assert!(line("tmto_log2_time,").ends_with(",pass"));
    assert!(line("cube_log2_time,").ends_with(",pass"));
}

#[test]
fn library_round_trip_matches_binary_format() {
    let e = setup();
    let c = commands::encrypt_bytes(&e.key, b"hello").unwrap();
    assert_eq!(
        commands::decrypt_bytes(&e.key, &c.to_bytes()).unwrap(),
        b"hello"
    );
}
