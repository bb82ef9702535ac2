//! Regenerates every file under `fixtures/` except the factor table.
//!
//!     cargo run --release -p pals --example gen_fixtures

use std::fs;
use std::path::Path;

use pals::fixtures::{self, derive_filter, derive_poly, PolyTable, SBOX8_LABEL, SPN_LABEL};
use pals::galois::FactorTable;
use pals::iv::Sbox8Suite;
use pals::keyschedule::{MessageKeyState, SpnParams};
use pals::keystream::{g_table, h_table};

const HEADER: &str = "# generated by `cargo run --example gen_fixtures`; do not edit\n";

fn write(dir: &Path, name: &str, body: &str) {
    let path = dir.join(name);
    fs::write(&path, body).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    println!("wrote {}", path.display());
}

fn main() -> pals::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let factors = FactorTable::parse(fixtures::files::FACTORS)?;

    let mut polys = PolyTable::default();
    polys.insert(MessageKeyState::message_key_poly());
    for degree in fixtures::generated_degrees() {
        polys.insert(derive_poly(degree, &factors)?);
    }
    write(&dir, "polynomials.txt", &format!("{HEADER}{polys}"));
    write(&dir, "spn.txt", &SpnParams::derive(SPN_LABEL).to_fixture());
    write(
        &dir,
        "sbox8.txt",
        &Sbox8Suite::derive(SBOX8_LABEL).to_fixture(),
    );

    let f_tables: Vec<_> = (1..=8).map(derive_filter).collect::<pals::Result<_>>()?;
    for (i, t) in f_tables.iter().enumerate() {
        write(&dir, &format!("boolean/f{}.tt", i + 1), &t.to_fixture());
    }
    let (h, g) = (h_table(), g_table());
    write(&dir, "boolean/h.tt", &h.to_fixture());
    write(&dir, "boolean/g.tt", &g.to_fixture());
    write(
        &dir,
        "boolean/manifest.csv",
        &fixtures::manifest(&f_tables, &h, &g),
    );
    Ok(())
}
