//! Bundled constants and the recipes that produced them.
//!
//! Nothing here is hand-picked: every polynomial, S-box and filter function
//! is the output of a seeded derivation over a public label (see
//! [`crate::nums`]). The files under `fixtures/` are those outputs, written
//! once by `cargo run --example gen_fixtures` and re-validated whenever
//! they are loaded.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::boolefn::{certify, construct_resilient, SpectralReport, TruthTable};
use crate::galois::{find_dense_primitive, is_primitive, FactorTable, FeedbackPoly};
use crate::iv::{IvGenerator, Sbox8Suite};
use crate::keyschedule::{MessageKeyState, SpnParams};
use crate::keystream::{g_table, h_table, KeystreamTables, REGISTER_LENGTHS, TOY_REGISTER_LENGTHS};
use crate::{Error, Result};

pub const SPN_LABEL: &[u8] = b"PALS scram5 4-bit S-boxes";
pub const SBOX8_LABEL: &[u8] = b"PALS 8-bit S-boxes";
pub const IV_DEGREE: usize = 256;
/// Degree of the reduced message-key register.
pub const TOY_MESSAGE_KEY_DEGREE: usize = 8;
/// Degree of the reduced IV register.
pub const TOY_IV_DEGREE: usize = 16;

/// Resiliency, degree and nonlinearity floor required of F1..F8.
pub const FILTER_RESILIENCY: usize = 2;
pub const FILTER_DEGREE: usize = 6;
pub const FILTER_MIN_NONLINEARITY: u32 = 224;

pub fn poly_seed(degree: usize) -> Vec<u8> {
    format!("PALS feedback polynomial degree {degree}").into_bytes()
}

pub fn filter_seed(index: usize) -> Vec<u8> {
    format!("PALS filter function F{index}").into_bytes()
}

/// Every degree that ships a generated polynomial.
pub fn generated_degrees() -> Vec<usize> {
    let mut d: Vec<usize> = REGISTER_LENGTHS
        .iter()
        .chain(&TOY_REGISTER_LENGTHS)
        .copied()
        .chain([IV_DEGREE, TOY_MESSAGE_KEY_DEGREE, TOY_IV_DEGREE])
        .collect();
    d.sort_unstable();
    d
}

/// Dense primitive polynomial of the given degree, targeting `L/2` terms.
pub fn derive_poly(degree: usize, factors: &FactorTable) -> Result<FeedbackPoly> {
    find_dense_primitive(degree, degree / 2, factors.get(degree)?, &poly_seed(degree))
}

/// Filter function F_index (1-based).
pub fn derive_filter(index: usize) -> Result<TruthTable> {
    construct_resilient(9, FILTER_RESILIENCY, FILTER_DEGREE, &filter_seed(index))
}

/// Polynomials keyed by degree, in the `degree: e1,...,ek` line format.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyTable {
    polys: BTreeMap<usize, FeedbackPoly>,
}

impl PolyTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut polys = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p: FeedbackPoly = line.parse().map_err(|e| match e {
                Error::Parse { what, reason, .. } => Error::Parse {
                    what,
                    line: i + 1,
                    reason,
                },
                other => other,
            })?;
            if polys.insert(p.degree(), p).is_some() {
                return Err(Error::parse("polynomial", i + 1, "duplicate degree"));
            }
        }
        Ok(PolyTable { polys })
    }

    pub fn get(&self, degree: usize) -> Result<&FeedbackPoly> {
        self.polys
            .get(&degree)
            .ok_or_else(|| Error::InvalidArgument(format!("no polynomial of degree {degree}")))
    }

    pub fn insert(&mut self, p: FeedbackPoly) {
        self.polys.insert(p.degree(), p);
    }

    pub fn iter(&self) -> impl Iterator<Item = &FeedbackPoly> {
        self.polys.values()
    }
}

impl fmt::Display for PolyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.polys.values() {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// One line of the Boolean-function manifest.
pub fn manifest_line(name: &str, r: &SpectralReport) -> String {
    format!(
        "{name},{},{},{},{},{},{}",
        r.n_vars, r.balanced, r.ci_order, r.resiliency_order, r.algebraic_degree, r.nonlinearity
    )
}

pub const MANIFEST_HEADER: &str =
    "function,n_vars,balanced,ci_order,resiliency_order,algebraic_degree,nonlinearity";

pub fn manifest(f_tables: &[TruthTable], h: &TruthTable, g: &TruthTable) -> String {
    let mut s = String::from(MANIFEST_HEADER);
    s.push('\n');
    for (i, t) in f_tables.iter().enumerate() {
        s.push_str(&manifest_line(&format!("F{}", i + 1), &certify(t)));
        s.push('\n');
    }
    s.push_str(&manifest_line("h", &certify(h)));
    s.push('\n');
    s.push_str(&manifest_line("g", &certify(g)));
    s.push('\n');
    s
}

pub mod files {
    pub const POLYNOMIALS: &str = include_str!("../fixtures/polynomials.txt");
    pub const FACTORS: &str = include_str!("../fixtures/factors.txt");
    pub const SPN: &str = include_str!("../fixtures/spn.txt");
    pub const SBOX8: &str = include_str!("../fixtures/sbox8.txt");
    pub const F_TABLES: [&str; 8] = [
        include_str!("../fixtures/boolean/f1.tt"),
        include_str!("../fixtures/boolean/f2.tt"),
        include_str!("../fixtures/boolean/f3.tt"),
        include_str!("../fixtures/boolean/f4.tt"),
        include_str!("../fixtures/boolean/f5.tt"),
        include_str!("../fixtures/boolean/f6.tt"),
        include_str!("../fixtures/boolean/f7.tt"),
        include_str!("../fixtures/boolean/f8.tt"),
    ];
    pub const H_TABLE: &str = include_str!("../fixtures/boolean/h.tt");
    pub const G_TABLE: &str = include_str!("../fixtures/boolean/g.tt");
    pub const MANIFEST: &str = include_str!("../fixtures/boolean/manifest.csv");
}

/// Everything the cipher needs, validated.
#[derive(Debug)]
pub struct Fixtures {
    pub polys: PolyTable,
    pub factors: FactorTable,
    pub spn: SpnParams,
    pub sboxes8: Sbox8Suite,
    pub f_tables: [TruthTable; 8],
    pub h: TruthTable,
    pub g: TruthTable,
    tables: Arc<KeystreamTables>,
}

fn fixture_err(name: &str, reason: impl Into<String>) -> Error {
    Error::Fixture {
        name: name.to_string(),
        reason: reason.into(),
    }
}

impl Fixtures {
    /// Parses and validates fixture texts: every polynomial must be
    /// certified primitive, every filter function must re-certify, and `h`
    /// and `g` must match their algebraic definitions.
    #[allow(clippy::too_many_arguments)]
    pub fn from_texts(
        polys: &str,
        factors: &str,
        spn: &str,
        sbox8: &str,
        f_tables: [&str; 8],
        h: &str,
        g: &str,
    ) -> Result<Self> {
        let polys = PolyTable::parse(polys)?;
        let factors = FactorTable::parse(factors)?;
        for degree in generated_degrees().into_iter().chain([32]) {
            let p = polys.get(degree)?;
            if !is_primitive(p, factors.get(degree)?)? {
                return Err(fixture_err(
                    "polynomials",
                    format!("degree {degree} is not primitive"),
                ));
            }
        }
        if *polys.get(32)? != MessageKeyState::message_key_poly() {
            return Err(fixture_err(
                "polynomials",
                "degree 32 differs from the message-key polynomial",
            ));
        }
        let spn = SpnParams::parse_fixture(spn)?;
        let sboxes8 = Sbox8Suite::parse_fixture(sbox8)?;
        let f_tables: [TruthTable; 8] = f_tables
            .iter()
            .map(|t| TruthTable::parse_fixture(t))
            .collect::<Result<Vec<_>>>()?
            .try_into()
            .expect("eight tables");
        for (i, t) in f_tables.iter().enumerate() {
            let r = certify(t);
            if t.n_vars() != 9
                || !r.balanced
                || r.ci_order < FILTER_RESILIENCY
                || r.algebraic_degree != FILTER_DEGREE
                || r.nonlinearity < FILTER_MIN_NONLINEARITY
            {
                return Err(fixture_err(
                    &format!("F{}", i + 1),
                    format!("fails certification: {r:?}"),
                ));
            }
        }
        let h = TruthTable::parse_fixture(h)?;
        if h != h_table() {
            return Err(fixture_err(
                "h",
                "table differs from the algebraic normal form",
            ));
        }
        let g = TruthTable::parse_fixture(g)?;
        if g != g_table() {
            return Err(fixture_err("g", "table is not the 9-input XOR"));
        }
        let tables = Arc::new(KeystreamTables::new(
            sboxes8.clone(),
            f_tables.clone(),
            h.clone(),
        )?);
        Ok(Fixtures {
            polys,
            factors,
            spn,
            sboxes8,
            f_tables,
            h,
            g,
            tables,
        })
    }

    pub fn load_bundled() -> Result<Self> {
        use files::*;
        Fixtures::from_texts(POLYNOMIALS, FACTORS, SPN, SBOX8, F_TABLES, H_TABLE, G_TABLE)
    }

    pub fn production_polys(&self) -> Vec<FeedbackPoly> {
        REGISTER_LENGTHS
            .iter()
            .map(|&l| self.polys.get(l).expect("validated").clone())
            .collect()
    }

    pub fn toy_polys(&self) -> Vec<FeedbackPoly> {
        TOY_REGISTER_LENGTHS
            .iter()
            .map(|&l| self.polys.get(l).expect("validated").clone())
            .collect()
    }

    pub fn iv_poly(&self) -> &FeedbackPoly {
        self.polys.get(IV_DEGREE).expect("validated")
    }

    pub fn iv_generator(&self) -> IvGenerator {
        IvGenerator::new(self.iv_poly().clone(), self.sboxes8.clone()).expect("degree 256")
    }

    pub fn keystream_tables(&self) -> Arc<KeystreamTables> {
        Arc::clone(&self.tables)
    }
}

/// The bundled fixtures, loaded and validated once per process.
pub fn bundled() -> &'static Fixtures {
    static FIXTURES: OnceLock<Fixtures> = OnceLock::new();
    FIXTURES.get_or_init(|| Fixtures::load_bundled().expect("bundled fixtures are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_load() {
        let f = Fixtures::load_bundled().unwrap();
        assert_eq!(f.production_polys().len(), 8);
        assert_eq!(f.iv_poly().degree(), 256);
    }

    #[test]
    fn polynomials_are_dense() {
        let f = bundled();
        for l in REGISTER_LENGTHS.iter().chain([&IV_DEGREE]) {
            let w = f.polys.get(*l).unwrap().weight();
            let target = l / 2;
            assert!(w.abs_diff(target) * 10 <= target, "degree {l} weight {w}");
        }
    }

    #[test]
    fn shipped_constants_match_their_derivation() {
        let f = bundled();
        assert_eq!(f.spn, SpnParams::derive(SPN_LABEL));
        assert_eq!(f.sboxes8, Sbox8Suite::derive(SBOX8_LABEL));
        for i in 0..8 {
            assert_eq!(f.f_tables[i], derive_filter(i + 1).unwrap(), "F{}", i + 1);
        }
        for l in generated_degrees() {
            assert_eq!(
                f.polys.get(l).unwrap(),
                &derive_poly(l, &f.factors).unwrap(),
                "degree {l}"
            );
        }
    }

    #[test]
    fn manifest_matches_tables() {
        let f = bundled();
        assert_eq!(files::MANIFEST, manifest(&f.f_tables, &f.h, &f.g));
    }

    #[test]
    fn tampered_fixtures_rejected() {
        use files::*;
        let bad_poly = POLYNOMIALS.replace("4,3,2,0", "4,3,0");
        let mut f1 = TruthTable::parse_fixture(F_TABLES[0]).unwrap();
        f1.set(0, !f1.get(0));
        let bad_f1 = f1.to_fixture();
        let mut tables = F_TABLES;
        tables[0] = &bad_f1;
        assert!(
            Fixtures::from_texts(POLYNOMIALS, FACTORS, SPN, SBOX8, tables, H_TABLE, G_TABLE)
                .is_err()
        );
        let g_bad = TruthTable::zero(9).unwrap().to_fixture();
        assert!(
            Fixtures::from_texts(POLYNOMIALS, FACTORS, SPN, SBOX8, F_TABLES, H_TABLE, &g_bad)
                .is_err()
        );
        if bad_poly != POLYNOMIALS {
            assert!(Fixtures::from_texts(
                &bad_poly, FACTORS, SPN, SBOX8, F_TABLES, H_TABLE, G_TABLE
            )
            .is_err());
        }
    }
}
