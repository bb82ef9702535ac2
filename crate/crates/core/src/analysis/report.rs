use std::fmt;

use super::{
    avalanche_matrix, berlekamp_massey, cube_cost, keyspace_log2, randomness_suite, tmto_cost,
    KEYSPACE_CLAIM_LOG2,
};
use crate::bits::{bits_to_u32, u32_to_bits};
use crate::galois::{FactorSet, FactorTable};
use crate::keyschedule::SpnParams;
use crate::keystream::REGISTER_LENGTHS;
use crate::Result;

/// Prefix length for the linear-complexity check.
pub const LC_PREFIX: usize = 4096;
pub const AVALANCHE_TRIALS: usize = 2000;
pub const AVALANCHE_BAND: (f64, f64) = (0.45, 0.55);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        })
    }
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub metrics: Vec<Metric>,
}

impl Report {
    pub fn push(
        &mut self,
        name: impl Into<String>,
        value: f64,
        threshold: impl Into<String>,
        verdict: Verdict,
    ) {
        self.metrics.push(Metric {
            name: name.into(),
            value,
            threshold: threshold.into(),
            verdict,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Metric> {
        self.metrics.iter().filter(|m| m.verdict == Verdict::Fail)
    }

    /// `metric,value,threshold,verdict` with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("metric,value,threshold,verdict\n");
        for m in &self.metrics {
            s.push_str(&format!(
                "{},{},{},{}\n",
                m.name, m.value, m.threshold, m.verdict
            ));
        }
        s
    }

    /// Full keystream audit: randomness tests on `keystream`, linear
    /// complexity of its first 4096 bits, Scram-5 avalanche and the cost
    /// formulas for the production register set.
    pub fn audit(keystream: &[bool], spn: &SpnParams, factors: &FactorTable) -> Result<Report> {
        let mut r = Report::default();
        let rs = randomness_suite(keystream)?;
        r.push("bits", rs.n_bits as f64, "", Verdict::Info);
        for (name, t) in [
            ("monobit", rs.monobit),
            ("runs", rs.runs),
            ("poker", rs.poker),
        ] {
            r.push(
                format!("{name}_p"),
                t.p_value,
                ">= 0.01",
                Verdict::from_bool(t.passed()),
            );
        }

        let prefix = &keystream[..LC_PREFIX.min(keystream.len())];
        let lc = berlekamp_massey(prefix).final_lc;
        r.push(
            format!("linear_complexity_{}", prefix.len()),
            lc as f64,
            format!("> {}", prefix.len() / 4),
            Verdict::from_bool(lc > prefix.len() / 4),
        );

        let m = avalanche_matrix(
            |x| u32_to_bits(spn.scram5(bits_to_u32(x))).to_vec(),
            32,
            32,
            AVALANCHE_TRIALS,
            b"scram5 avalanche",
        )?;
        let (lo, hi) = AVALANCHE_BAND;
        let band = format!("[{lo}, {hi}]");
        r.push(
            "scram5_avalanche_min",
            m.min(),
            band.clone(),
            Verdict::from_bool(m.min() >= lo),
        );
        r.push(
            "scram5_avalanche_max",
            m.max(),
            band,
            Verdict::from_bool(m.max() <= hi),
        );
        r.push("scram5_avalanche_mean", m.mean(), "", Verdict::Info);

        let sets: Vec<&FactorSet> = REGISTER_LENGTHS
            .iter()
            .map(|&l| factors.get(l))
            .collect::<Result<_>>()?;
        let ks = keyspace_log2(&REGISTER_LENGTHS, &sets)?;
        r.push(
            "keyspace_log2_sum",
            ks.log2_sum,
            format!("> {KEYSPACE_CLAIM_LOG2}"),
            Verdict::from_bool(ks.meets_claim()),
        );
        r.push("keyspace_log2_product", ks.log2_product, "", Verdict::Info);
        let t = tmto_cost(REGISTER_LENGTHS.iter().sum())?;
        r.push(
            "tmto_log2_time",
            t.log2_time,
            "[818.5, 821]",
            Verdict::from_bool((818.5..=821.0).contains(&t.log2_time)),
        );
        r.push(
            "tmto_log2_memory",
            t.log2_memory,
            "[809, 812]",
            Verdict::from_bool((809.0..=812.0).contains(&t.log2_memory)),
        );
        let c = cube_cost(163, 256)?;
        r.push(
            "cube_log2_time",
            c.log2_time,
            ">= 162",
            Verdict::from_bool(c.log2_time >= 162.0),
        );
        Ok(r)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.metrics.iter().map(|m| m.name.len()).max().unwrap_or(0);
        for m in &self.metrics {
            write!(f, "{:<width$}  {:>14.6}", m.name, m.value)?;
            if !m.threshold.is_empty() {
                write!(f, "  {}", m.threshold)?;
            }
            writeln!(f, "  {}", m.verdict)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut r = Report::default();
        r.push("a", 1.5, "> 1", Verdict::Pass);
        r.push("b", 0.0, "", Verdict::Info);
        assert_eq!(
            r.to_csv(),
            "metric,value,threshold,verdict\na,1.5,> 1,pass\nb,0,,info\n"
        );
        assert_eq!(r.failures().count(), 0);
        assert!(r.to_string().contains("a  "));
    }
}
