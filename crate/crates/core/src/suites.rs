//! Named verification suites, as run by `qcms verify`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cache::IdealStore;
use crate::error::{Error, Result};
use crate::ideal::lemma17_check;
use crate::iso::{poincare_report, special_case_g1, special_case_g2, verify_isomorphism};
use crate::jacobian::{primitive_dim, primitive_dim_formula};
use crate::presentation::{classical_triple, floer_triple, quantum_triple};
use crate::quantum_n::{
    admissible_queries, genus2_anomaly_report, gw_via_formula, gw_via_ring, is_fully_paired, lemma14_check,
    lemma9_check, NRing,
};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Dims,
    Lemma9,
    Lemma14,
    Lemma17,
    Gw,
    Iso,
    G1,
    G2,
    Poincare,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Dims,
        Suite::Lemma9,
        Suite::Lemma14,
        Suite::Lemma17,
        Suite::Gw,
        Suite::Iso,
        Suite::G1,
        Suite::G2,
        Suite::Poincare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dims => "dims",
            Suite::Lemma9 => "lemma9",
            Suite::Lemma14 => "lemma14",
            Suite::Lemma17 => "lemma17",
            Suite::Gw => "gw",
            Suite::Iso => "iso",
            Suite::G1 => "g1",
            Suite::G2 => "g2",
            Suite::Poincare => "poincare",
            Suite::All => "all",
        }
    }

    /// Whether the suite makes sense at this genus.
    pub fn applies(self, genus: u32) -> bool {
        match self {
            Suite::Dims | Suite::Iso | Suite::Poincare | Suite::All => genus >= 1,
            Suite::Lemma9 | Suite::Lemma17 | Suite::Gw => genus >= 2,
            Suite::Lemma14 => genus >= 3,
            Suite::G1 => genus == 1,
            Suite::G2 => genus == 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

fn binom3(r: u32) -> usize {
    let r = r as usize;
    (r + 2) * (r + 1) * r / 6
}

/// Quotient dimensions of the three families for r = 1..=g and the
/// primitive dimensions at genus g.
pub fn dims_report(genus: u32, store: &IdealStore) -> Result<Report> {
    let mut jobs = Vec::new();
    for r in 1..=genus {
        jobs.push(("classical", classical_triple(r)));
        jobs.push(("floer", floer_triple(r)));
        jobs.push(("quantum", quantum_triple(r, genus)?));
    }
    let results: Vec<Result<(String, usize, usize)>> = jobs
        .par_iter()
        .map(|(name, t)| {
            let dim = store.ideal(t)?.quotient_dim(t.index)?;
            Ok((format!("{name} r={}", t.index), dim, binom3(t.index)))
        })
        .collect();
    let mut report = Report::new("dims", genus);
    for res in results {
        let (name, dim, want) = res?;
        report.check(name, dim == want, format!("{dim} (C(r+2,3) = {want})"));
    }
    for k in 0..=genus {
        let d = primitive_dim(genus, k)?;
        report.check(format!("primitive k={k}"), d == primitive_dim_formula(genus, k), format!("{d}"));
    }
    Ok(report)
}

/// Ring evaluator against formula evaluator on every admissible query with
/// r ∈ {0, 2, 4}. At genus 2 this is the evaluator comparison for b > 0.
pub fn gw_report(genus: u32) -> Result<Report> {
    if genus == 2 {
        return genus2_anomaly_report();
    }
    if genus < 2 {
        return Err(Error::Genus(genus, "the evaluator comparison needs g >= 2"));
    }
    let ring = NRing::new(genus)?;
    let queries = admissible_queries(genus, &[0, 2, 4]);
    let results: Vec<Result<(String, bool, String)>> = queries
        .par_iter()
        .map(|q| {
            let by_ring = gw_via_ring(&ring, q)?;
            let by_formula = gw_via_formula(ring.jacobian(), q)?;
            let paired = is_fully_paired(genus, &q.psi);
            let consistent = paired || num_traits::Zero::is_zero(&by_formula);
            Ok((
                q.to_string(),
                by_ring == by_formula && by_formula.is_real() && consistent,
                by_formula.to_coef_string().to_string(),
            ))
        })
        .collect();
    let mut report = Report::new("gw", genus);
    for res in results {
        let (name, pass, detail) = res?;
        report.check(name, pass, detail);
    }
    Ok(report)
}

/// Runs one suite, or every applicable suite for `Suite::All`.
pub fn run_suite(suite: Suite, genus: u32, store: &IdealStore) -> Result<Report> {
    if !suite.applies(genus) {
        return Err(Error::Genus(genus, "suite does not apply at this genus"));
    }
    match suite {
        Suite::Dims => dims_report(genus, store),
        Suite::Lemma9 => lemma9_check(genus),
        Suite::Lemma14 => lemma14_check(genus),
        Suite::Lemma17 => lemma17_check(genus, store),
        Suite::Gw => gw_report(genus),
        Suite::Iso => verify_isomorphism(genus, store),
        Suite::G1 => special_case_g1(store),
        Suite::G2 => special_case_g2(store),
        Suite::Poincare => poincare_report(genus),
        Suite::All => {
            let selected: Vec<Suite> = Suite::EACH.iter().copied().filter(|s| s.applies(genus)).collect();
            let reports: Vec<Result<Report>> =
                selected.par_iter().map(|&s| run_suite(s, genus, store)).collect();
            let mut all = Report::new("all", genus);
            for r in reports {
                all.absorb(r?);
            }
            Ok(all)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().copied().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn applicability() {
        assert!(!Suite::Lemma14.applies(2));
        assert!(Suite::G2.applies(2));
        assert!(!Suite::G1.applies(3));
        assert!(run_suite(Suite::Lemma9, 1, &IdealStore::default()).is_err());
    }

    #[test]
    fn dims_genus_three() {
        let r = dims_report(3, &IdealStore::default()).unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
