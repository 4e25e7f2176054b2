//! Named, reproducible replays of explicit lattice computations, each
//! producing a report of expected versus recomputed values.

mod catalog;
mod walls;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IntLattice, Signature};
use crate::matrix::IntMatrix;

pub use walls::{solve_wall_equation, WallSolutions};

/// One expected/actual comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// True iff every check passes.
    pub verdict: bool,
}

impl ScenarioReport {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Self {
        let verdict = checks.iter().all(|c| c.pass);
        ScenarioReport { name: name.into(), checks, verdict }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.name, if self.verdict { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {}: expected {}, got {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.description,
                c.expected,
                c.actual
            )?;
        }
        Ok(())
    }
}

/// Accumulates checks while a scenario runs.
#[derive(Default)]
pub(crate) struct Checks(Vec<Check>);

impl Checks {
    /// Passes when both sides print identically.
    pub(crate) fn eq(&mut self, description: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.0.push(Check { description: description.into(), expected, actual, pass });
    }

    /// Records a check whose pass condition is decided by the caller.
    pub(crate) fn holds(
        &mut self,
        description: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        pass: bool,
    ) {
        self.0.push(Check { description: description.into(), expected: expected.to_string(), actual: actual.to_string(), pass });
    }
}

/// Rank-2 lattices `(10, a; a, 0)` that no GM K3 surface of Picard rank 2
/// can contain, in a basis whose first vector is the degree-10 polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenLatticeCatalog {
    entries: Vec<IntMatrix>,
}

impl ForbiddenLatticeCatalog {
    pub fn gm_k3() -> Self {
        ForbiddenLatticeCatalog {
            entries: vec![IntMatrix::from_i64(&[&[10, 1], &[1, 0]]), IntMatrix::from_i64(&[&[10, 3], &[3, 0]])],
        }
    }

    pub fn entries(&self) -> &[IntMatrix] {
        &self.entries
    }

    pub fn contains(&self, gram: &IntMatrix) -> bool {
        self.entries.contains(gram)
    }
}

/// Transfers a nondegenerate lattice `K'` in the Mukai lattice of a GM
/// Kuznetsov component to the corresponding `K ⊂ H⁴`: if `K'` has signature
/// `(p, q)` then `K` has signature `(q + 2, p − 2)`, and
/// `disc K = (−1)^{rk K} disc K'`. Returns `None` when no such `K` exists.
pub fn middle_cohomology_correspondence(k_prime: &IntLattice) -> Option<(Signature, BigInt)> {
    let sig = k_prime.signature();
    if sig.null != 0 || sig.positive < 2 {
        return None;
    }
    let k_sig = Signature::new(sig.negative + 2, sig.positive - 2, 0);
    let disc = k_prime.discriminant();
    let disc = if k_sig.rank() % 2 == 1 { -disc } else { disc };
    Some((k_sig, disc))
}

/// Discriminants `d` whose Noether–Lefschetz divisors `𝒟_d` miss the image
/// of the GM period map.
pub const EXCLUDED_PERIOD_DISCRIMINANTS: [i64; 3] = [2, 4, 8];

type ScenarioFn = fn(&mut Checks) -> Result<()>;

const CATALOG: [(&str, ScenarioFn); 12] = [
    ("S1_quartic_residual", catalog::quartic_residual),
    ("S2_gm_residual", catalog::gm_residual),
    ("S3_conjugacy", catalog::conjugacy),
    ("S4_ordinary_exclusion", catalog::ordinary_exclusion),
    ("S5_special_r_cases", catalog::special_r_cases),
    ("S6_wall_spherical", catalog::wall_spherical),
    ("S7_wall_semirigid", catalog::wall_semirigid),
    ("S8_mori_nef", catalog::mori_nef),
    ("S9_bundle_numerics", catalog::bundle_numerics),
    ("S10_obstruction_groups", catalog::obstruction_groups),
    ("S11_destabilizer_classes", catalog::destabilizer_classes),
    ("S12_pseudoheight_fano", catalog::pseudoheight_fano),
];

pub fn list_scenarios() -> Vec<&'static str> {
    CATALOG.iter().map(|(name, _)| *name).collect()
}

/// Runs one scenario. An internal error becomes a failing check rather than
/// aborting the report.
pub fn run_scenario(name: &str) -> Result<ScenarioReport> {
    let (name, f) = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))?;
    Ok(execute(name, *f))
}

fn execute(name: &str, f: ScenarioFn) -> ScenarioReport {
    let mut checks = Checks::default();
    if let Err(e) = f(&mut checks) {
        checks.holds("computation completed", "no error", e, false);
    }
    ScenarioReport::new(name, checks.0)
}

/// Runs every scenario on its own thread; reports come back in catalog order.
pub fn run_all() -> Vec<ScenarioReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            CATALOG.iter().map(|(name, f)| scope.spawn(move || execute(name, *f))).collect();
        handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        assert_eq!(run_scenario("nonexistent"), Err(Error::UnknownScenario("nonexistent".into())));
    }

    #[test]
    fn catalog_order_is_preserved() {
        let names: Vec<String> = run_all().into_iter().map(|r| r.name).collect();
        assert_eq!(names, list_scenarios());
    }

    #[test]
    fn every_scenario_passes() {
        for r in run_all() {
            assert!(r.verdict, "{r}");
        }
    }

    #[test]
    fn correspondence_flips_signature() {
        let l = IntLattice::from_i64(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 0]], &[]);
        let (sig, disc) = middle_cohomology_correspondence(&l).unwrap();
        assert_eq!(sig, Signature::new(3, 0, 0));
        assert_eq!(disc, BigInt::from(4));
        assert!(middle_cohomology_correspondence(&IntLattice::diagonal(&[-2, -2])).is_none());
        assert!(middle_cohomology_correspondence(&IntLattice::diagonal(&[2, 2, 0])).is_none());
    }

    #[test]
    fn forbidden_catalog_entries_have_degree_ten() {
        for g in ForbiddenLatticeCatalog::gm_k3().entries() {
            assert_eq!(g[(0, 0)], BigInt::from(10));
        }
    }

    #[test]
    fn failing_computation_becomes_failing_check() {
        fn broken(_: &mut Checks) -> Result<()> {
            Err(Error::NotInvolution)
        }
        let r = execute("broken", broken);
        assert!(!r.verdict);
        assert_eq!(r.checks.len(), 1);
    }
}
