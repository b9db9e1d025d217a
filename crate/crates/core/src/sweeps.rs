//! Exhaustive and sampled sweeps over G-paths, run through [`par`](crate::par).

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::action::GroupAction;
use crate::error::Result;
use crate::gpath::{
    certify_y_alpha, chi, chi_inverse, chi_round_trip_witness, enumerate_gpaths, gpath_equivalent_direct, iso_check,
    random_gpath, GPath,
};
use crate::par::{self, Exec};
use crate::space::{enumerate_paths, DEFAULT_PATH_LIMIT};

/// Both isomorphism tests on every ordered pair of G-paths with at most two pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleSweep {
    pub grid: usize,
    pub gpaths: usize,
    pub pairs: u64,
    pub equivalent_pairs: u64,
    pub disagreements: u64,
    pub invalid_witnesses: u64,
    pub first_problem: Option<String>,
}

impl OracleSweep {
    pub fn holds(&self) -> bool {
        self.disagreements == 0 && self.invalid_witnesses == 0
    }

    fn merge(mut self, o: OracleSweep) -> Self {
        self.pairs += o.pairs;
        self.equivalent_pairs += o.equivalent_pairs;
        self.disagreements += o.disagreements;
        self.invalid_witnesses += o.invalid_witnesses;
        self.first_problem = self.first_problem.or(o.first_problem);
        self
    }
}

fn compare(action: &GroupAction, a: &GPath, b: &GPath, out: &mut OracleSweep) -> Result<()> {
    let fast = iso_check(action, a, b)?;
    let direct = gpath_equivalent_direct(action, a, b)?;
    out.pairs += 1;
    let note = |out: &mut OracleSweep, m: String| {
        if out.first_problem.is_none() {
            out.first_problem = Some(m);
        }
    };
    match (fast, &direct) {
        (Some(g), Some(w)) => {
            out.equivalent_pairs += 1;
            let (ca, cb) = (chi(action, a), chi(action, b));
            let moved = ca.map(|v| action.act(g, v));
            if moved != cb || w.validate(action).is_err() {
                out.invalid_witnesses += 1;
                note(out, format!("bad witness for {} ~ {}", a.label(action), b.label(action)));
            }
        }
        (None, None) => {}
        _ => {
            out.disagreements += 1;
            note(out, format!("oracles disagree on {} vs {}", a.label(action), b.label(action)));
        }
    }
    Ok(())
}

pub fn oracle_agreement(action: &GroupAction, t: usize, exec: Exec) -> Result<OracleSweep> {
    let all = enumerate_gpaths(action, t);
    let rows = par::map(exec, &all, |a| -> Result<OracleSweep> {
        let mut out = OracleSweep::default();
        for b in &all {
            compare(action, a, b, &mut out)?;
        }
        Ok(out)
    });
    let start = OracleSweep { grid: t, gpaths: all.len(), ..OracleSweep::default() };
    rows.into_iter().try_fold(start, |acc, r| Ok(acc.merge(r?)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundTripSweep {
    pub grid: usize,
    pub paths: usize,
    pub exact: usize,
    pub gpaths: usize,
    pub witnessed: usize,
}

impl RoundTripSweep {
    pub fn holds(&self) -> bool {
        self.exact == self.paths && self.witnessed == self.gpaths
    }
}

/// `chi ∘ chi_inverse = id` on every path, and the explicit witness for
/// `chi_inverse ∘ chi ≅ id` on every G-path with at most two pieces.
pub fn chi_round_trips(action: &GroupAction, t: usize, exec: Exec) -> Result<RoundTripSweep> {
    let paths = enumerate_paths(action.graph(), t, DEFAULT_PATH_LIMIT)?;
    let exact = par::map(exec, &paths, |c| chi(action, &chi_inverse(c)) == *c).into_iter().filter(|&b| b).count();
    let gpaths = enumerate_gpaths(action, t);
    let witnessed =
        par::map(exec, &gpaths, |p| chi_round_trip_witness(action, p).is_ok()).into_iter().filter(|&b| b).count();
    Ok(RoundTripSweep { grid: t, paths: paths.len(), exact, gpaths: gpaths.len(), witnessed })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct YAlphaSweep {
    pub grid: usize,
    pub samples: usize,
    pub certified: usize,
    pub first_failure: Option<String>,
}

impl YAlphaSweep {
    pub fn holds(&self) -> bool {
        self.certified == self.samples
    }
}

/// Certifies `Y_α` on `samples` random G-paths drawn from a fixed seed.
pub fn y_alpha_sweep(
    action: &GroupAction,
    t: usize,
    samples: usize,
    max_pieces: usize,
    seed: u64,
    exec: Exec,
) -> Result<YAlphaSweep> {
    let mut rng = StdRng::seed_from_u64(seed);
    let drawn: Vec<GPath> = (0..samples).map(|_| random_gpath(action, t, max_pieces, &mut rng)).collect();
    let results = par::map(exec, &drawn, |p| -> Result<bool> {
        let (_, report) = certify_y_alpha(action, p)?;
        Ok(report.holds() && report.size == action.group().order() * (t + 1))
    });
    let mut out = YAlphaSweep { grid: t, samples, ..YAlphaSweep::default() };
    for (p, r) in drawn.iter().zip(results) {
        if r? {
            out.certified += 1;
        } else if out.first_failure.is_none() {
            out.first_failure = Some(p.label(action));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_sweeps_agree_across_modes() {
        let a = corpus::reflection_action();
        let s = oracle_agreement(&a, 1, Exec::Sequential).unwrap();
        let p = oracle_agreement(&a, 1, Exec::Parallel).unwrap();
        assert_eq!(s, p);
        assert!(s.holds() && s.equivalent_pairs > 0);
        assert!(chi_round_trips(&a, 2, Exec::Parallel).unwrap().holds());
        let y = y_alpha_sweep(&a, 2, 10, 3, 7, Exec::Parallel).unwrap();
        assert!(y.holds(), "{y:?}");
    }
}
