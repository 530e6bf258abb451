//! Seeded numerical verification of catalog entries.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{IdentityEntry, IdentityParams};
use crate::error::{Error, Result};
use crate::param::format_complex;
use crate::series::EvalControl;

/// Redraws allowed before a trial gives up on finding applicable parameters.
const MAX_REDRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Execution::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Execution::Sequential;
    }
}

/// One `(trial, z0)` comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRecord {
    pub trial: usize,
    pub z0: f64,
    pub params: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Infinite when either side failed to evaluate.
    pub rel_err: f64,
    pub error: Option<String>,
}

impl VerifyRecord {
    pub fn passed(&self, tol: f64) -> bool {
        self.rel_err <= tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub id: String,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_rel_err: f64,
    pub records: Vec<VerifyRecord>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &VerifyRecord> {
        self.records.iter().filter(move |r| !r.passed(self.tolerance))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// One line: id, verdict, comparisons and worst error.
    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let fails = self.failures().count();
        let mut s = format!(
            "{:<20} {verdict}  trials={} checks={} failures={fails} max_rel_err={:.3e}",
            self.id,
            self.trials,
            self.records.len(),
            self.max_rel_err
        );
        if let Some(f) = self.failures().next() {
            let _ = write!(s, "\n    first failure: trial={} z0={} {} ", f.trial, f.z0, f.params);
            match &f.error {
                Some(e) => {
                    let _ = write!(s, "error: {e}");
                }
                None => {
                    let _ = write!(s, "lhs={} rhs={}", format_complex(f.lhs), format_complex(f.rhs));
                }
            }
        }
        s
    }

    pub const CSV_HEADER: &'static str = "id,trial,z0,params,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,pass";

    /// Detail rows without the header, LF-terminated.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{:e},{:e},{:e},{:e},{:e},{}",
                self.id,
                r.trial,
                r.z0,
                r.params,
                r.lhs.re,
                r.lhs.im,
                r.rhs.re,
                r.rhs.im,
                r.rel_err,
                r.passed(self.tolerance)
            );
        }
        out
    }
}

/// `|l - r| / max(|l|, |r|)`, zero when both sides vanish.
pub fn relative_error(l: Complex64, r: Complex64) -> f64 {
    if !(l.is_finite() && r.is_finite()) {
        return f64::INFINITY;
    }
    let scale = l.norm().max(r.norm());
    if scale == 0.0 {
        return 0.0;
    }
    (l - r).norm() / scale
}

fn stream_key(id: &str) -> u64 {
    // FNV-1a, so each entry draws its own parameters under a shared seed.
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// The parameters used by `trial` under `seed`.
pub fn trial_params(entry: &IdentityEntry, seed: u64, trial: usize) -> Option<IdentityParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream_key(entry.id));
    rng.set_stream(trial as u64);
    (0..MAX_REDRAWS).map(|_| entry.sample(&mut rng)).find(|p| entry.applicable(p))
}

fn run_trial(entry: &IdentityEntry, seed: u64, trial: usize, ctrl: &EvalControl) -> Vec<VerifyRecord> {
    let Some(p) = trial_params(entry, seed, trial) else {
        return vec![VerifyRecord {
            trial,
            z0: f64::NAN,
            params: String::new(),
            lhs: Complex64::new(f64::NAN, 0.0),
            rhs: Complex64::new(f64::NAN, 0.0),
            rel_err: f64::INFINITY,
            error: Some("no applicable parameters drawn".into()),
        }];
    };
    let params = entry.describe(&p);
    entry
        .z_points
        .iter()
        .map(|&z0| match entry.sides(&p, z0, ctrl) {
            Ok((lhs, rhs)) => VerifyRecord {
                trial,
                z0,
                params: params.clone(),
                lhs,
                rhs,
                rel_err: relative_error(lhs, rhs),
                error: None,
            },
            Err(e) => VerifyRecord {
                trial,
                z0,
                params: params.clone(),
                lhs: Complex64::new(f64::NAN, 0.0),
                rhs: Complex64::new(f64::NAN, 0.0),
                rel_err: f64::INFINITY,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// Checks `d^n lhs = rhs` on `trials` seeded draws at every point of the entry.
///
/// Series are summed to full precision: near `z = 1` the product rule cancels
/// several digits, so truncating at the default tolerance would show up in
/// the comparison.
pub fn verify_entry(entry: &IdentityEntry, trials: usize, seed: u64, tol: f64) -> Result<VerifyReport> {
    verify_entry_with(entry, trials, seed, tol, &EvalControl::full_precision(), Execution::default())
}

pub fn verify_entry_with(
    entry: &IdentityEntry,
    trials: usize,
    seed: u64,
    tol: f64,
    ctrl: &EvalControl,
    exec: Execution,
) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    ctrl.check()?;
    let per_trial: Vec<Vec<VerifyRecord>> = match exec {
        Execution::Sequential => (0..trials).map(|t| run_trial(entry, seed, t, ctrl)).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..trials).into_par_iter().map(|t| run_trial(entry, seed, t, ctrl)).collect()
        }
    };
    let records: Vec<VerifyRecord> = per_trial.into_iter().flatten().collect();
    let max_rel_err = records.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok(VerifyReport { id: entry.id.to_string(), trials, seed, tolerance: tol, max_rel_err, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn zero_trials_is_rejected() {
        let e = lookup("Th1-2").unwrap();
        assert!(matches!(verify_entry(e, 0, 0, 1e-8), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn same_seed_gives_the_same_report() {
        let e = lookup("Co2-4").unwrap();
        let a = verify_entry_with(e, 6, 3, 1e-8, &EvalControl::full_precision(), Execution::Sequential).unwrap();
        let b = verify_entry(e, 6, 3, 1e-8).unwrap();
        assert_eq!(a.csv_rows(), b.csv_rows());
        assert!(a.passed(), "{}", a.summary());
    }

    #[test]
    fn failures_track_the_tolerance() {
        let e = lookup("Th1-2").unwrap();
        let r = verify_entry(e, 4, 1, 1e-300).unwrap();
        assert_eq!(r.passed(), r.max_rel_err <= 1e-300);
    }

    #[test]
    fn relative_error_handles_zero_and_nan() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(relative_error(z, z), 0.0);
        assert_eq!(relative_error(Complex64::new(f64::NAN, 0.0), z), f64::INFINITY);
    }
}
