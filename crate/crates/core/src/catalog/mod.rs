//! Named identity entries with literal left/right-hand sides, seeded
//! parameter samplers and a numerical verifier.

mod entries;
pub mod transforms;
pub mod verify;

use std::fmt;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{eval_expr, Expr};
use crate::param::Parameter;
use crate::series::EvalControl;

pub use transforms::{derived_rhs, kummer1, kummer2, kummer3};
pub use verify::{verify_entry, verify_entry_with, Execution, VerifyRecord, VerifyReport};

/// Points in (0, 1) where entries are checked.
pub const ALL_POINTS: &[f64] = &[0.2, 1.0 / 3.0, 0.7];
/// Entries with a `z/(z-1)` argument stay inside the unit disk only for `z < 1/2`.
pub const PFAFF_POINTS: &[f64] = &[0.2, 1.0 / 3.0];

/// Parameter bundle shared by all entries. Each entry reads only the fields
/// named in its schema.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityParams {
    pub n: u32,
    pub r: Parameter,
    pub upper: Vec<Parameter>,
    pub lower: Vec<Parameter>,
    pub a: Parameter,
    pub b: Parameter,
    pub c: Parameter,
}

impl Default for IdentityParams {
    fn default() -> Self {
        IdentityParams {
            n: 1,
            r: Parameter::Int(0),
            upper: Vec::new(),
            lower: Vec::new(),
            a: Parameter::Int(0),
            b: Parameter::Int(0),
            c: Parameter::Int(1),
        }
    }
}

fn list(v: &[Parameter]) -> String {
    v.iter().map(Parameter::to_string).collect::<Vec<_>>().join(";")
}

pub struct IdentityEntry {
    pub id: &'static str,
    pub params_schema: &'static [&'static str],
    pub z_points: &'static [f64],
    case: fn(&IdentityParams) -> bool,
    lhs_builder: fn(&IdentityParams) -> Result<Expr>,
    rhs_builder: fn(&IdentityParams) -> Result<Expr>,
    sampler: fn(&mut ChaCha8Rng) -> IdentityParams,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry").field("id", &self.id).finish_non_exhaustive()
    }
}

impl IdentityEntry {
    /// Whether the case line holds for `p` and both sides can be built
    /// without a pole in a coefficient or a lower parameter.
    pub fn applicable(&self, p: &IdentityParams) -> bool {
        (self.case)(p) && (self.lhs_builder)(p).is_ok() && (self.rhs_builder)(p).is_ok()
    }

    pub fn lhs(&self, p: &IdentityParams) -> Result<Expr> {
        self.guard(p)?;
        (self.lhs_builder)(p)
    }

    pub fn rhs(&self, p: &IdentityParams) -> Result<Expr> {
        self.guard(p)?;
        (self.rhs_builder)(p)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> IdentityParams {
        (self.sampler)(rng)
    }

    /// `(d^n lhs(z0), rhs(z0))`.
    pub fn sides(&self, p: &IdentityParams, z0: f64, ctrl: &EvalControl) -> Result<(Complex64, Complex64)> {
        let z = Complex64::new(z0, 0.0);
        let l = crate::expr::nth_derivative(&self.lhs(p)?, p.n as usize, z, ctrl)?;
        let r = eval_expr(&self.rhs(p)?, z, ctrl)?;
        Ok((l, r))
    }

    /// Renders the fields of `p` named in the schema, without commas.
    pub fn describe(&self, p: &IdentityParams) -> String {
        self.params_schema
            .iter()
            .map(|&k| match k {
                "n" => format!("n={}", p.n),
                "r" => format!("r={}", p.r),
                "a" => format!("a={}", p.a),
                "b" => format!("b={}", p.b),
                "c" => format!("c={}", p.c),
                "upper" => format!("upper=[{}]", list(&p.upper)),
                "lower" => format!("lower=[{}]", list(&p.lower)),
                other => format!("{other}=?"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn guard(&self, p: &IdentityParams) -> Result<()> {
        if p.n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if (self.case)(p) {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!("{} at {}", self.id, self.describe(p))))
        }
    }
}

/// Every entry, theorem lines first.
pub fn catalog() -> &'static [IdentityEntry] {
    use std::sync::OnceLock;
    static CATALOG: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    CATALOG.get_or_init(entries::all)
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry> {
    catalog().iter().find(|e| e.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert_eq!(n, 37);
    }

    #[test]
    fn lookup_is_case_insensitive_and_rejects_unknown_ids() {
        assert_eq!(lookup("th1-2").unwrap().id, "Th1-2");
        assert!(matches!(lookup("Th9-9"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn samplers_land_inside_their_case_lines() {
        for e in catalog() {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let hits = (0..40).filter(|_| e.applicable(&e.sample(&mut rng))).count();
            assert!(hits >= 35, "{}: {hits}/40", e.id);
        }
    }

    #[test]
    fn entries_refuse_parameters_outside_their_case() {
        let e = lookup("Th1-1-exceptional").unwrap();
        let p =
            IdentityParams { n: 2, r: Parameter::real(0.5), upper: vec![Parameter::real(0.5)], ..Default::default() };
        assert!(!e.applicable(&p));
        assert!(matches!(e.rhs(&p), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn table_row_matches_through_the_catalog() {
        let p = IdentityParams {
            n: 4,
            upper: vec![Parameter::ratio(1, 2), Parameter::ratio(2, 3)],
            lower: vec![Parameter::Int(5)],
            ..Default::default()
        };
        for id in ["Th1-4-exceptional", "Th1-4-regular"] {
            let (l, r) = lookup(id).unwrap().sides(&p, 1.0 / 3.0, &EvalControl::full_precision()).unwrap();
            assert!((l.re - 27.4105535888826).abs() < 1e-11, "{id}: {l}");
            assert!((r.re - 27.4105535888826).abs() < 1e-11, "{id}: {r}");
        }
    }
}
