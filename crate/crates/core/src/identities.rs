//! Right-hand sides of `d^n/dz^n [z^r pFq(a; b; z)]`.
//!
//! The derivative is expressed through `p+1 F q+1` in one of three ways
//! depending on where `r` sits relative to the integers `0..=n`; when an upper
//! and a lower parameter coincide afterwards the result reduces back to a
//! `pFq` and one of the named special forms applies.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{ArgMap, Expr, Factor, Term};
use crate::param::Parameter;
use crate::series::{pochhammer, pochhammer_vec, termination_order, validate_spec, HypSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance under which a constructed parameter is considered the
/// same as an existing one (e.g. `(b - 1) + 1` versus `b`).
const SNAP_TOL: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RBranch {
    /// `r` is not an integer below `n`.
    General,
    /// `r` is one of `0, 1, ..., n-1` (`r = n` reports `General`).
    Exceptional,
    /// `r` is a negative integer.
    NegativeInteger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Th1_1,
    Th1_2,
    Th1_3,
    Th1_4Regular,
    Th1_4Exceptional,
    Th1_5Exceptional,
    Th1_5Negative,
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityName::Th1_1 => "Th1-1",
            IdentityName::Th1_2 => "Th1-2",
            IdentityName::Th1_3 => "Th1-3",
            IdentityName::Th1_4Regular => "Th1-4-regular",
            IdentityName::Th1_4Exceptional => "Th1-4-exceptional",
            IdentityName::Th1_5Exceptional => "Th1-5-exceptional",
            IdentityName::Th1_5Negative => "Th1-5-negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityForm {
    pub name: IdentityName,
    pub rhs: Expr,
    pub branch: RBranch,
}

pub fn classify_r(r: Parameter, n: u32) -> RBranch {
    match r {
        Parameter::Int(k) if k < 0 => RBranch::NegativeInteger,
        Parameter::Int(k) if k < n as i64 => RBranch::Exceptional,
        _ => RBranch::General,
    }
}

/// `z^r pFq(a; b; z)`.
pub fn theorem1_lhs(spec: &HypSpec, r: Parameter) -> Expr {
    Term::new(ONE).powz(r).hyp(spec.clone(), ArgMap::Identity).into()
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("derivative order n must be at least 1".into()));
    }
    Ok(())
}

fn shifted(v: &[Parameter], s: i64) -> Vec<Parameter> {
    v.iter().map(|&x| x + s).collect()
}

/// `(r-n+1)_n z^{r-n} p+1Fq+1(r+1, a; r-n+1, b; z)`.
///
/// Fails with [`Error::SingularCoefficient`] when the lower parameter `r-n+1`
/// makes the series singular, which is the case for `r` in `0..n`.
pub fn general_line(spec: &HypSpec, r: Parameter, n: u32) -> Result<Expr> {
    check_n(n)?;
    let n = n as i64;
    let lower0 = r - n + 1;
    let coeff = pochhammer(lower0, n)?;
    let mut upper = vec![r + 1];
    upper.extend_from_slice(&spec.upper);
    let mut lower = vec![lower0];
    lower.extend_from_slice(&spec.lower);
    let big = HypSpec::new(upper, lower);
    validate_spec(&big).map_err(|e| Error::SingularCoefficient(format!("first line at r = {r}: {e}")))?;
    Ok(Term::new(coeff).powz(r - n).hyp(big, ArgMap::Identity).into())
}

/// `n!/(n-r)! (a)_{n-r}/(b)_{n-r} p+1Fq+1(n+1, a+n-r; n-r+1, b+n-r; z)` for an
/// exact integer `r <= n`.
///
/// When the left-hand side is a polynomial of degree below `n` the line is
/// identically zero and an empty expression is returned.
pub fn exceptional_line(spec: &HypSpec, r: i64, n: u32) -> Result<Expr> {
    check_n(n)?;
    let n = n as i64;
    if r > n {
        return Err(Error::InvalidArgument(format!("second line needs r <= n, got r = {r}")));
    }
    let s = n - r;
    if let Some(m) = termination_order(spec) {
        if (m as i64) < s {
            return Ok(Expr::zero());
        }
    }
    // n!/(n-r)! as a rising product; r may be negative, giving 1/((n+1)...(n-r)).
    let falling = pochhammer(Parameter::Int(s + 1), r)?;
    let num = pochhammer_vec(&spec.upper, s)?;
    let den = pochhammer_vec(&spec.lower, s)?;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularCoefficient(format!("(b)_{s} vanishes")));
    }
    let mut upper = vec![Parameter::Int(n + 1)];
    upper.extend(shifted(&spec.upper, s));
    let mut lower = vec![Parameter::Int(s + 1)];
    lower.extend(shifted(&spec.lower, s));
    let big = HypSpec::new(upper, lower);
    validate_spec(&big).map_err(|e| Error::SingularCoefficient(format!("second line at r = {r}: {e}")))?;
    Ok(Term::new(falling * num / den).hyp(big, ArgMap::Identity).into())
}

/// The three-way right-hand side, before any cancellation.
pub fn theorem1_rhs(spec: &HypSpec, r: Parameter, n: u32) -> Result<IdentityForm> {
    check_n(n)?;
    validate_spec(spec)?;
    let branch = classify_r(r, n);
    let rhs = match (branch, r) {
        (RBranch::General, _) => general_line(spec, r, n)?,
        (RBranch::Exceptional, Parameter::Int(k)) => exceptional_line(spec, k, n)?,
        (RBranch::NegativeInteger, Parameter::Int(k)) => general_line(spec, r, n)?.plus(exceptional_line(spec, k, n)?),
        _ => unreachable!("integer branches carry exact integers"),
    };
    Ok(IdentityForm { name: IdentityName::Th1_1, rhs, branch })
}

/// Whether removing the pair `(upper[i], lower[j])` leaves the function unchanged.
///
/// A pair equal to a nonpositive integer `-k` bounds the series at degree `k`
/// under the iterated-limit convention, so it may only go when the remaining
/// upper parameters already terminate the series at degree `<= k`.
fn cancellable(spec: &HypSpec, i: usize, j: usize) -> bool {
    let (a, b) = (spec.upper[i], spec.lower[j]);
    if !a.exact_eq(&b) {
        return false;
    }
    let v = a.value();
    let nonpositive_integer = v.im == 0.0 && v.re <= 0.0 && v.re.fract() == 0.0;
    if !nonpositive_integer {
        return true;
    }
    let k = (-v.re) as u64;
    spec.upper
        .iter()
        .enumerate()
        .filter(|&(idx, _)| idx != i)
        .filter_map(|(_, p)| p.nonpositive_int())
        .min()
        .is_some_and(|m| m <= k)
}

/// Removes equal upper/lower pairs, first match in vector order, until none is left.
pub fn reduce_cancellation(spec: &HypSpec) -> HypSpec {
    let mut out = spec.clone();
    'outer: loop {
        for i in 0..out.upper.len() {
            for j in 0..out.lower.len() {
                if cancellable(&out, i, j) {
                    out.upper.remove(i);
                    out.lower.remove(j);
                    continue 'outer;
                }
            }
        }
        return out;
    }
}

/// Makes numerically coincident upper/lower pairs bit-identical so that
/// [`reduce_cancellation`] sees them. Exact integers win over numeric values.
fn snap_pairs(spec: &mut HypSpec) {
    for i in 0..spec.upper.len() {
        for j in 0..spec.lower.len() {
            let (a, b) = (spec.upper[i], spec.lower[j]);
            if a.exact_eq(&b) || !a.approx_eq(&b, SNAP_TOL) {
                continue;
            }
            match (a, b) {
                (Parameter::Int(_), Parameter::Int(_)) => {}
                (Parameter::Int(_), _) => spec.lower[j] = a,
                _ => spec.upper[i] = b,
            }
        }
    }
}

fn simplify(e: Expr) -> Expr {
    let terms = e
        .without_zero_terms()
        .terms
        .into_iter()
        .map(|mut t| {
            for f in &mut t.factors {
                if let Factor::Hyp(spec, _) = f {
                    snap_pairs(spec);
                    *spec = reduce_cancellation(spec);
                }
            }
            t
        })
        .collect();
    Expr::new(terms)
}

fn identity_name(spec: &HypSpec, r: Parameter, n: u32, branch: RBranch) -> IdentityName {
    let n_i = n as i64;
    if branch == RBranch::Exceptional && r.as_int() == Some(0) {
        return IdentityName::Th1_2;
    }
    let matches_th13 = spec.upper.iter().any(|&a| match branch {
        RBranch::General => (a + (n_i - 1)).approx_eq(&r, SNAP_TOL),
        _ => a.as_int().is_some() && (a + (n_i - 1)).exact_eq(&r),
    });
    if matches_th13 {
        return IdentityName::Th1_3;
    }
    let matches_th14 = spec.lower.iter().any(|&b| match branch {
        RBranch::General => (b - 1).approx_eq(&r, SNAP_TOL),
        RBranch::Exceptional => b.as_int().is_some() && (b - 1).exact_eq(&r),
        RBranch::NegativeInteger => false,
    });
    if matches_th14 {
        return match branch {
            RBranch::General => IdentityName::Th1_4Regular,
            _ => IdentityName::Th1_4Exceptional,
        };
    }
    let has_one = spec.upper.iter().any(|a| a.as_int() == Some(1));
    if has_one {
        match branch {
            RBranch::Exceptional => return IdentityName::Th1_5Exceptional,
            RBranch::General if r.as_int() == Some(n_i) => return IdentityName::Th1_5Exceptional,
            RBranch::NegativeInteger => return IdentityName::Th1_5Negative,
            RBranch::General => {}
        }
    }
    IdentityName::Th1_1
}

/// [`theorem1_rhs`] followed by cancellation in every hypergeometric factor,
/// labelled with the special form it reduces to.
pub fn specialize(spec: &HypSpec, r: Parameter, n: u32) -> Result<IdentityForm> {
    let form = theorem1_rhs(spec, r, n)?;
    let name = identity_name(spec, r, n, form.branch);
    Ok(IdentityForm { name, rhs: simplify(form.rhs), branch: form.branch })
}
