//! Pochhammer symbols and direct summation of generalized hypergeometric series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::param::Parameter;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Rising factorial `(a)_k`, extended to negative `k` by the reciprocal
/// product `1 / ((a-|k|)(a-|k|+1)...(a-1))`.
///
/// Exact-integer arguments are multiplied as integers-in-`f64`, which is exact
/// as long as intermediate products stay below 2^53.
pub fn pochhammer(a: Parameter, k: i64) -> Result<Complex64> {
    if k >= 0 {
        return Ok(rising(a, 0, k));
    }
    let m = k.unsigned_abs() as i64;
    let denom = rising(a, -m, m);
    if denom == ZERO {
        return Err(Error::PolePochhammer { a: a.to_string(), k });
    }
    Ok(ONE / denom)
}

/// Product `(a+start)(a+start+1)...(a+start+len-1)`.
fn rising(a: Parameter, start: i64, len: i64) -> Complex64 {
    match a {
        Parameter::Int(base) => {
            let mut acc = 1.0_f64;
            for j in 0..len {
                acc *= (base + start + j) as f64;
            }
            Complex64::new(acc, 0.0)
        }
        Parameter::Num(z) => {
            let mut acc = ONE;
            for j in 0..len {
                acc *= z + (start + j) as f64;
            }
            acc
        }
    }
}

/// `(v_1)_k (v_2)_k ...`; the empty product is 1.
pub fn pochhammer_vec(v: &[Parameter], k: i64) -> Result<Complex64> {
    v.iter().try_fold(ONE, |acc, &a| Ok(acc * pochhammer(a, k)?))
}

/// `Γ(x+s)/Γ(x)` for real `x` and real, possibly non-integer, order `s`.
///
/// Integral orders go through [`pochhammer`]. Otherwise the ratio of Gamma
/// functions is used; a pole in the numerator is an error and a pole in the
/// denominator gives zero.
pub fn pochhammer_real(x: f64, s: f64) -> Result<f64> {
    if s.fract() == 0.0 && s.abs() < 1e9 {
        let v = pochhammer(Parameter::real(x), s as i64)?;
        return Ok(v.re);
    }
    let is_pole = |t: f64| t <= 0.0 && t.fract() == 0.0;
    if is_pole(x + s) {
        return Err(Error::PolePochhammer { a: format!("{x:?}"), k: 0 });
    }
    if is_pole(x) {
        return Ok(0.0);
    }
    use statrs::function::gamma::gamma;
    Ok(gamma(x + s) / gamma(x))
}

/// Upper and lower parameter vectors of `pFq(a; b; z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSpec {
    pub upper: Vec<Parameter>,
    pub lower: Vec<Parameter>,
}

impl HypSpec {
    pub fn new(upper: Vec<Parameter>, lower: Vec<Parameter>) -> Self {
        HypSpec { upper, lower }
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Real part of `sum(b) - sum(a)`.
    pub fn parameter_excess(&self) -> f64 {
        let sb: Complex64 = self.lower.iter().map(Parameter::value).sum();
        let sa: Complex64 = self.upper.iter().map(Parameter::value).sum();
        (sb - sa).re
    }

    /// Smallest `m` such that some upper parameter is the exact integer `-m`.
    pub fn termination_order(&self) -> Option<u64> {
        termination_order(self)
    }

    pub fn validate(&self) -> Result<()> {
        validate_spec(self)
    }
}

/// Tolerances for direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalControl {
    pub rel_tol: f64,
    pub consecutive_small: usize,
    pub max_terms: usize,
}

impl Default for EvalControl {
    fn default() -> Self {
        EvalControl { rel_tol: 1e-14, consecutive_small: 3, max_terms: 10_000 }
    }
}

impl EvalControl {
    pub fn check(&self) -> Result<()> {
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(Error::InvalidControl(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidControl("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    /// Control that sums until the terms no longer affect the last bit.
    pub fn full_precision() -> Self {
        EvalControl { rel_tol: 1e-17, ..EvalControl::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// The series is a polynomial and was summed exactly.
    pub terminated: bool,
    /// Magnitude of the last term added; zero for terminating series.
    pub tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    Entire,
    InsideUnitDisk,
    AtPlusOne,
    AtMinusOne,
    UnitDiskBoundaryDivergent,
    DivergentUnlessTerminating,
}

impl ConvergenceClass {
    pub fn converges(self) -> bool {
        !matches!(self, ConvergenceClass::UnitDiskBoundaryDivergent | ConvergenceClass::DivergentUnlessTerminating)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConvergenceClass::Entire => "Entire",
            ConvergenceClass::InsideUnitDisk => "InsideUnitDisk",
            ConvergenceClass::AtPlusOne => "AtPlusOne",
            ConvergenceClass::AtMinusOne => "AtMinusOne",
            ConvergenceClass::UnitDiskBoundaryDivergent => "UnitDiskBoundaryDivergent",
            ConvergenceClass::DivergentUnlessTerminating => "DivergentUnlessTerminating",
        }
    }
}

pub fn termination_order(spec: &HypSpec) -> Option<u64> {
    spec.upper.iter().filter_map(Parameter::nonpositive_int).min()
}

/// Rejects exact nonpositive-integer lower parameters unless a terminating
/// upper parameter `-m` keeps every such lower parameter at or below `-m`.
pub fn validate_spec(spec: &HypSpec) -> Result<()> {
    let order = termination_order(spec);
    for (index, b) in spec.lower.iter().enumerate() {
        if let Some(k) = b.nonpositive_int() {
            let allowed = matches!(order, Some(m) if k >= m);
            if !allowed {
                return Err(Error::SingularLowerParameter { index, value: b.to_string() });
            }
        }
    }
    Ok(())
}

/// `c_k = (a)_k / ((b)_k k!)`.
///
/// For terminating series the coefficients beyond the termination order are
/// zero, which is also the value assigned by the iterated limit when a lower
/// parameter is an exact nonpositive integer below the termination order.
pub fn coefficient(spec: &HypSpec, k: u64) -> Result<Complex64> {
    validate_spec(spec)?;
    if let Some(m) = termination_order(spec) {
        if k > m {
            return Ok(ZERO);
        }
    }
    let mut c = ONE;
    for i in 0..k {
        c *= term_ratio(spec, i)?;
    }
    Ok(c)
}

/// `c_{i+1} / c_i` without the argument: `prod(a+i) / (prod(b+i) (i+1))`.
///
/// Errors with [`Error::PoleCoefficient`] when a lower factor vanishes and the
/// numerator does not.
pub(crate) fn term_ratio(spec: &HypSpec, i: u64) -> Result<Complex64> {
    let num: Complex64 = spec.upper.iter().map(|a| a.value() + i as f64).product();
    let mut den = Complex64::new((i + 1) as f64, 0.0);
    for (index, b) in spec.lower.iter().enumerate() {
        let f = b.value() + i as f64;
        if f == ZERO {
            if num == ZERO {
                return Ok(ZERO);
            }
            return Err(Error::PoleCoefficient { index, k: i + 1 });
        }
        den *= f;
    }
    Ok(num / den)
}

/// Neumaier-compensated complex sum.
#[derive(Debug, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    fn new(start: Complex64) -> Self {
        CompensatedSum { sum: start, comp: ZERO }
    }

    fn add(&mut self, x: Complex64) {
        fn step(s: f64, x: f64, c: &mut f64) -> f64 {
            let t = s + x;
            *c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
            t
        }
        self.sum.re = step(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = step(self.sum.im, x.im, &mut self.comp.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

pub fn classify_convergence(spec: &HypSpec, z: Complex64) -> ConvergenceClass {
    let (p, q) = (spec.p(), spec.q());
    if p < q + 1 || termination_order(spec).is_some() {
        return ConvergenceClass::Entire;
    }
    if p > q + 1 {
        return ConvergenceClass::DivergentUnlessTerminating;
    }
    if z.norm() < 1.0 {
        return ConvergenceClass::InsideUnitDisk;
    }
    let excess = spec.parameter_excess();
    if z == ONE && excess > 0.0 {
        ConvergenceClass::AtPlusOne
    } else if z == -ONE && excess + 1.0 > 0.0 {
        ConvergenceClass::AtMinusOne
    } else {
        ConvergenceClass::UnitDiskBoundaryDivergent
    }
}

/// Sums `pFq(a; b; z)` directly.
///
/// Terminating series are summed exactly up to the termination order.
/// Otherwise summation stops after `consecutive_small` successive terms with
/// `|term| <= rel_tol |partial sum|`.
pub fn evaluate(spec: &HypSpec, z: Complex64, ctrl: &EvalControl) -> Result<EvalResult> {
    ctrl.check()?;
    validate_spec(spec)?;

    if let Some(m) = termination_order(spec) {
        let mut term = ONE;
        let mut sum = CompensatedSum::new(ONE);
        for k in 0..m {
            term *= term_ratio(spec, k)? * z;
            sum.add(term);
        }
        return Ok(EvalResult { value: sum.value(), terms_used: m as usize + 1, terminated: true, tail_estimate: 0.0 });
    }

    if z == ZERO {
        return Ok(EvalResult { value: ONE, terms_used: 1, terminated: false, tail_estimate: 0.0 });
    }

    let class = classify_convergence(spec, z);
    if !class.converges() {
        return Err(Error::DomainError(format!("{}F{} series at z = {z} is {}", spec.p(), spec.q(), class.name())));
    }

    let mut term = ONE;
    let mut sum = CompensatedSum::new(ONE);
    let mut small = 0usize;
    for k in 0.. {
        if k + 1 >= ctrl.max_terms {
            break;
        }
        let ratio = term_ratio(spec, k as u64)?;
        if ratio == ZERO && spec.upper.iter().any(|a| a.value() + k as f64 == ZERO) {
            // A numeric upper parameter hit a nonpositive integer.
            return Ok(EvalResult { value: sum.value(), terms_used: k + 1, terminated: true, tail_estimate: 0.0 });
        }
        term *= ratio * z;
        sum.add(term);
        if term.norm() <= ctrl.rel_tol * sum.value().norm() {
            small += 1;
            if small >= ctrl.consecutive_small {
                return Ok(EvalResult {
                    value: sum.value(),
                    terms_used: k + 2,
                    terminated: false,
                    tail_estimate: term.norm(),
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence { max_terms: ctrl.max_terms })
}
