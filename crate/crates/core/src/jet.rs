//! Truncated Taylor series ("jets") at a fixed base point.
//!
//! A jet of order `K` stores the Taylor coefficients `c_0..c_K` of `f(z0 + h)`
//! in powers of `h`; the `n`-th derivative at `z0` is `n! c_n`. Every jet
//! taking part in one computation shares the same base point `z0` of the
//! independent variable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{term_ratio, termination_order, validate_spec, EvalControl, HypSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base_point: Complex64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Jet from explicit coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(base_point: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant coefficient");
        Jet { base_point, coeffs }
    }

    pub fn constant(base_point: Complex64, order: usize, value: Complex64) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = value;
        Jet { base_point, coeffs }
    }

    /// The independent variable `f(z) = z`.
    pub fn variable(base_point: Complex64, order: usize) -> Self {
        let mut j = Jet::constant(base_point, order, base_point);
        if order >= 1 {
            j.coeffs[1] = ONE;
        }
        j
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    fn check_compatible(&self, other: &Jet) -> Result<()> {
        if self.base_point != other.base_point || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::JetMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Jet { base_point: self.base_point, coeffs })
    }

    pub fn checked_sub(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Jet { base_point: self.base_point, coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Jet) -> Jet {
        let n = self.coeffs.len();
        let mut coeffs = vec![ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Jet { base_point: self.base_point, coeffs }
    }

    /// Quotient by recursive deconvolution.
    pub fn checked_div(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let d0 = other.coeffs[0];
        if d0 == ZERO {
            return Err(Error::DivisionByZeroJet);
        }
        let n = self.coeffs.len();
        let mut q = vec![ZERO; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / d0;
        }
        Ok(Jet { base_point: self.base_point, coeffs: q })
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet { base_point: self.base_point, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn neg(&self) -> Jet {
        self.scale(-ONE)
    }

    /// `exp(sign * f)` via `e' = sign f' e`.
    pub fn exp(&self, sign: i8) -> Jet {
        let s = if sign < 0 { -1.0 } else { 1.0 };
        let n = self.coeffs.len();
        let mut e = vec![ZERO; n];
        e[0] = (self.coeffs[0] * s).exp();
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * e[k - j] * j as f64;
            }
            e[k] = acc * s / k as f64;
        }
        Jet { base_point: self.base_point, coeffs: e }
    }

    /// `f^alpha` on the principal branch via `alpha f' g = f g'`.
    pub fn pow(&self, alpha: Complex64) -> Result<Jet> {
        let f0 = self.coeffs[0];
        if f0 == ZERO {
            return Err(Error::BasePointAtBranchPoint);
        }
        let n = self.coeffs.len();
        let mut g = vec![ZERO; n];
        g[0] = f0.powc(alpha);
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * g[k - j] * (alpha * j as f64 - (k - j) as f64);
            }
            g[k] = acc / (f0 * k as f64);
        }
        Ok(Jet { base_point: self.base_point, coeffs: g })
    }

    /// `f^k` for an integer exponent by repeated squaring; works at `f(z0) = 0`
    /// for `k >= 0`.
    pub fn powi(&self, k: i64) -> Result<Jet> {
        let mut result = Jet::constant(self.base_point, self.order(), ONE);
        let mut base = self.clone();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        if k < 0 {
            Jet::constant(self.base_point, self.order(), ONE).checked_div(&result)
        } else {
            Ok(result)
        }
    }

    /// `n! c_n`.
    pub fn derivative(&self, n: usize) -> Result<Complex64> {
        if n > self.order() {
            return Err(Error::OrderTooLow { requested: n, order: self.order() });
        }
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        Ok(self.coeffs[n] * fact)
    }
}

/// `pFq(spec; arg)` composed with an inner jet `arg`.
///
/// Sums `c_k arg^k` in jet arithmetic. Nonterminating series stop once every
/// coefficient of the added term satisfies `|t_i| <= rel_tol * max(|s_i|, eps * S)`
/// for `consecutive_small` terms in a row, where `s_i` is the running sum and
/// `S` its largest coefficient magnitude.
pub fn jet_pfq(spec: &HypSpec, arg: &Jet, ctrl: &EvalControl) -> Result<Jet> {
    ctrl.check()?;
    validate_spec(spec)?;
    let bp = arg.base_point;
    let order = arg.order();
    let one = Jet::constant(bp, order, ONE);

    if let Some(m) = termination_order(spec) {
        let mut term = one.clone();
        let mut sum = one;
        for k in 0..m {
            let r = term_ratio(spec, k)?;
            term = term.mul_unchecked(arg).scale(r);
            sum = sum.checked_add(&term)?;
        }
        return Ok(sum);
    }

    let w0 = arg.value();
    let class = crate::series::classify_convergence(spec, w0);
    let inside =
        matches!(class, crate::series::ConvergenceClass::Entire | crate::series::ConvergenceClass::InsideUnitDisk);
    // Derivatives of a series on the boundary of its disk do not converge.
    if !inside && !(w0 == ZERO && arg.coeffs.iter().all(|c| *c == ZERO)) {
        return Err(Error::DomainError(format!("{}F{} jet at argument {w0} is {}", spec.p(), spec.q(), class.name())));
    }

    let mut term = one.clone();
    let mut sum = one;
    let mut small = 0usize;
    for k in 0.. {
        if k + 1 >= ctrl.max_terms {
            break;
        }
        let r = term_ratio(spec, k as u64)?;
        if r == ZERO && spec.upper.iter().any(|a| a.value() + k as f64 == ZERO) {
            return Ok(sum);
        }
        term = term.mul_unchecked(arg).scale(r);
        sum = sum.checked_add(&term)?;
        let scale = sum.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let negligible = term
            .coeffs
            .iter()
            .zip(&sum.coeffs)
            .all(|(t, s)| t.norm() <= ctrl.rel_tol * s.norm().max(f64::EPSILON * scale));
        if negligible {
            small += 1;
            if small >= ctrl.consecutive_small {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence { max_terms: ctrl.max_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Parameter;
    use crate::series::evaluate;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn assert_coeffs(j: &Jet, expected: &[f64], tol: f64) {
        assert_eq!(j.coeffs().len(), expected.len());
        for (a, e) in j.coeffs().iter().zip(expected) {
            assert!((a - e).norm() <= tol * e.abs().max(1.0), "{:?} vs {expected:?}", j.coeffs());
        }
    }

    #[test]
    fn variable_examples() {
        assert_coeffs(&Jet::variable(c(2.0), 3), &[2.0, 1.0, 0.0, 0.0], 0.0);
        assert_coeffs(&Jet::variable(c(0.0), 0), &[0.0], 0.0);
        let j = Jet::variable(Complex64::i(), 1);
        assert_eq!(j.coeffs(), &[Complex64::i(), ONE]);
    }

    #[test]
    fn arithmetic_examples() {
        let x = Jet::variable(c(2.0), 3);
        let cube = x.checked_mul(&x).unwrap().checked_mul(&x).unwrap();
        assert_coeffs(&cube, &[8.0, 12.0, 6.0, 1.0], 0.0);
        let zero = Jet::constant(c(2.0), 3, ZERO);
        assert_eq!(x.checked_add(&zero).unwrap(), x);
        assert_coeffs(&cube.checked_div(&cube).unwrap(), &[1.0, 0.0, 0.0, 0.0], 1e-15);
        let at0 = Jet::variable(c(0.0), 3);
        let at0b = Jet::variable(c(0.0), 3);
        assert!(matches!(at0.checked_div(&at0b), Err(Error::DivisionByZeroJet)));
        assert!(matches!(x.checked_add(&at0), Err(Error::JetMismatch)));
    }

    #[test]
    fn exp_examples() {
        let x = Jet::variable(c(0.0), 4);
        assert_coeffs(&x.exp(1), &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0], 1e-15);
        let k = Jet::constant(c(0.0), 3, c(0.7));
        assert_coeffs(&k.exp(1), &[0.7f64.exp(), 0.0, 0.0, 0.0], 1e-15);
        let y = Jet::variable(c(0.4), 5);
        let unit = y.exp(1).checked_mul(&y.exp(-1)).unwrap();
        assert_coeffs(&unit, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-15);
        assert!((x.exp(1).derivative(4).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn pow_examples() {
        let x = Jet::variable(c(1.0), 2);
        let r = x.pow(c(0.5)).unwrap();
        assert_coeffs(&r, &[1.0, 0.5, -0.125], 1e-15);
        assert!((r.derivative(2).unwrap() + 0.25).norm() < 1e-15);
        let y = Jet::variable(c(0.3), 4);
        assert_coeffs(&y.pow(c(1.0)).unwrap(), &[0.3, 1.0, 0.0, 0.0, 0.0], 1e-15);
        assert_coeffs(&y.pow(c(0.0)).unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        let z = Jet::variable(c(0.0), 2);
        assert!(matches!(z.pow(c(0.5)), Err(Error::BasePointAtBranchPoint)));
    }

    #[test]
    fn powi_handles_zero_base_and_negative_exponents() {
        let z = Jet::variable(c(0.0), 3);
        assert_coeffs(&z.powi(2).unwrap(), &[0.0, 0.0, 1.0, 0.0], 0.0);
        assert_coeffs(&z.powi(0).unwrap(), &[1.0, 0.0, 0.0, 0.0], 0.0);
        let x = Jet::variable(c(0.5), 3);
        let via_pow = x.pow(c(-3.0)).unwrap();
        let via_powi = x.powi(-3).unwrap();
        for (a, b) in via_pow.coeffs().iter().zip(via_powi.coeffs()) {
            assert!((a - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn derivative_examples() {
        let x = Jet::variable(c(2.0), 3);
        let cube = x.powi(3).unwrap();
        assert_eq!(cube.derivative(2).unwrap(), c(12.0));
        assert_eq!(cube.derivative(0).unwrap(), cube.value());
        assert!(matches!(cube.derivative(4), Err(Error::OrderTooLow { requested: 4, order: 3 })));
    }

    #[test]
    fn pfq_of_jets() {
        let ctrl = EvalControl::default();
        let a = Parameter::real(0.37);
        let m11 = HypSpec::new(vec![a], vec![a]);
        let x = Jet::variable(c(0.0), 5);
        let got = jet_pfq(&m11, &x, &ctrl).unwrap();
        // not a cancelled spec: the series itself sums to e^z
        for (g, e) in got.coeffs().iter().zip(x.exp(1).coeffs()) {
            assert!((g - e).norm() < 1e-15);
        }

        let spec = HypSpec::new(vec![Parameter::real(0.5), Parameter::real(0.25)], vec![Parameter::real(1.5)]);
        let zero = Jet::constant(c(0.0), 3, ZERO);
        assert_eq!(jet_pfq(&spec, &zero, &ctrl).unwrap(), Jet::constant(c(0.0), 3, ONE));

        let log = HypSpec::new(vec![Parameter::Int(1), Parameter::Int(1)], vec![Parameter::Int(2)]);
        let j = jet_pfq(&log, &Jet::variable(c(0.5), 3), &ctrl).unwrap();
        assert!((j.value() - 1.386_294_361_119_890_6).norm() < 1e-14);
        let direct = evaluate(&log, c(0.5), &ctrl).unwrap().value;
        assert!((j.value() - direct).norm() < 1e-14);
    }

    #[test]
    fn pfq_jet_matches_closed_form_derivatives() {
        let log = HypSpec::new(vec![Parameter::Int(1), Parameter::Int(1)], vec![Parameter::Int(2)]);
        let z0 = 0.5f64;
        let j = jet_pfq(&log, &Jet::variable(c(z0), 3), &EvalControl::full_precision()).unwrap();
        // term-by-term: f(z) = sum z^k/(k+1), f''' = sum k(k-1)(k-2) z^(k-3)/(k+1)
        let brute: f64 = (3..400).map(|k| (k * (k - 1) * (k - 2)) as f64 * z0.powi(k - 3) / (k + 1) as f64).sum();
        assert!((j.derivative(3).unwrap() - brute).norm() < 1e-12 * brute);
    }

    #[test]
    fn pfq_jet_rejects_arguments_outside_the_disk() {
        let spec = HypSpec::new(vec![Parameter::real(0.5), Parameter::real(0.25)], vec![Parameter::real(1.5)]);
        let arg = Jet::variable(c(1.2), 2);
        assert!(matches!(jet_pfq(&spec, &arg, &EvalControl::default()), Err(Error::DomainError(_))));
    }
}
