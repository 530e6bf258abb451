//! Sums of terms `coeff * z^α * (1-z)^β * e^{±z} * pFq(a; b; w(z))`.
//!
//! This covers both sides of every differentiation identity in the catalog.
//! An expression can be evaluated pointwise or expanded as a [`Jet`], which is
//! how the left-hand sides are differentiated.

mod text;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{jet_pfq, Jet};
use crate::param::Parameter;
use crate::series::{evaluate, EvalControl, HypSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Argument fed to a hypergeometric factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgMap {
    /// `w = z`
    Identity,
    /// `w = -z`
    Negate,
    /// `w = z / (z - 1)`
    Pfaff,
}

impl ArgMap {
    pub fn apply(self, z: Complex64) -> Result<Complex64> {
        match self {
            ArgMap::Identity => Ok(z),
            ArgMap::Negate => Ok(-z),
            ArgMap::Pfaff => {
                if z == ONE {
                    return Err(Error::BranchPointEvaluation("z/(z-1) at z = 1".into()));
                }
                Ok(z / (z - 1.0))
            }
        }
    }

    fn apply_jet(self, x: &Jet) -> Result<Jet> {
        match self {
            ArgMap::Identity => Ok(x.clone()),
            ArgMap::Negate => Ok(x.neg()),
            ArgMap::Pfaff => {
                let one = Jet::constant(x.base_point(), x.order(), ONE);
                x.checked_div(&x.checked_sub(&one)?).map_err(|e| match e {
                    Error::DivisionByZeroJet => Error::BranchPointEvaluation("z/(z-1) at z = 1".into()),
                    other => other,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    PowZ(Parameter),
    PowOneMinusZ(Parameter),
    /// `e^{sign z}` with `sign` = ±1.
    ExpZ(i8),
    Hyp(HypSpec, ArgMap),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn new(coeff: Complex64) -> Self {
        Term { coeff, factors: Vec::new() }
    }

    pub fn powz(mut self, alpha: Parameter) -> Self {
        self.factors.push(Factor::PowZ(alpha));
        self
    }

    pub fn pow1mz(mut self, alpha: Parameter) -> Self {
        self.factors.push(Factor::PowOneMinusZ(alpha));
        self
    }

    pub fn exp(mut self, sign: i8) -> Self {
        self.factors.push(Factor::ExpZ(if sign < 0 { -1 } else { 1 }));
        self
    }

    pub fn hyp(mut self, spec: HypSpec, map: ArgMap) -> Self {
        debug_assert!(self.hyp_factor().is_none(), "a term carries at most one pFq factor");
        self.factors.push(Factor::Hyp(spec, map));
        self
    }

    pub fn scaled(mut self, s: Complex64) -> Self {
        self.coeff *= s;
        self
    }

    pub fn hyp_factor(&self) -> Option<(&HypSpec, ArgMap)> {
        self.factors.iter().find_map(|f| match f {
            Factor::Hyp(spec, map) => Some((spec, *map)),
            _ => None,
        })
    }

    pub fn eval(&self, z: Complex64, ctrl: &EvalControl) -> Result<Complex64> {
        if self.coeff == ZERO {
            return Ok(ZERO);
        }
        let mut acc = self.coeff;
        for f in &self.factors {
            acc *= match f {
                Factor::PowZ(alpha) => power(z, *alpha, "z")?,
                Factor::PowOneMinusZ(alpha) => power(ONE - z, *alpha, "1-z")?,
                Factor::ExpZ(s) => (z * *s as f64).exp(),
                Factor::Hyp(spec, map) => evaluate(spec, map.apply(z)?, ctrl)?.value,
            };
        }
        Ok(acc)
    }

    pub fn eval_jet(&self, z0: Complex64, order: usize, ctrl: &EvalControl) -> Result<Jet> {
        let mut acc = Jet::constant(z0, order, self.coeff);
        if self.coeff == ZERO {
            return Ok(acc);
        }
        let x = Jet::variable(z0, order);
        for f in &self.factors {
            let j = match f {
                Factor::PowZ(alpha) => jet_power(&x, *alpha, "z")?,
                Factor::PowOneMinusZ(alpha) => {
                    let one = Jet::constant(z0, order, ONE);
                    jet_power(&one.checked_sub(&x)?, *alpha, "1-z")?
                }
                Factor::ExpZ(s) => x.exp(*s),
                Factor::Hyp(spec, map) => jet_pfq(spec, &map.apply_jet(&x)?, ctrl)?,
            };
            acc = acc.checked_mul(&j)?;
        }
        Ok(acc)
    }
}

fn power(base: Complex64, alpha: Parameter, what: &str) -> Result<Complex64> {
    match alpha {
        Parameter::Int(k) => {
            if base == ZERO && k < 0 {
                return Err(Error::BranchPointEvaluation(format!("({what})^{k} at {what} = 0")));
            }
            Ok(int_pow(base, k))
        }
        Parameter::Num(a) => {
            if base == ZERO {
                return Err(Error::BranchPointEvaluation(format!("({what})^{a} at {what} = 0")));
            }
            Ok(base.powc(a))
        }
    }
}

fn int_pow(base: Complex64, k: i64) -> Complex64 {
    match i32::try_from(k) {
        Ok(k) => base.powi(k),
        Err(_) => base.powc(Complex64::new(k as f64, 0.0)),
    }
}

fn jet_power(base: &Jet, alpha: Parameter, what: &str) -> Result<Jet> {
    let r = match alpha {
        Parameter::Int(k) => base.powi(k),
        Parameter::Num(a) => base.pow(a),
    };
    r.map_err(|e| match e {
        Error::DivisionByZeroJet | Error::BasePointAtBranchPoint => {
            Error::BranchPointEvaluation(format!("({what})^{alpha} at {what} = 0"))
        }
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn new(terms: Vec<Term>) -> Self {
        Expr { terms }
    }

    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(mut self, other: Expr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scaled(self, s: Complex64) -> Self {
        Expr { terms: self.terms.into_iter().map(|t| t.scaled(s)).collect() }
    }

    /// Multiplies every term by an extra factor.
    pub fn times_factor(self, f: Factor) -> Self {
        Expr {
            terms: self
                .terms
                .into_iter()
                .map(|mut t| {
                    t.factors.push(f.clone());
                    t
                })
                .collect(),
        }
    }

    /// Drops terms whose coefficient is exactly zero.
    pub fn without_zero_terms(self) -> Self {
        Expr { terms: self.terms.into_iter().filter(|t| t.coeff != ZERO).collect() }
    }

    /// Every hypergeometric factor in the expression.
    pub fn hyp_specs(&self) -> impl Iterator<Item = &HypSpec> {
        self.terms.iter().filter_map(|t| t.hyp_factor().map(|(s, _)| s))
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr { terms: vec![t] }
    }
}

pub fn eval_expr(e: &Expr, z: Complex64, ctrl: &EvalControl) -> Result<Complex64> {
    e.terms.iter().try_fold(ZERO, |acc, t| Ok(acc + t.eval(z, ctrl)?))
}

pub fn eval_expr_jet(e: &Expr, z0: Complex64, order: usize, ctrl: &EvalControl) -> Result<Jet> {
    e.terms.iter().try_fold(Jet::constant(z0, order, ZERO), |acc, t| acc.checked_add(&t.eval_jet(z0, order, ctrl)?))
}

/// `d^n/dz^n e(z)` at `z0`, read off the order-`n` jet.
pub fn nth_derivative(e: &Expr, n: usize, z0: Complex64, ctrl: &EvalControl) -> Result<Complex64> {
    eval_expr_jet(e, z0, n, ctrl)?.derivative(n)
}
