//! The c-sweep of `d^4/dz^4 [z^{c-1} 2F1(1/2, 2/3; c; z)]` at `z = 1/3`,
//! tabulated at integer `c` and sampled on a real grid.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::catalog::{lookup, IdentityParams};
use crate::error::{Error, Result};
use crate::expr::{eval_expr, nth_derivative, ArgMap, Expr, Term};
use crate::param::Parameter;
use crate::series::{pochhammer_real, EvalControl, HypSpec};

pub const N: u32 = 4;
pub const Z: f64 = 1.0 / 3.0;

fn a() -> Parameter {
    Parameter::ratio(1, 2)
}

fn b() -> Parameter {
    Parameter::ratio(2, 3)
}

/// Header plus rows of optional cells; `None` renders as an empty field.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl OutputTable {
    /// CSV with LF line endings; the first column is printed as given, the
    /// rest at `digits` significant digits.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, cell)| match cell {
                    None => String::new(),
                    Some(x) if i == 0 => format!("{x}"),
                    Some(x) => format_significant(*x, digits),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Plain decimal notation with `digits` significant digits, e.g.
/// `16.2802578209098` for 15 digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let all: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let point = exp as usize + 1;
        if all.len() > point {
            format!("{}.{}", &all[..point], &all[point..])
        } else {
            format!("{all}{}", "0".repeat(point - all.len()))
        }
    } else {
        format!("0.{}{all}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

fn params(c: Parameter) -> IdentityParams {
    IdentityParams { n: N, upper: vec![a(), b()], lower: vec![c], ..IdentityParams::default() }
}

fn lhs(c: Parameter) -> Expr {
    let spec = HypSpec::new(vec![a(), b()], vec![c]);
    Term::new(Complex64::new(1.0, 0.0)).powz(c - 1).hyp(spec, ArgMap::Identity).into()
}

fn real_cell(v: Result<Complex64>) -> Option<f64> {
    v.ok().filter(|v| v.is_finite()).map(|v| v.re)
}

fn f_left(c: Parameter, ctrl: &EvalControl) -> Option<f64> {
    real_cell(nth_derivative(&lhs(c), N as usize, Complex64::new(Z, 0.0), ctrl))
}

fn via_entry(id: &str, c: Parameter, ctrl: &EvalControl) -> Option<f64> {
    let entry = lookup(id).ok()?;
    let p = params(c);
    if !entry.applicable(&p) {
        return None;
    }
    real_cell(entry.rhs(&p).and_then(|e| eval_expr(&e, Complex64::new(Z, 0.0), ctrl)))
}

/// Rows `c = 1..=7` with columns `c, f_L, f_R1, f_R2`.
pub fn table1() -> OutputTable {
    let ctrl = EvalControl::full_precision();
    let rows = (1..=7)
        .map(|k| {
            let c = Parameter::Int(k);
            vec![
                Some(k as f64),
                f_left(c, &ctrl),
                via_entry("Th1-4-regular", c, &ctrl),
                via_entry("Th1-4-exceptional", c, &ctrl),
            ]
        })
        .collect();
    OutputTable { header: ["c", "f_L", "f_R1", "f_R2"].map(String::from).to_vec(), rows }
}

/// The exceptional line with `c` real:
/// `(a)_s (b)_s / (c)_{n-2c+2} 2F1(a+s, b+s; n-c+2; z)` with `s = n-c+1`,
/// where the Pochhammer symbols of non-integer order are Gamma ratios.
fn f_r2_real(c: f64, ctrl: &EvalControl) -> Option<f64> {
    let n = N as f64;
    let s = n - c + 1.0;
    let coeff = pochhammer_real(0.5, s).ok()? * pochhammer_real(2.0 / 3.0, s).ok()?
        / pochhammer_real(c, n - 2.0 * c + 2.0).ok()?;
    if !coeff.is_finite() {
        return None;
    }
    let spec =
        HypSpec::new(vec![Parameter::real(0.5 + s), Parameter::real(2.0 / 3.0 + s)], vec![Parameter::real(s + 1.0)]);
    let lower = s + 1.0;
    if lower <= 0.0 && lower.fract() == 0.0 {
        return None;
    }
    let e: Expr = Term::new(Complex64::new(coeff, 0.0)).hyp(spec, ArgMap::Identity).into();
    real_cell(eval_expr(&e, Complex64::new(Z, 0.0), ctrl))
}

/// Snaps a grid point to 10 decimals and to an exact integer when it is one.
fn grid_parameter(c: f64) -> Parameter {
    let c = (c * 1e10).round() / 1e10;
    if (c - c.round()).abs() < 1e-9 {
        Parameter::Int(c.round() as i64)
    } else {
        Parameter::real(c)
    }
}

/// Columns `c, f_L, f_R1, f_R2, f_R1-f_R2` for `c` from `c_min` to `c_max`.
pub fn figure1(c_min: f64, c_max: f64, step: f64) -> Result<OutputTable> {
    if step.is_nan() || step <= 0.0 || !c_min.is_finite() || !c_max.is_finite() || c_max < c_min {
        return Err(Error::InvalidArgument(format!("empty sweep: c from {c_min} to {c_max} by {step}")));
    }
    let ctrl = EvalControl::full_precision();
    let count = ((c_max - c_min) / step + 1e-9).floor() as usize + 1;
    let rows = (0..count)
        .map(|i| {
            let c = grid_parameter(c_min + i as f64 * step);
            let cv = c.value().re;
            let f_l = f_left(c, &ctrl);
            let f_r1 = via_entry("Th1-4-regular", c, &ctrl);
            let f_r2 = match c {
                Parameter::Int(_) => via_entry("Th1-4-exceptional", c, &ctrl),
                _ => f_r2_real(cv, &ctrl),
            };
            let diff = f_r1.zip(f_r2).map(|(x, y)| x - y);
            vec![Some(cv), f_l, f_r1, f_r2, diff]
        })
        .collect();
    Ok(OutputTable { header: ["c", "f_L", "f_R1", "f_R2", "f_R1-f_R2"].map(String::from).to_vec(), rows })
}
