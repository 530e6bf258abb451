//! Scalar parameters that remember whether they are exact integers.
//!
//! Branch selection in the differentiation identities depends on whether a
//! parameter is a (small, nonpositive, ...) integer. That is decided from the
//! [`Parameter::Int`] tag only, never from a floating-point value that happens
//! to be integral.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum Parameter {
    Int(i64),
    Num(Complex64),
}

impl Parameter {
    pub fn real(x: f64) -> Self {
        Parameter::Num(Complex64::new(x, 0.0))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Parameter::Num(Complex64::new(re, im))
    }

    /// `num / den` as a numeric parameter.
    pub fn ratio(num: i64, den: i64) -> Self {
        Parameter::real(num as f64 / den as f64)
    }

    pub fn value(&self) -> Complex64 {
        match *self {
            Parameter::Int(k) => Complex64::new(k as f64, 0.0),
            Parameter::Num(z) => z,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match *self {
            Parameter::Int(k) => Some(k),
            Parameter::Num(_) => None,
        }
    }

    pub fn is_exact_int(&self) -> bool {
        matches!(self, Parameter::Int(_))
    }

    /// `Some(m)` when the parameter is exactly `-m` with `m >= 0`.
    pub fn nonpositive_int(&self) -> Option<u64> {
        match *self {
            Parameter::Int(k) if k <= 0 => Some(k.unsigned_abs()),
            _ => None,
        }
    }

    /// Equality used for cancellation: equal exact integers, or numeric values
    /// with identical bit patterns.
    pub fn exact_eq(&self, other: &Parameter) -> bool {
        match (self, other) {
            (Parameter::Int(a), Parameter::Int(b)) => a == b,
            (Parameter::Num(a), Parameter::Num(b)) => {
                a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
            }
            _ => false,
        }
    }

    /// Numeric equality within a relative tolerance; `Int(k)` and `Num(k+0i)`
    /// compare equal here.
    pub fn approx_eq(&self, other: &Parameter, rel: f64) -> bool {
        let (a, b) = (self.value(), other.value());
        (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
    }

    /// Distance from the value to the nearest integer, measured in the complex plane.
    pub fn distance_to_integer(&self) -> f64 {
        let v = self.value();
        Complex64::new(v.re - v.re.round(), v.im).norm()
    }
}

impl PartialEq for Parameter {
    /// Numeric comparison: `Int(2) == Num(2+0i)`.
    fn eq(&self, other: &Self) -> bool {
        self.value() == other.value()
    }
}

impl From<i64> for Parameter {
    fn from(k: i64) -> Self {
        Parameter::Int(k)
    }
}

impl From<i32> for Parameter {
    fn from(k: i32) -> Self {
        Parameter::Int(k as i64)
    }
}

impl From<f64> for Parameter {
    fn from(x: f64) -> Self {
        Parameter::real(x)
    }
}

impl From<Complex64> for Parameter {
    fn from(z: Complex64) -> Self {
        Parameter::Num(z)
    }
}

impl Add for Parameter {
    type Output = Parameter;

    fn add(self, rhs: Parameter) -> Parameter {
        match (self, rhs) {
            (Parameter::Int(a), Parameter::Int(b)) => Parameter::Int(a + b),
            _ => Parameter::Num(self.value() + rhs.value()),
        }
    }
}

impl Sub for Parameter {
    type Output = Parameter;

    fn sub(self, rhs: Parameter) -> Parameter {
        match (self, rhs) {
            (Parameter::Int(a), Parameter::Int(b)) => Parameter::Int(a - b),
            _ => Parameter::Num(self.value() - rhs.value()),
        }
    }
}

impl Add<i64> for Parameter {
    type Output = Parameter;

    fn add(self, rhs: i64) -> Parameter {
        self + Parameter::Int(rhs)
    }
}

impl Sub<i64> for Parameter {
    type Output = Parameter;

    fn sub(self, rhs: i64) -> Parameter {
        self - Parameter::Int(rhs)
    }
}

impl Neg for Parameter {
    type Output = Parameter;

    fn neg(self) -> Parameter {
        match self {
            Parameter::Int(k) => Parameter::Int(-k),
            Parameter::Num(z) => Parameter::Num(-z),
        }
    }
}

/// Shortest round-trip rendering; integers never print with a decimal point
/// and numeric values always carry one (or an exponent), so the tag survives
/// a round trip through text.
impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Parameter::Int(k) => write!(f, "{k}"),
            Parameter::Num(z) => f.write_str(&format_complex(z)),
        }
    }
}

impl FromStr for Parameter {
    type Err = Error;

    /// Accepts integer literals (exact), floats, rationals `p/q` and complex
    /// values written `re+imi`, `re-imi` or `imi`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty parameter".into()));
        }
        if let Ok(k) = s.parse::<i64>() {
            return Ok(Parameter::Int(k));
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            let den: f64 = den.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(Parameter::real(num / den));
        }
        parse_complex(s).map(Parameter::Num)
    }
}

/// Renders a complex number as `re`, or `re+imi` / `re-imi` when the imaginary
/// part is nonzero. Components use Rust's shortest round-trip float format.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        format!("{:?}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

/// Inverse of [`format_complex`]; also accepts a bare `imi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad number `{s}`"));
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            let im_str = &body[i..];
            let im: f64 = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                _ => im_str.parse().map_err(|_| bad())?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            let im: f64 = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse().map_err(|_| bad())?,
            };
            Ok(Complex64::new(0.0, im))
        }
    }
}
