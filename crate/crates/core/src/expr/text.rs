//! Line-oriented text form of [`Expr`].
//!
//! ```text
//! expr   := (term "\n")*
//! term   := complex (" | " factor)*
//! factor := "powz" param | "pow1mz" param | "exp" ("+" | "-")
//!         | "pfq" p q param* ";" param* map
//! map    := "z" | "-z" | "z/(z-1)"
//! ```
//!
//! Integers are exact parameters; anything with a decimal point, exponent or
//! imaginary part is numeric. Complex values are written `re+imi` / `re-imi`.

use std::fmt;
use std::str::FromStr;

use super::{ArgMap, Expr, Factor, Term};
use crate::error::{Error, Result};
use crate::param::{format_complex, parse_complex, Parameter};
use crate::series::HypSpec;

impl fmt::Display for ArgMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArgMap::Identity => "z",
            ArgMap::Negate => "-z",
            ArgMap::Pfaff => "z/(z-1)",
        })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::PowZ(a) => write!(f, "powz {a}"),
            Factor::PowOneMinusZ(a) => write!(f, "pow1mz {a}"),
            Factor::ExpZ(s) => write!(f, "exp {}", if *s < 0 { '-' } else { '+' }),
            Factor::Hyp(spec, map) => {
                write!(f, "pfq {} {}", spec.p(), spec.q())?;
                for a in &spec.upper {
                    write!(f, " {a}")?;
                }
                f.write_str(" ;")?;
                for b in &spec.lower {
                    write!(f, " {b}")?;
                }
                write!(f, " {map}")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.coeff))?;
        for factor in &self.factors {
            write!(f, " | {factor}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

fn parse_factor(s: &str) -> Result<Factor> {
    let mut tok = s.split_whitespace();
    let bad = || Error::Parse(format!("bad factor `{s}`"));
    let head = tok.next().ok_or_else(bad)?;
    let factor = match head {
        "powz" => Factor::PowZ(tok.next().ok_or_else(bad)?.parse()?),
        "pow1mz" => Factor::PowOneMinusZ(tok.next().ok_or_else(bad)?.parse()?),
        "exp" => match tok.next() {
            Some("+") => Factor::ExpZ(1),
            Some("-") => Factor::ExpZ(-1),
            _ => return Err(bad()),
        },
        "pfq" => {
            let p: usize = tok.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let q: usize = tok.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let upper = (0..p).map(|_| tok.next().ok_or_else(bad)?.parse::<Parameter>()).collect::<Result<Vec<_>>>()?;
            if tok.next() != Some(";") {
                return Err(bad());
            }
            let lower = (0..q).map(|_| tok.next().ok_or_else(bad)?.parse::<Parameter>()).collect::<Result<Vec<_>>>()?;
            let map = match tok.next() {
                Some("z") => ArgMap::Identity,
                Some("-z") => ArgMap::Negate,
                Some("z/(z-1)") => ArgMap::Pfaff,
                _ => return Err(bad()),
            };
            Factor::Hyp(HypSpec::new(upper, lower), map)
        }
        _ => return Err(bad()),
    };
    if tok.next().is_some() {
        return Err(bad());
    }
    Ok(factor)
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(" | ");
        let coeff = parse_complex(parts.next().unwrap_or_default())?;
        let factors = parts.map(parse_factor).collect::<Result<Vec<_>>>()?;
        Ok(Term { coeff, factors })
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect::<Result<Vec<Term>>>()?;
        Ok(Expr { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn renders_the_documented_grammar() {
        let spec = HypSpec::new(vec![Parameter::Int(5), Parameter::real(0.5)], vec![Parameter::Int(1)]);
        let t = Term::new(Complex64::new(24.0, 0.0))
            .powz(Parameter::Int(0))
            .pow1mz(Parameter::complex(0.5, -1.0))
            .exp(-1)
            .hyp(spec, ArgMap::Pfaff);
        assert_eq!(t.to_string(), "24.0 | powz 0 | pow1mz 0.5-1.0i | exp - | pfq 2 1 5 0.5 ; 1 z/(z-1)");
        let empty = HypSpec::new(vec![], vec![]);
        let t = Term::new(Complex64::new(1.0, 0.0)).hyp(empty, ArgMap::Negate);
        assert_eq!(t.to_string(), "1.0 | pfq 0 0 ; -z");
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in ["1.0 | powz", "1.0 | pfq 1 1 2 3 z", "x | exp +", "1.0 | exp *", "1.0 | pfq 1 0 2 ; w"] {
            assert!(bad.parse::<Term>().is_err(), "{bad}");
        }
    }

    fn param() -> impl Strategy<Value = Parameter> {
        prop_oneof![
            (-20i64..20).prop_map(Parameter::Int),
            (-1e3f64..1e3).prop_map(Parameter::real),
            ((-5f64..5.0), (-5f64..5.0)).prop_map(|(a, b)| Parameter::complex(a, b)),
        ]
    }

    fn factor() -> impl Strategy<Value = Factor> {
        let map = prop_oneof![Just(ArgMap::Identity), Just(ArgMap::Negate), Just(ArgMap::Pfaff)];
        prop_oneof![
            param().prop_map(Factor::PowZ),
            param().prop_map(Factor::PowOneMinusZ),
            prop_oneof![Just(1i8), Just(-1i8)].prop_map(Factor::ExpZ),
            (prop::collection::vec(param(), 0..4), prop::collection::vec(param(), 0..3), map)
                .prop_map(|(a, b, m)| Factor::Hyp(HypSpec::new(a, b), m)),
        ]
    }

    fn bits(p: &Parameter) -> (bool, u64, u64) {
        match p {
            Parameter::Int(k) => (true, *k as u64, 0),
            Parameter::Num(z) => (false, z.re.to_bits(), z.im.to_bits()),
        }
    }

    fn same_factor(a: &Factor, b: &Factor) -> bool {
        match (a, b) {
            (Factor::PowZ(x), Factor::PowZ(y)) | (Factor::PowOneMinusZ(x), Factor::PowOneMinusZ(y)) => {
                bits(x) == bits(y)
            }
            (Factor::ExpZ(x), Factor::ExpZ(y)) => x == y,
            (Factor::Hyp(s, m), Factor::Hyp(t, n)) => {
                m == n
                    && s.upper.iter().map(bits).eq(t.upper.iter().map(bits))
                    && s.lower.iter().map(bits).eq(t.lower.iter().map(bits))
            }
            _ => false,
        }
    }

    proptest! {
        #[test]
        fn text_round_trip_is_exact(
            coeffs in prop::collection::vec(((-1e6f64..1e6), (-1e6f64..1e6)), 0..4),
            factors in prop::collection::vec(prop::collection::vec(factor(), 0..4), 4),
        ) {
            let e = Expr::new(
                coeffs
                    .iter()
                    .zip(&factors)
                    .map(|(&(re, im), fs)| Term { coeff: Complex64::new(re, im), factors: fs.clone() })
                    .collect(),
            );
            let back: Expr = e.to_string().parse().unwrap();
            prop_assert_eq!(back.terms.len(), e.terms.len());
            for (t, u) in e.terms.iter().zip(&back.terms) {
                prop_assert_eq!(t.coeff.re.to_bits(), u.coeff.re.to_bits());
                prop_assert_eq!(t.coeff.im.to_bits(), u.coeff.im.to_bits());
                prop_assert_eq!(t.factors.len(), u.factors.len());
                for (f, g) in t.factors.iter().zip(&u.factors) {
                    prop_assert!(same_factor(f, g), "{} vs {}", f, g);
                }
            }
        }
    }
}
