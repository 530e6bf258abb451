//! Kummer-type rewrites of expressions, and corollary right-hand sides
//! obtained mechanically from the theorem lines.

use num_complex::Complex64;

use super::{lookup, IdentityParams};
use crate::error::{Error, Result};
use crate::expr::{ArgMap, Expr, Factor, Term};
use crate::param::Parameter;
use crate::series::HypSpec;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Rewrites every term whose hypergeometric factor satisfies `pick`; fails
/// when no term qualifies.
fn rewrite(
    e: &Expr,
    what: &str,
    f: impl Fn(&HypSpec, ArgMap) -> Option<(HypSpec, ArgMap, Vec<Factor>)>,
) -> Result<Expr> {
    let mut hit = false;
    let terms = e
        .terms
        .iter()
        .map(|t| {
            let mut out = t.clone();
            let Some(pos) = t.factors.iter().position(|x| matches!(x, Factor::Hyp(..))) else {
                return out;
            };
            let Factor::Hyp(spec, map) = &t.factors[pos] else { unreachable!() };
            if let Some((s, m, extra)) = f(spec, *map) {
                hit = true;
                out.factors[pos] = Factor::Hyp(s, m);
                out.factors.extend(extra);
            }
            out
        })
        .collect();
    if hit {
        Ok(Expr::new(terms))
    } else {
        Err(Error::NotApplicable(format!("{what}: no matching hypergeometric factor")))
    }
}

/// `1F1(a; c; z) = e^z 1F1(c-a; c; -z)`, applied in whichever direction the
/// argument map allows.
pub fn kummer1(e: &Expr) -> Result<Expr> {
    rewrite(e, "kummer1", |s, m| {
        if s.p() != 1 || s.q() != 1 {
            return None;
        }
        let (a, c) = (s.upper[0], s.lower[0]);
        let (map, sign) = match m {
            ArgMap::Identity => (ArgMap::Negate, 1),
            ArgMap::Negate => (ArgMap::Identity, -1),
            ArgMap::Pfaff => return None,
        };
        Some((HypSpec::new(vec![c - a], vec![c]), map, vec![Factor::ExpZ(sign)]))
    })
}

/// `2F1(a, b; c; z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)`.
pub fn kummer2(e: &Expr) -> Result<Expr> {
    rewrite(e, "kummer2", |s, m| {
        if s.p() != 2 || s.q() != 1 || m != ArgMap::Identity {
            return None;
        }
        let (a, b, c) = (s.upper[0], s.upper[1], s.lower[0]);
        Some((HypSpec::new(vec![c - a, c - b], vec![c]), m, vec![Factor::PowOneMinusZ(c - a - b)]))
    })
}

/// `2F1(a, b; c; z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`; the map is an
/// involution, so a Pfaff-mapped factor is sent back to the identity map.
pub fn kummer3(e: &Expr) -> Result<Expr> {
    rewrite(e, "kummer3", |s, m| {
        if s.p() != 2 || s.q() != 1 {
            return None;
        }
        let (a, b, c) = (s.upper[0], s.upper[1], s.lower[0]);
        let (map, power) = match m {
            ArgMap::Identity => (ArgMap::Pfaff, -a),
            ArgMap::Pfaff => (ArgMap::Identity, a),
            ArgMap::Negate => return None,
        };
        Some((HypSpec::new(vec![a, c - b], vec![c]), map, vec![Factor::PowOneMinusZ(power)]))
    })
}

fn apply_where_possible(e: Expr, t: fn(&Expr) -> Result<Expr>) -> Expr {
    t(&e).unwrap_or(e)
}

/// `e^{i pi alpha}`, exactly `±1` for integer `alpha`.
fn phase(alpha: Parameter) -> Complex64 {
    match alpha {
        Parameter::Int(k) if k.rem_euclid(2) == 0 => ONE,
        Parameter::Int(_) => -ONE,
        Parameter::Num(x) => (Complex64::i() * std::f64::consts::PI * x).exp(),
    }
}

/// Substitutes `w = -z` (with `z > 0`) into an expression in `w`.
fn pullback_negate(e: &Expr) -> Result<Expr> {
    let terms = e
        .terms
        .iter()
        .map(|t| {
            let mut out = Term::new(t.coeff);
            for f in &t.factors {
                out.factors.push(match f {
                    Factor::PowZ(a) => {
                        out.coeff *= phase(*a);
                        Factor::PowZ(*a)
                    }
                    Factor::ExpZ(s) => Factor::ExpZ(-s),
                    Factor::Hyp(s, ArgMap::Identity) => Factor::Hyp(s.clone(), ArgMap::Negate),
                    Factor::Hyp(s, ArgMap::Negate) => Factor::Hyp(s.clone(), ArgMap::Identity),
                    other => return Err(Error::NotApplicable(format!("negation pullback of `{other}`"))),
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(Expr::new(terms))
}

/// Substitutes `w = z/(z-1)` (with `0 < z < 1`) into an expression in `w`.
fn pullback_pfaff(e: &Expr) -> Result<Expr> {
    let terms = e
        .terms
        .iter()
        .map(|t| {
            let mut out = Term::new(t.coeff);
            for f in &t.factors {
                match f {
                    Factor::PowZ(a) => {
                        out.coeff *= phase(*a);
                        out.factors.push(Factor::PowZ(*a));
                        out.factors.push(Factor::PowOneMinusZ(-*a));
                    }
                    Factor::PowOneMinusZ(b) => out.factors.push(Factor::PowOneMinusZ(-*b)),
                    Factor::Hyp(s, ArgMap::Identity) => out.factors.push(Factor::Hyp(s.clone(), ArgMap::Pfaff)),
                    other => return Err(Error::NotApplicable(format!("Pfaff pullback of `{other}`"))),
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(Expr::new(terms))
}

#[derive(Clone, Copy)]
enum Route {
    /// Confluent: negate the argument.
    K1,
    /// Gauss: Euler transformation.
    K2,
    /// Gauss: Pfaff transformation.
    K3,
}

/// Which theorem line a corollary comes from, the spec it is applied to and
/// the power of `z` on the corollary's left-hand side.
struct Derivation {
    route: Route,
    theorem: String,
    params: IdentityParams,
    lhs_power: Parameter,
}

fn derivation(id: &str, p: &IdentityParams) -> Result<Derivation> {
    let unknown = || Error::UnknownIdentity(id.to_string());
    let (family, rest) = id.split_once('-').ok_or_else(unknown)?;
    let (number, line) = match rest.split_once('-') {
        Some((k, l)) => (k, Some(l)),
        None => (rest, None),
    };
    let n = p.n as i64;
    let (a, b, c, one) = (p.a, p.b, p.c, Parameter::Int(1));
    let suffix = |s: &str| match line {
        Some(l) => format!("{s}-{l}"),
        None => s.to_string(),
    };
    let th = |upper: Vec<Parameter>, r: Parameter| IdentityParams {
        n: p.n,
        r,
        upper,
        lower: vec![c],
        ..IdentityParams::default()
    };
    let (route, theorem, upper, power) = match (family, number) {
        ("Co1", "1") => (Route::K1, suffix("Th1-1"), vec![c - a], p.r),
        ("Co1", "2") => (Route::K1, "Th1-2".into(), vec![c - a], Parameter::Int(0)),
        ("Co1", "3") => (Route::K1, "Th1-3".into(), vec![c - a], c - a + (n - 1)),
        ("Co1", "4") => (Route::K1, suffix("Th1-4"), vec![c - a], c - 1),
        ("Co1", "5") => (Route::K1, suffix("Th1-5"), vec![one], p.r),
        ("Co2", "1") => (Route::K2, suffix("Th1-1"), vec![c - a, c - b], p.r),
        ("Co2", "2") => (Route::K3, suffix("Th1-1"), vec![a, c - b], p.r),
        ("Co2", "3") => (Route::K2, "Th1-3".into(), vec![c - a, c - b], c - a + (n - 1)),
        ("Co2", "4") => (Route::K2, "Th1-2".into(), vec![c - a, c - b], Parameter::Int(0)),
        ("Co2", "5") => (Route::K3, "Th1-2".into(), vec![a, c - b], Parameter::Int(0)),
        ("Co2", "6") => (Route::K2, suffix("Th1-4"), vec![c - a, c - b], c - 1),
        ("Co2", "7") => (Route::K3, suffix("Th1-4"), vec![a, c - b], c - 1),
        ("Co2", "8") => (Route::K2, suffix("Th1-5"), vec![one, c - a], p.r),
        ("Co2", "9") => (Route::K3, suffix("Th1-5"), vec![one, a], p.r),
        ("Co2", "10") => (Route::K3, suffix("Th1-5"), vec![one, c - a], p.r),
        _ => return Err(unknown()),
    };
    Ok(Derivation { route, theorem, params: th(upper, p.r), lhs_power: power })
}

/// The right-hand side of corollary `id` at `p`, computed by transforming the
/// matching theorem line instead of from the corollary's own formula.
pub fn derived_rhs(id: &str, p: &IdentityParams) -> Result<Expr> {
    let entry = lookup(id)?;
    if !entry.applicable(p) {
        return Err(Error::NotApplicable(format!("{id} at {}", entry.describe(p))));
    }
    let d = derivation(entry.id, p)?;
    let base = lookup(&d.theorem)?.rhs(&d.params)?;
    let sign = if p.n.is_multiple_of(2) { ONE } else { -ONE };
    Ok(match d.route {
        Route::K1 => {
            let e = pullback_negate(&base)?.scaled(sign * phase(-d.lhs_power));
            apply_where_possible(e, kummer1)
        }
        Route::K2 => apply_where_possible(base, kummer2),
        Route::K3 => {
            let e = pullback_pfaff(&base)?
                .scaled(sign * phase(-d.lhs_power))
                .times_factor(Factor::PowOneMinusZ(Parameter::Int(-(p.n as i64) - 1)));
            apply_where_possible(e, kummer3)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_expr;
    use crate::series::EvalControl;

    fn at(e: &Expr, z: f64) -> Complex64 {
        eval_expr(e, Complex64::new(z, 0.0), &EvalControl::default()).unwrap()
    }

    fn hyp(upper: Vec<Parameter>, lower: Vec<Parameter>) -> Expr {
        Term::new(ONE).hyp(HypSpec::new(upper, lower), ArgMap::Identity).into()
    }

    #[test]
    fn kummer1_preserves_value_and_undoes_itself() {
        let e = hyp(vec![Parameter::real(0.3)], vec![Parameter::complex(1.7, 0.4)]);
        let once = kummer1(&e).unwrap();
        let twice = kummer1(&once).unwrap();
        for z in [0.2, 0.5, 0.9] {
            assert!((at(&once, z) - at(&e, z)).norm() < 1e-13);
            assert!((at(&twice, z) - at(&e, z)).norm() < 1e-13);
        }
    }

    #[test]
    fn kummer2_twice_restores_parameters() {
        let e = hyp(vec![Parameter::real(0.5), Parameter::real(0.25)], vec![Parameter::real(1.75)]);
        let twice = kummer2(&kummer2(&e).unwrap()).unwrap();
        let (s, _) = twice.terms[0].hyp_factor().unwrap();
        assert!(s.upper[0].exact_eq(&Parameter::real(0.5)) && s.upper[1].exact_eq(&Parameter::real(0.25)));
        assert!((at(&twice, 0.6) - at(&e, 0.6)).norm() < 1e-13);
    }

    #[test]
    fn kummer3_round_trips_through_the_pfaff_map() {
        let e = hyp(vec![Parameter::real(0.3), Parameter::real(-0.6)], vec![Parameter::real(1.9)]);
        let once = kummer3(&e).unwrap();
        assert_eq!(once.terms[0].hyp_factor().unwrap().1, ArgMap::Pfaff);
        assert!((at(&once, 0.3) - at(&e, 0.3)).norm() < 1e-13);
        let back = kummer3(&once).unwrap();
        assert_eq!(back.terms[0].hyp_factor().unwrap().1, ArgMap::Identity);
        assert!((at(&back, 0.3) - at(&e, 0.3)).norm() < 1e-13);
    }

    #[test]
    fn transforms_refuse_mismatched_shapes() {
        let e = hyp(vec![Parameter::real(0.3)], vec![]);
        assert!(matches!(kummer1(&e), Err(Error::NotApplicable(_))));
        assert!(matches!(kummer2(&e), Err(Error::NotApplicable(_))));
        assert!(matches!(kummer3(&e), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn every_corollary_has_a_derivation() {
        for e in super::super::catalog().iter().filter(|e| e.id.starts_with("Co")) {
            let d = derivation(e.id, &IdentityParams::default()).unwrap();
            lookup(&d.theorem).unwrap();
        }
    }
}
