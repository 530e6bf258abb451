//! Literal left/right-hand sides for every case line of the identity catalog.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{IdentityEntry, IdentityParams, ALL_POINTS, PFAFF_POINTS};
use crate::error::{Error, Result};
use crate::expr::{ArgMap, Expr, Term};
use crate::param::Parameter;
use crate::series::{pochhammer, HypSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type P = Parameter;

fn poch(x: P, k: i64) -> Result<Complex64> {
    pochhammer(x, k).map_err(|e| Error::SingularCoefficient(e.to_string()))
}

/// `(-1)^k` for an exact integer exponent.
fn parity(k: i64) -> Complex64 {
    if k.rem_euclid(2) == 0 {
        ONE
    } else {
        -ONE
    }
}

/// `n!/(n-r)!` as the rising product `(n-r+1)_r`.
fn fact_ratio(n: i64, r: i64) -> Result<Complex64> {
    poch(P::Int(n - r + 1), r)
}

fn div(num: Complex64, den: Complex64) -> Result<Complex64> {
    if den == ZERO {
        return Err(Error::SingularCoefficient("vanishing denominator".into()));
    }
    Ok(num / den)
}

/// A validated spec; numeric lower parameters sitting exactly on a
/// nonpositive integer are rejected as well.
fn spec(upper: Vec<P>, lower: Vec<P>) -> Result<HypSpec> {
    let s = HypSpec::new(upper, lower);
    s.validate().map_err(|e| Error::SingularCoefficient(e.to_string()))?;
    for b in &s.lower {
        let v = b.value();
        if !b.is_exact_int() && v.im == 0.0 && v.re <= 0.0 && v.re.fract() == 0.0 {
            return Err(Error::SingularCoefficient(format!("numeric lower parameter {b}")));
        }
    }
    Ok(s)
}

fn int_in(p: P, lo: i64, hi: i64) -> Option<i64> {
    p.as_int().filter(|k| (lo..=hi).contains(k))
}

fn not_int_below(p: P, bound: i64) -> bool {
    !matches!(p.as_int(), Some(k) if k < bound)
}

fn first(v: &[P], what: &str) -> Result<(P, Vec<P>)> {
    v.split_first()
        .map(|(x, rest)| (*x, rest.to_vec()))
        .ok_or_else(|| Error::InvalidArgument(format!("{what} needs at least one parameter")))
}

fn shift(v: &[P], s: i64) -> Vec<P> {
    v.iter().map(|&x| x + s).collect()
}

fn cat(head: &[P], tail: &[P]) -> Vec<P> {
    head.iter().chain(tail).copied().collect()
}

fn ni(p: &IdentityParams) -> i64 {
    p.n as i64
}

fn r_int(p: &IdentityParams) -> Result<i64> {
    p.r.as_int().ok_or_else(|| Error::InvalidArgument("this case needs an exact integer r".into()))
}

fn c_int(p: &IdentityParams) -> Result<i64> {
    p.c.as_int().ok_or_else(|| Error::InvalidArgument("this case needs an exact integer c".into()))
}

fn rhs_term(coeff: Complex64) -> Term {
    Term::new(coeff)
}

// ---------------------------------------------------------------------------
// Identities on a general pFq

/// `(r-n+1)_n z^{r-n} F(r+1, a; r-n+1, b; w)`, shared by many entries.
fn first_line(r: P, n: i64, upper: &[P], lower: &[P], map: ArgMap) -> Result<Term> {
    let s = spec(cat(&[r + 1], upper), cat(&[r - n + 1], lower))?;
    Ok(rhs_term(poch(r - n + 1, n)?).powz(r - n).hyp(s, map))
}

/// `n!/(n-r)! (a)_{n-r}/(b)_{n-r} F(n+1, a+n-r; n-r+1, b+n-r; z)`.
fn th11_second(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let s = n - r;
    let num = p.upper.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let den = p.lower.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let hs = spec(cat(&[P::Int(n + 1)], &shift(&p.upper, s)), cat(&[P::Int(s + 1)], &shift(&p.lower, s)))?;
    Ok(rhs_term(fact_ratio(n, r)? * div(num, den)?).hyp(hs, ArgMap::Identity))
}

fn th1_lhs_power(p: &IdentityParams, power: P) -> Result<Expr> {
    let s = spec(p.upper.clone(), p.lower.clone())?;
    Ok(Term::new(ONE).powz(power).hyp(s, ArgMap::Identity).into())
}

fn th1_lhs(p: &IdentityParams) -> Result<Expr> {
    th1_lhs_power(p, p.r)
}

fn th11_general(p: &IdentityParams) -> Result<Expr> {
    Ok(first_line(p.r, ni(p), &p.upper, &p.lower, ArgMap::Identity)?.into())
}

fn th11_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(th11_second(p, r_int(p)?)?.into())
}

fn th11_negative(p: &IdentityParams) -> Result<Expr> {
    Ok(Expr::new(vec![first_line(p.r, ni(p), &p.upper, &p.lower, ArgMap::Identity)?, th11_second(p, r_int(p)?)?]))
}

fn th12_lhs(p: &IdentityParams) -> Result<Expr> {
    let s = spec(p.upper.clone(), p.lower.clone())?;
    Ok(Term::new(ONE).hyp(s, ArgMap::Identity).into())
}

fn th12_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let num = p.upper.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, n)?))?;
    let den = p.lower.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, n)?))?;
    let s = spec(shift(&p.upper, n), shift(&p.lower, n))?;
    Ok(Term::new(div(num, den)?).hyp(s, ArgMap::Identity).into())
}

fn th13_lhs(p: &IdentityParams) -> Result<Expr> {
    let (a1, _) = first(&p.upper, "Th1-3")?;
    th1_lhs_power(p, a1 + (ni(p) - 1))
}

fn th13_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a1, rest) = first(&p.upper, "Th1-3")?;
    let s = spec(cat(&[a1 + n], &rest), p.lower.clone())?;
    Ok(Term::new(poch(a1, n)?).powz(a1 - 1).hyp(s, ArgMap::Identity).into())
}

fn th14_lhs(p: &IdentityParams) -> Result<Expr> {
    let (b1, _) = first(&p.lower, "Th1-4")?;
    th1_lhs_power(p, b1 - 1)
}

fn th14_regular(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (b1, rest) = first(&p.lower, "Th1-4")?;
    let s = spec(p.upper.clone(), cat(&[b1 - n], &rest))?;
    Ok(Term::new(poch(b1 - n, n)?).powz(b1 - n - 1).hyp(s, ArgMap::Identity).into())
}

fn th14_exceptional(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (b1, rest) = first(&p.lower, "Th1-4")?;
    let b1 = b1.as_int().ok_or_else(|| Error::InvalidArgument("b1 must be an exact integer".into()))?;
    let s = n - b1 + 1;
    let num = p.upper.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let den = p.lower.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let hs = spec(shift(&p.upper, s), cat(&[P::Int(n - b1 + 2)], &shift(&rest, s)))?;
    Ok(Term::new(fact_ratio(n, b1 - 1)? * div(num, den)?).hyp(hs, ArgMap::Identity).into())
}

fn th15_second(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (_, hat) = first(&p.upper, "Th1-5")?;
    let s = n - r;
    let num = hat.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let den = p.lower.iter().try_fold(ONE, |acc, &x| Ok::<_, Error>(acc * poch(x, s)?))?;
    let hs = spec(cat(&[P::Int(n + 1)], &shift(&hat, s)), shift(&p.lower, s))?;
    Ok(Term::new(fact_ratio(n, n)? * div(num, den)?).hyp(hs, ArgMap::Identity))
}

fn th15_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(th15_second(p, r_int(p)?)?.into())
}

fn th15_negative(p: &IdentityParams) -> Result<Expr> {
    let (_, hat) = first(&p.upper, "Th1-5")?;
    let n = ni(p);
    let tail = first_line(p.r, n, &cat(&[P::Int(1)], &hat), &p.lower, ArgMap::Identity)?;
    Ok(Expr::new(vec![th15_second(p, r_int(p)?)?, tail]))
}

fn upper_starts_with_one(p: &IdentityParams) -> bool {
    p.upper.first().and_then(P::as_int) == Some(1)
}

// ---------------------------------------------------------------------------
// Confluent corollaries: parameters a, c

fn m11(a: P, c: P) -> Result<HypSpec> {
    spec(vec![a], vec![c])
}

fn co1_lhs_power(p: &IdentityParams, power: Option<P>) -> Result<Expr> {
    let mut t = Term::new(ONE);
    if let Some(pw) = power {
        t = t.powz(pw);
    }
    Ok(t.exp(-1).hyp(m11(p.a, p.c)?, ArgMap::Identity).into())
}

fn co1_second(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    let s = n - r;
    let coeff = parity(n - r) * fact_ratio(n, r)? * div(poch(c - a, s)?, poch(c, s)?)?;
    let hs = spec(vec![P::Int(n + 1), c - a + s], vec![P::Int(s + 1), c + s])?;
    Ok(Term::new(coeff).hyp(hs, ArgMap::Negate))
}

fn co11_general(p: &IdentityParams) -> Result<Expr> {
    Ok(first_line(p.r, ni(p), &[p.c - p.a], &[p.c], ArgMap::Negate)?.into())
}

fn co11_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co1_second(p, r_int(p)?)?.into())
}

fn co11_negative(p: &IdentityParams) -> Result<Expr> {
    Ok(Expr::new(vec![first_line(p.r, ni(p), &[p.c - p.a], &[p.c], ArgMap::Negate)?, co1_second(p, r_int(p)?)?]))
}

fn co12_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let coeff = parity(n) * div(poch(p.c - p.a, n)?, poch(p.c, n)?)?;
    Ok(Term::new(coeff).exp(-1).hyp(m11(p.a, p.c + n)?, ArgMap::Identity).into())
}

fn co13_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    Ok(Term::new(poch(c - a, n)?).powz(c - a - 1).exp(-1).hyp(m11(a - n, c)?, ArgMap::Identity).into())
}

fn co14_regular(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    Ok(Term::new(poch(c - n, n)?).powz(c - n - 1).exp(-1).hyp(m11(a - n, c - n)?, ArgMap::Identity).into())
}

fn co14_exceptional(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let ci = c_int(p)?;
    let (a, c) = (p.a, p.c);
    let s = n - ci + 1;
    let coeff = parity(1 - ci - n) * fact_ratio(n, ci - 1)? * div(poch(c - a, s)?, poch(c, s)?)?;
    Ok(Term::new(coeff).exp(-1).hyp(m11(a - ci + 1, P::Int(n - ci + 2))?, ArgMap::Identity).into())
}

fn co15_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(Term::new(ONE).powz(p.r).exp(-1).hyp(m11(p.c - 1, p.c)?, ArgMap::Identity).into())
}

fn co15_first(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let c = p.c;
    let coeff = parity(n - r) * div(fact_ratio(n, n)?, poch(c, n - r)?)?;
    Ok(Term::new(coeff).exp(-1).hyp(m11(c - r - 1, c - r + n)?, ArgMap::Identity))
}

fn co15_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co15_first(p, r_int(p)?)?.into())
}

fn co15_negative(p: &IdentityParams) -> Result<Expr> {
    let tail = first_line(p.r, ni(p), &[P::Int(1)], &[p.c], ArgMap::Negate)?;
    Ok(Expr::new(vec![co15_first(p, r_int(p)?)?, tail]))
}

// ---------------------------------------------------------------------------
// Gauss corollaries: parameters a, b, c

fn f21(a: P, b: P, c: P) -> Result<HypSpec> {
    spec(vec![a, b], vec![c])
}

fn co2_lhs(p: &IdentityParams, power: Option<P>, one_minus: Option<P>, s: HypSpec) -> Expr {
    let mut t = Term::new(ONE);
    if let Some(pw) = power {
        t = t.powz(pw);
    }
    if let Some(pw) = one_minus {
        t = t.pow1mz(pw);
    }
    let _ = p;
    t.hyp(s, ArgMap::Identity).into()
}

fn co21_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.r), Some(p.a + p.b - p.c), f21(p.a, p.b, p.c)?))
}

fn co21_first(p: &IdentityParams) -> Result<Term> {
    first_line(p.r, ni(p), &[p.c - p.a, p.c - p.b], &[p.c], ArgMap::Identity)
}

fn co21_second(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    let s = n - r;
    let coeff = fact_ratio(n, r)? * div(poch(c - a, s)? * poch(c - b, s)?, poch(c, s)?)?;
    let hs = spec(vec![P::Int(n + 1), c - a + s, c - b + s], vec![P::Int(s + 1), c + s])?;
    Ok(Term::new(coeff).hyp(hs, ArgMap::Identity))
}

fn co21_general(p: &IdentityParams) -> Result<Expr> {
    Ok(co21_first(p)?.into())
}

fn co21_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co21_second(p, r_int(p)?)?.into())
}

fn co21_negative(p: &IdentityParams) -> Result<Expr> {
    Ok(Expr::new(vec![co21_first(p)?, co21_second(p, r_int(p)?)?]))
}

fn co22_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.r), Some(p.a + ni(p) - p.r - 1), f21(p.a, p.b, p.c)?))
}

fn co22_first(p: &IdentityParams) -> Result<Term> {
    let t = first_line(p.r, ni(p), &[p.a, p.c - p.b], &[p.c], ArgMap::Pfaff)?;
    Ok(t.pow1mz(-p.r - 1))
}

fn co22_second(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    let s = n - r;
    let coeff = parity(r - n) * fact_ratio(n, r)? * div(poch(a, s)? * poch(c - b, s)?, poch(c, s)?)?;
    let hs = spec(vec![P::Int(n + 1), a + s, c - b + s], vec![P::Int(s + 1), c + s])?;
    Ok(Term::new(coeff).pow1mz(P::Int(-n - 1)).hyp(hs, ArgMap::Pfaff))
}

fn co22_general(p: &IdentityParams) -> Result<Expr> {
    Ok(co22_first(p)?.into())
}

fn co22_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co22_second(p, r_int(p)?)?.into())
}

fn co22_negative(p: &IdentityParams) -> Result<Expr> {
    Ok(Expr::new(vec![co22_first(p)?, co22_second(p, r_int(p)?)?]))
}

fn co23_lhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    Ok(co2_lhs(p, Some(p.c - p.a + (n - 1)), Some(p.a + p.b - p.c), f21(p.a, p.b, p.c)?))
}

fn co23_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    Ok(Term::new(poch(c - a, n)?).powz(c - a - 1).pow1mz(a + b - c - n).hyp(f21(a - n, b, c)?, ArgMap::Identity).into())
}

fn co24_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, None, Some(p.a + p.b - p.c), f21(p.a, p.b, p.c)?))
}

fn co24_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    let coeff = div(poch(c - a, n)? * poch(c - b, n)?, poch(c, n)?)?;
    Ok(Term::new(coeff).pow1mz(a + b - c - n).hyp(f21(a, b, c + n)?, ArgMap::Identity).into())
}

fn co25_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, None, Some(p.a + (ni(p) - 1)), f21(p.a, p.b, p.c)?))
}

fn co25_rhs(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    let coeff = parity(n) * div(poch(a, n)? * poch(c - b, n)?, poch(c, n)?)?;
    Ok(Term::new(coeff).pow1mz(a - 1).hyp(f21(a + n, b, c + n)?, ArgMap::Identity).into())
}

fn co26_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.c - 1), Some(p.a + p.b - p.c), f21(p.a, p.b, p.c)?))
}

fn co26_regular(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    Ok(Term::new(poch(c - n, n)?)
        .powz(c - n - 1)
        .pow1mz(a + b - c - n)
        .hyp(f21(a - n, b - n, c - n)?, ArgMap::Identity)
        .into())
}

fn co26_exceptional(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let ci = c_int(p)?;
    let (a, b, c) = (p.a, p.b, p.c);
    let s = n - ci + 1;
    // (c)_{n-2c+2} may have negative order.
    let coeff = div(poch(c - a, s)? * poch(c - b, s)?, poch(c, n - 2 * ci + 2)?)?;
    Ok(Term::new(coeff)
        .pow1mz(a + b - c - n)
        .hyp(f21(a - ci + 1, b - ci + 1, P::Int(n - ci + 2))?, ArgMap::Identity)
        .into())
}

fn co27_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.c - 1), Some(p.a - p.c + ni(p)), f21(p.a, p.b, p.c)?))
}

fn co27_regular(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let (a, b, c) = (p.a, p.b, p.c);
    Ok(Term::new(poch(c - n, n)?).powz(c - n - 1).pow1mz(a - c).hyp(f21(a, b - n, c - n)?, ArgMap::Identity).into())
}

fn co27_exceptional(p: &IdentityParams) -> Result<Expr> {
    let n = ni(p);
    let ci = c_int(p)?;
    let (a, b, c) = (p.a, p.b, p.c);
    let s = n - ci + 1;
    // (n+1)_{1-c} has nonpositive order for c >= 1.
    let den = poch(P::Int(n + 1), 1 - ci)? * poch(c, s)?;
    let coeff = parity(n - ci + 1) * div(poch(a, s)? * poch(c - b, s)?, den)?;
    Ok(Term::new(coeff)
        .pow1mz(a - c)
        .hyp(f21(a - ci + n + 1, b - ci + 1, P::Int(n - ci + 2))?, ArgMap::Identity)
        .into())
}

fn co28_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.r), Some(p.a - 1), f21(p.a, p.c - 1, p.c)?))
}

fn co28_first(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    let coeff = fact_ratio(n, n)? * div(poch(c - a, n - r)?, poch(c, n - r)?)?;
    Ok(Term::new(coeff).pow1mz(a - n - 1).hyp(f21(a, c - r - 1, c + n - r)?, ArgMap::Identity))
}

fn co28_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co28_first(p, r_int(p)?)?.into())
}

fn co28_negative(p: &IdentityParams) -> Result<Expr> {
    let tail = first_line(p.r, ni(p), &[P::Int(1), p.c - p.a], &[p.c], ArgMap::Identity)?;
    Ok(Expr::new(vec![co28_first(p, r_int(p)?)?, tail]))
}

fn co29_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.r), Some(p.a + ni(p) - p.r - 1), f21(p.a, p.c - 1, p.c)?))
}

fn co29_first(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    let coeff = parity(r - n) * fact_ratio(n, n)? * div(poch(a, n - r)?, poch(c, n - r)?)?;
    Ok(Term::new(coeff).pow1mz(a - r - 1).hyp(f21(a + (n - r), c - r - 1, c + n - r)?, ArgMap::Identity))
}

fn co29_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co29_first(p, r_int(p)?)?.into())
}

fn co29_negative(p: &IdentityParams) -> Result<Expr> {
    let tail = first_line(p.r, ni(p), &[P::Int(1), p.a], &[p.c], ArgMap::Pfaff)?.pow1mz(-p.r - 1);
    Ok(Expr::new(vec![co29_first(p, r_int(p)?)?, tail]))
}

fn co210_lhs(p: &IdentityParams) -> Result<Expr> {
    Ok(co2_lhs(p, Some(p.r), Some(P::Int(ni(p)) - p.r), f21(P::Int(1), p.a, p.c)?))
}

fn co210_first(p: &IdentityParams, r: i64) -> Result<Term> {
    let n = ni(p);
    let (a, c) = (p.a, p.c);
    let coeff = parity(r - n) * fact_ratio(n, n)? * div(poch(c - a, n - r)?, poch(c, n - r)?)?;
    Ok(Term::new(coeff).hyp(f21(P::Int(n + 1), a, c + n - r)?, ArgMap::Identity))
}

fn co210_exceptional(p: &IdentityParams) -> Result<Expr> {
    Ok(co210_first(p, r_int(p)?)?.into())
}

fn co210_negative(p: &IdentityParams) -> Result<Expr> {
    let tail = first_line(p.r, ni(p), &[P::Int(1), p.c - p.a], &[p.c], ArgMap::Pfaff)?.pow1mz(-p.r - 1);
    Ok(Expr::new(vec![co210_first(p, r_int(p)?)?, tail]))
}

// ---------------------------------------------------------------------------
// Parameter draws

/// Half-width of the band around integers excluded from non-integer draws.
const INTEGER_BAND: f64 = 1e-3;

fn nonint(rng: &mut ChaCha8Rng) -> P {
    loop {
        let p = P::complex(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        if p.distance_to_integer() > INTEGER_BAND {
            return p;
        }
    }
}

fn order(rng: &mut ChaCha8Rng) -> u32 {
    rng.random_range(1..=5)
}

/// `r` outside the integers below `n`: mostly complex, sometimes an integer >= n.
fn r_general(rng: &mut ChaCha8Rng, n: u32) -> P {
    if rng.random_bool(0.2) {
        P::Int(rng.random_range(n as i64..=n as i64 + 2))
    } else {
        nonint(rng)
    }
}

fn r_exceptional(rng: &mut ChaCha8Rng, n: u32, lo: i64) -> P {
    P::Int(rng.random_range(lo..=n as i64))
}

fn r_negative(rng: &mut ChaCha8Rng) -> P {
    P::Int(rng.random_range(-4..=-1))
}

const SHAPES: [(usize, usize); 7] = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (0, 1), (1, 0)];

fn vectors(rng: &mut ChaCha8Rng, min_p: usize, min_q: usize) -> (Vec<P>, Vec<P>) {
    let (p, q) = loop {
        let s = SHAPES[rng.random_range(0..SHAPES.len())];
        if s.0 >= min_p && s.1 >= min_q {
            break s;
        }
    };
    let upper = (0..p).map(|_| nonint(rng)).collect();
    let lower = (0..q).map(|_| nonint(rng)).collect();
    (upper, lower)
}

fn th1_draw(rng: &mut ChaCha8Rng, r: fn(&mut ChaCha8Rng, u32) -> P) -> IdentityParams {
    let n = order(rng);
    let (upper, lower) = vectors(rng, 0, 0);
    IdentityParams { n, r: r(rng, n), upper, lower, ..IdentityParams::default() }
}

fn th15_draw(rng: &mut ChaCha8Rng, r: fn(&mut ChaCha8Rng, u32) -> P) -> IdentityParams {
    let n = order(rng);
    let (mut upper, lower) = vectors(rng, 1, 0);
    upper[0] = P::Int(1);
    IdentityParams { n, r: r(rng, n), upper, lower, ..IdentityParams::default() }
}

fn scalar_draw(rng: &mut ChaCha8Rng, r: fn(&mut ChaCha8Rng, u32) -> P) -> IdentityParams {
    let n = order(rng);
    let (a, b, c) = (nonint(rng), nonint(rng), nonint(rng));
    IdentityParams { n, r: r(rng, n), a, b, c, ..IdentityParams::default() }
}

fn c_exceptional_draw(rng: &mut ChaCha8Rng) -> IdentityParams {
    let mut p = scalar_draw(rng, |_, _| P::Int(0));
    p.c = P::Int(rng.random_range(1..=p.n as i64 + 1));
    p.r = p.c - 1;
    p
}

fn c_regular_draw(rng: &mut ChaCha8Rng) -> IdentityParams {
    let mut p = scalar_draw(rng, |_, _| P::Int(0));
    if rng.random_bool(0.2) {
        p.c = P::Int(rng.random_range(p.n as i64 + 1..=p.n as i64 + 3));
    }
    p.r = p.c - 1;
    p
}

// ---------------------------------------------------------------------------
// The catalog

fn r_is_general(p: &IdentityParams) -> bool {
    not_int_below(p.r, ni(p))
}

fn r_in_0_n(p: &IdentityParams) -> bool {
    int_in(p.r, 0, ni(p)).is_some()
}

fn r_in_1_n(p: &IdentityParams) -> bool {
    int_in(p.r, 1, ni(p)).is_some()
}

fn r_negative_int(p: &IdentityParams) -> bool {
    matches!(p.r.as_int(), Some(k) if k < 0)
}

fn c_in_1_n1(p: &IdentityParams) -> bool {
    int_in(p.c, 1, ni(p) + 1).is_some()
}

fn c_regular(p: &IdentityParams) -> bool {
    not_int_below(p.c, ni(p) + 1)
}

const TH1: &[&str] = &["n", "r", "upper", "lower"];
const TH1_NO_R: &[&str] = &["n", "upper", "lower"];
const CO1: &[&str] = &["n", "r", "a", "c"];
const CO1_NO_R: &[&str] = &["n", "a", "c"];
const CO2: &[&str] = &["n", "r", "a", "b", "c"];
const CO2_NO_R: &[&str] = &["n", "a", "b", "c"];

macro_rules! entry {
    ($id:expr, $schema:expr, $points:expr, $case:expr, $lhs:expr, $rhs:expr, $draw:expr) => {
        IdentityEntry {
            id: $id,
            params_schema: $schema,
            z_points: $points,
            case: $case,
            lhs_builder: $lhs,
            rhs_builder: $rhs,
            sampler: $draw,
        }
    };
}

pub(super) fn all() -> Vec<IdentityEntry> {
    vec![
        entry!("Th1-1-general", TH1, ALL_POINTS, r_is_general, th1_lhs, th11_general, |g| th1_draw(g, r_general)),
        entry!("Th1-1-exceptional", TH1, ALL_POINTS, r_in_0_n, th1_lhs, th11_exceptional, |g| th1_draw(g, |g, n| {
            r_exceptional(g, n, 0)
        })),
        entry!("Th1-1-negative", TH1, ALL_POINTS, r_negative_int, th1_lhs, th11_negative, |g| th1_draw(g, |g, _| {
            r_negative(g)
        })),
        entry!("Th1-2", TH1_NO_R, ALL_POINTS, |_| true, th12_lhs, th12_rhs, |g| th1_draw(g, |_, _| P::Int(0))),
        entry!("Th1-3", TH1_NO_R, ALL_POINTS, |p| !p.upper.is_empty(), th13_lhs, th13_rhs, |g| {
            let n = order(g);
            let (mut upper, lower) = vectors(g, 1, 0);
            if g.random_bool(0.3) {
                upper[0] = P::Int(g.random_range(-5..=2));
            }
            IdentityParams { n, upper, lower, ..IdentityParams::default() }
        }),
        entry!(
            "Th1-4-regular",
            TH1_NO_R,
            ALL_POINTS,
            |p| p.lower.first().is_some_and(|&b| not_int_below(b, ni(p) + 1)),
            th14_lhs,
            th14_regular,
            |g| {
                let n = order(g);
                let (upper, mut lower) = vectors(g, 0, 1);
                if g.random_bool(0.25) {
                    lower[0] = P::Int(g.random_range(n as i64 + 1..=n as i64 + 3));
                }
                IdentityParams { n, upper, lower, ..IdentityParams::default() }
            }
        ),
        entry!(
            "Th1-4-exceptional",
            TH1_NO_R,
            ALL_POINTS,
            |p| p.lower.first().is_some_and(|&b| int_in(b, 1, ni(p) + 1).is_some()),
            th14_lhs,
            th14_exceptional,
            |g| {
                let n = order(g);
                let (upper, mut lower) = vectors(g, 0, 1);
                lower[0] = P::Int(g.random_range(1..=n as i64 + 1));
                IdentityParams { n, upper, lower, ..IdentityParams::default() }
            }
        ),
        entry!(
            "Th1-5-exceptional",
            TH1,
            ALL_POINTS,
            |p| upper_starts_with_one(p) && r_in_0_n(p),
            th1_lhs,
            th15_exceptional,
            |g| th15_draw(g, |g, n| r_exceptional(g, n, 0))
        ),
        entry!(
            "Th1-5-negative",
            TH1,
            ALL_POINTS,
            |p| upper_starts_with_one(p) && r_negative_int(p),
            th1_lhs,
            th15_negative,
            |g| th15_draw(g, |g, _| r_negative(g))
        ),
        entry!("Co1-1-general", CO1, ALL_POINTS, r_is_general, |p| co1_lhs_power(p, Some(p.r)), co11_general, |g| {
            scalar_draw(g, r_general)
        }),
        entry!(
            "Co1-1-exceptional",
            CO1,
            ALL_POINTS,
            r_in_0_n,
            |p| co1_lhs_power(p, Some(p.r)),
            co11_exceptional,
            |g| { scalar_draw(g, |g, n| r_exceptional(g, n, 0)) }
        ),
        entry!(
            "Co1-1-negative",
            CO1,
            ALL_POINTS,
            r_negative_int,
            |p| co1_lhs_power(p, Some(p.r)),
            co11_negative,
            |g| { scalar_draw(g, |g, _| r_negative(g)) }
        ),
        entry!("Co1-2", CO1_NO_R, ALL_POINTS, |_| true, |p| co1_lhs_power(p, None), co12_rhs, |g| scalar_draw(
            g,
            |_, _| P::Int(0)
        )),
        entry!(
            "Co1-3",
            CO1_NO_R,
            ALL_POINTS,
            |_| true,
            |p| co1_lhs_power(p, Some(p.c - p.a + (ni(p) - 1))),
            co13_rhs,
            |g| scalar_draw(g, |_, _| P::Int(0))
        ),
        entry!(
            "Co1-4-regular",
            CO1_NO_R,
            ALL_POINTS,
            c_regular,
            |p| co1_lhs_power(p, Some(p.c - 1)),
            co14_regular,
            c_regular_draw
        ),
        entry!(
            "Co1-4-exceptional",
            CO1_NO_R,
            ALL_POINTS,
            c_in_1_n1,
            |p| co1_lhs_power(p, Some(p.c - 1)),
            co14_exceptional,
            c_exceptional_draw
        ),
        entry!("Co1-5-exceptional", CO1, ALL_POINTS, r_in_1_n, co15_lhs, co15_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 1)
        )),
        entry!("Co1-5-negative", CO1, ALL_POINTS, r_negative_int, co15_lhs, co15_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
        entry!("Co2-1-general", CO2, ALL_POINTS, r_is_general, co21_lhs, co21_general, |g| scalar_draw(g, r_general)),
        entry!("Co2-1-exceptional", CO2, ALL_POINTS, r_in_0_n, co21_lhs, co21_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 0)
        )),
        entry!("Co2-1-negative", CO2, ALL_POINTS, r_negative_int, co21_lhs, co21_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
        entry!("Co2-2-general", CO2, PFAFF_POINTS, r_is_general, co22_lhs, co22_general, |g| scalar_draw(g, r_general)),
        entry!("Co2-2-exceptional", CO2, PFAFF_POINTS, r_in_0_n, co22_lhs, co22_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 0)
        )),
        entry!("Co2-2-negative", CO2, PFAFF_POINTS, r_negative_int, co22_lhs, co22_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
        entry!("Co2-3", CO2_NO_R, ALL_POINTS, |_| true, co23_lhs, co23_rhs, |g| scalar_draw(g, |_, _| P::Int(0))),
        entry!("Co2-4", CO2_NO_R, ALL_POINTS, |_| true, co24_lhs, co24_rhs, |g| scalar_draw(g, |_, _| P::Int(0))),
        entry!("Co2-5", CO2_NO_R, ALL_POINTS, |_| true, co25_lhs, co25_rhs, |g| scalar_draw(g, |_, _| P::Int(0))),
        entry!("Co2-6-regular", CO2_NO_R, ALL_POINTS, c_regular, co26_lhs, co26_regular, c_regular_draw),
        entry!("Co2-6-exceptional", CO2_NO_R, ALL_POINTS, c_in_1_n1, co26_lhs, co26_exceptional, c_exceptional_draw),
        entry!("Co2-7-regular", CO2_NO_R, ALL_POINTS, c_regular, co27_lhs, co27_regular, c_regular_draw),
        entry!("Co2-7-exceptional", CO2_NO_R, ALL_POINTS, c_in_1_n1, co27_lhs, co27_exceptional, c_exceptional_draw),
        entry!("Co2-8-exceptional", CO2, ALL_POINTS, r_in_1_n, co28_lhs, co28_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 1)
        )),
        entry!("Co2-8-negative", CO2, ALL_POINTS, r_negative_int, co28_lhs, co28_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
        entry!("Co2-9-exceptional", CO2, ALL_POINTS, r_in_1_n, co29_lhs, co29_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 1)
        )),
        entry!("Co2-9-negative", CO2, PFAFF_POINTS, r_negative_int, co29_lhs, co29_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
        entry!("Co2-10-exceptional", CO2, ALL_POINTS, r_in_1_n, co210_lhs, co210_exceptional, |g| scalar_draw(
            g,
            |g, n| r_exceptional(g, n, 1)
        )),
        entry!("Co2-10-negative", CO2, PFAFF_POINTS, r_negative_int, co210_lhs, co210_negative, |g| scalar_draw(
            g,
            |g, _| r_negative(g)
        )),
    ]
}
