use hypderiv::catalog::{kummer1, kummer2, kummer3, lookup, verify_entry_with, Execution};
use hypderiv::expr::{eval_expr, ArgMap, Expr, Term};
use hypderiv::identities::{classify_r, RBranch};
use hypderiv::jet::Jet;
use hypderiv::{evaluate, pochhammer, EvalControl, HypSpec, Parameter};
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

fn cplx(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Complex parameters kept away from the nonpositive integers.
fn generic() -> impl Strategy<Value = Parameter> {
    (-3.0..3.0f64, 0.2..2.0f64, any::<bool>()).prop_map(|(re, im, s)| Parameter::complex(re, if s { im } else { -im }))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn one_term(spec: HypSpec) -> Expr {
    Term::new(Complex64::new(1.0, 0.0)).hyp(spec, ArgMap::Identity).into()
}

proptest! {
    #[test]
    fn pochhammer_shift_identities(a in cplx(6.0), k in 0i64..20, n in 0i64..20, s in 0i64..20) {
        let a = Parameter::Num(a);
        let p = |x: Parameter, m: i64| pochhammer(x, m).unwrap();
        prop_assert!(rel(p(a + k, n) * p(a, k), p(a + n, k) * p(a, n)) <= 1e-12);
        prop_assert!(rel(p(a, k + s), p(a, s) * p(a + s, k)) <= 1e-12);
    }

    #[test]
    fn negative_order_is_the_reciprocal_of_the_shifted_product(a in generic(), k in 1i64..12) {
        let back = pochhammer(a, -k).unwrap();
        let forward = pochhammer(a - k, k).unwrap();
        prop_assert!(rel(back * forward, Complex64::new(1.0, 0.0)) <= 1e-13);
    }

    #[test]
    fn evaluation_ignores_parameter_order(
        upper in prop::collection::vec(generic(), 0..4),
        lower in prop::collection::vec(generic(), 0..3),
        z in cplx(0.6),
        rot in 0usize..4,
    ) {
        prop_assume!(upper.len() <= lower.len() + 1);
        let ctrl = EvalControl::full_precision();
        let base = evaluate(&HypSpec::new(upper.clone(), lower.clone()), z, &ctrl).unwrap().value;
        let mut u = upper.clone();
        let mut l = lower.clone();
        if !u.is_empty() {
            let r = rot % u.len();
            u.rotate_left(r);
        }
        l.reverse();
        let permuted = evaluate(&HypSpec::new(u, l), z, &ctrl).unwrap().value;
        prop_assert!(rel(base, permuted) <= 1e-12, "{base} vs {permuted}");
    }

    #[test]
    fn jet_products_obey_leibniz(
        f in prop::collection::vec(cplx(2.0), 7),
        g in prop::collection::vec(cplx(2.0), 7),
        z0 in cplx(1.0),
    ) {
        let (f, g) = (Jet::from_coeffs(z0, f), Jet::from_coeffs(z0, g));
        let fg = f.checked_mul(&g).unwrap();
        for n in 0..7 {
            let mut leibniz = Complex64::new(0.0, 0.0);
            for k in 0..=n {
                leibniz += f.derivative(k).unwrap() * g.derivative(n - k).unwrap() * binomial(n, k);
            }
            let scale: f64 = (0..=n)
                .map(|k| (f.derivative(k).unwrap() * g.derivative(n - k).unwrap()).norm() * binomial(n, k))
                .sum();
            prop_assert!((fg.derivative(n).unwrap() - leibniz).norm() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn jet_powers_compose(
        tail in prop::collection::vec(cplx(0.3), 5),
        alpha in cplx(2.0),
        beta in cplx(2.0),
    ) {
        let mut coeffs = vec![Complex64::new(1.5, 0.0)];
        coeffs.extend(tail);
        let f = Jet::from_coeffs(Complex64::new(0.3, 0.0), coeffs);
        let lhs = f.pow(alpha).unwrap().pow(beta).unwrap();
        let rhs = f.pow(alpha * beta).unwrap();
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn jet_exponentials_cancel(coeffs in prop::collection::vec(cplx(1.0), 6)) {
        let f = Jet::from_coeffs(Complex64::new(0.2, 0.0), coeffs);
        let one = f.exp(1).checked_mul(&f.exp(-1)).unwrap();
        prop_assert!((one.coeffs()[0] - 1.0).norm() <= 1e-13);
        for c in &one.coeffs()[1..] {
            prop_assert!(c.norm() <= 1e-12);
        }
    }

    #[test]
    fn kummer_transforms_preserve_values(a in generic(), b in generic(), c in generic(), z in 0.05..0.45f64) {
        let ctrl = EvalControl::full_precision();
        let z = Complex64::new(z, 0.0);
        let m = one_term(HypSpec::new(vec![a], vec![c]));
        let f = one_term(HypSpec::new(vec![a, b], vec![c]));
        for (before, after) in [(&m, kummer1(&m).unwrap()), (&f, kummer2(&f).unwrap()), (&f, kummer3(&f).unwrap())] {
            let (x, y) = (eval_expr(before, z, &ctrl).unwrap(), eval_expr(&after, z, &ctrl).unwrap());
            prop_assert!(rel(x, y) <= 1e-11, "{x} vs {y}");
        }
    }

    #[test]
    fn r_branches_partition_the_parameters(k in -30i64..30, n in 1u32..10, x in -5.0..5.0f64) {
        let branch = classify_r(Parameter::Int(k), n);
        let expected = if k < 0 { RBranch::NegativeInteger } else if k < n as i64 { RBranch::Exceptional } else { RBranch::General };
        prop_assert_eq!(branch, expected);
        prop_assert_eq!(classify_r(Parameter::real(x), n), RBranch::General);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verification_does_not_depend_on_scheduling(seed in any::<u64>()) {
        let e = lookup("Co2-2-general").unwrap();
        let ctrl = EvalControl::full_precision();
        let a = verify_entry_with(e, 6, seed, 1e-8, &ctrl, Execution::Sequential).unwrap();
        let b = verify_entry_with(e, 6, seed, 1e-8, &ctrl, Execution::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
