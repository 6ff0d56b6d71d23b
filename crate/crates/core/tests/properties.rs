use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use qeuler_core::poly::ZPoly;
use qeuler_core::qbasics::{q_int, q_number, q_number_base};
use qeuler_core::qeuler::{addition_sides, qeuler_closed};
use qeuler_core::series::AlternatingSeries;
use qeuler_core::symmetry::poly_symmetry_sides;
use qeuler_core::zeta::zeta_single_sum;
use qeuler_core::{ExactBase, FloatBase, QBackend, RatFunc, SeriesControl, SymmetryParams};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn poly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| ZPoly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = ZPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Random rational functions, including t-power and cyclotomic denominators.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly(), -3i64..=3, 0u32..4, -4i64..=4, 1i64..=5).prop_map(|(n, d, k, j, c0, c1)| {
        let mut f = RatFunc::fraction(&n, &d).unwrap() * RatFunc::t_power(k);
        if j > 0 {
            f = f * RatFunc::recip_one_plus_t_pow(j);
        }
        f * RatFunc::from_rational(rat(c0, c1))
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * 1f64.max(a.norm()).max(b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFunc::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap() * b.clone(), a.clone());
        } else {
            prop_assert!(a.checked_div(&b).is_err());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc(), b in ratfunc()) {
        prop_assume!(!b.is_zero());
        let round = (&a * &b).checked_div(&b).unwrap();
        prop_assert_eq!(round.canonical_string(), a.canonical_string());
        prop_assert_eq!((&a + &RatFunc::zero()).canonical_string(), a.canonical_string());
        prop_assert_eq!(round == a, true);
    }

    #[test]
    fn arithmetic_commutes_with_evaluation(a in ratfunc(), b in ratfunc()) {
        let t0 = Complex64::new(0.37, 0.0);
        prop_assert!(close((&a * &b).eval_complex(t0), a.eval_complex(t0) * b.eval_complex(t0)));
        prop_assert!(close((&a + &b).eval_complex(t0), a.eval_complex(t0) + b.eval_complex(t0)));
    }

    #[test]
    fn rebase_multiplies_brackets(p in -20i64..=20, d in 1i64..=4, a in 1u32..=5) {
        let x = rat(p, d);
        let base = ExactBase::formal(d as u32).unwrap();
        let lhs = q_number(&(&x * BigRational::from_integer(a.into())), &base).unwrap();
        let rhs = q_int(a as i64, &base).unwrap() * q_number_base(&x, &base, a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_tends_to_its_argument(x in -30i64..=30) {
        let base = ExactBase::formal(1).unwrap();
        let v = q_int(x, &base).unwrap();
        prop_assert_eq!(v.eval_rational(&rat(1, 1)).unwrap(), rat(x, 1));
    }

    #[test]
    fn backends_agree(n in 0u32..=6, r in 1u32..=3, p in -4i64..=6, d in 1i64..=3) {
        let x = rat(p, d);
        let exact = ExactBase::new(rat(1, 2), d as u32).unwrap();
        let float = FloatBase::real(0.5).unwrap();
        let e = exact.evaluate(&qeuler_closed(n, r, &x, &exact).unwrap()).unwrap();
        let f = qeuler_closed(n, r, &x, &float).unwrap();
        prop_assert!(close(e, f), "{} vs {}", e, f);
    }

    #[test]
    fn addition_is_transitive(n in 0u32..=4, r in 1u32..=2, x in 0i64..=3, y in 0i64..=3, z in 0i64..=3) {
        let base = ExactBase::formal(1).unwrap();
        let (x, y, z) = (rat(x, 1), rat(y, 1), rat(z, 1));
        let (_, first) = addition_sides(n, r, &x, &(&y + &z), &base).unwrap();
        let (_, second) = addition_sides(n, r, &(&x + &y), &z, &base).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn more_terms_never_loosen_the_tail(m1 in 1usize..80, extra in 0usize..80, sr in -3.0f64..3.0, si in -2.0f64..2.0) {
        let base = FloatBase::real(0.6).unwrap();
        let x = rat(1, 2);
        let series = AlternatingSeries::new(&base, &x, Complex64::new(sr, si), 2);
        let run = |m| series.single_sum(&SeriesControl::new(m, 0.0, false).unwrap()).unwrap().tail_bound;
        prop_assert!(run(m1 + extra) <= run(m1));
    }

    #[test]
    fn zeta_conjugate_symmetry(sr in -4.0f64..4.0, si in -3.0f64..3.0, r in 1u32..=3, q in 0.1f64..0.8) {
        let base = FloatBase::real(q).unwrap();
        let ctrl = SeriesControl::default();
        let s = Complex64::new(sr, si);
        let a = zeta_single_sum(s, r, &rat(3, 2), &base, &ctrl).unwrap().value;
        let b = zeta_single_sum(s.conj(), r, &rat(3, 2), &base, &ctrl).unwrap().value;
        prop_assert!(close(a.conj(), b));
    }

    #[test]
    fn swapping_parameters_swaps_sides(a in 0u32..3, b in 0u32..3, n in 0u32..=3, x in 0i64..=2) {
        let (a, b) = (2 * a + 1, 2 * b + 1);
        let base = ExactBase::formal(1).unwrap();
        let p = SymmetryParams::new(a, b, 1, rat(x, 1)).unwrap();
        let (l, r) = poly_symmetry_sides(&p, n, &base).unwrap();
        let (l2, r2) = poly_symmetry_sides(&p.swapped(), n, &base).unwrap();
        prop_assert_eq!(&l, &r2);
        prop_assert_eq!(&r, &l2);
    }
}

#[test]
fn float_base_powers_follow_the_rebase() {
    let base = FloatBase::new(Complex64::new(0.4, 0.3)).unwrap();
    for a in 1..4 {
        let direct = base.qpow(&rat(a as i64, 1)).unwrap();
        let rebased = base.rebase(a).qpow_int(1).unwrap();
        assert!(close(direct, rebased));
    }
}
