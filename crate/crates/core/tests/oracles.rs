//! Independent reference computations for the series and symmetry code.

use num_complex::Complex64;
use num_rational::BigRational;

use qeuler_core::qbasics::{gauss_binomial, q_number, q_pochhammer};
use qeuler_core::qeuler::{qeuler_closed, qeuler_multisum, qeuler_single_sum};
use qeuler_core::symmetry::zeta_symmetry_sides;
use qeuler_core::zeta::{zeta_multisum, zeta_single_sum};
use qeuler_core::{ExactBase, FieldElem, FloatBase, QBackend, RatFunc, SeriesControl, SymmetryParams};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

#[test]
fn q_binomial_theorem() {
    let base = FloatBase::real(0.5).unwrap();
    let z = Complex64::new(0.3, 0.1);
    for r in 1..=4 {
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 0..200 {
            sum += gauss_binomial(m, r, &base).unwrap() * z.powu(m);
        }
        let expect = Complex64::new(1.0, 0.0) / q_pochhammer(&z, &base, r).unwrap();
        assert!((sum - expect).norm() < 1e-14, "r = {r}");
    }
}

#[test]
fn gaussian_weights_do_not_reproduce_the_multisum() {
    // Collapsing the r-fold sum over M = m_1 + .. + m_r counts compositions
    // with the ordinary binomial; a q-binomial weight gives another series.
    let base = FloatBase::real(0.5).unwrap();
    let ctrl = SeriesControl::default();
    let x = rat(1, 1);
    for n in 0..3 {
        let multi = qeuler_multisum(n, 2, &x, &base, &ctrl).unwrap().value;
        let mut gauss = Complex64::new(0.0, 0.0);
        for m in 0..400u32 {
            let bracket = q_number(&(&x + rat(m as i64, 1)), &base).unwrap();
            gauss += gauss_binomial(m, 2, &base).unwrap() * Complex64::new(-0.5, 0.0).powu(m) * bracket.powu(n);
        }
        gauss *= q_number(&rat(2, 1), &base).unwrap().powu(2);
        assert!((gauss - multi).norm() > 1e-3, "n = {n}");
        assert!(close(qeuler_single_sum(n, 2, &x, &base, &ctrl).unwrap().value, multi, 1e-12));
    }
}

#[test]
fn zeta_reference_value() {
    // [2]^2 sum_m (m + 1) (-1/2)^m / [m + 1]^2 at q = 1/2, to 40 digits:
    // 1.599301297067095947986839292144586563256
    let base = FloatBase::real(0.5).unwrap();
    let v = zeta_single_sum(Complex64::new(2.0, 0.0), 2, &rat(1, 1), &base, &SeriesControl::default()).unwrap();
    assert!((v.value - Complex64::new(1.599_301_297_067_096, 0.0)).norm() < 1e-14);
    assert!(v.terms <= 200);
    assert!(v.tail_bound <= 1e-14);
}

#[test]
fn zeta_at_zero_is_one() {
    let ctrl = SeriesControl::default();
    for q in [Complex64::new(0.3, 0.0), Complex64::new(0.5, 0.2)] {
        let base = FloatBase::new(q).unwrap();
        for r in 1..=4 {
            let v = zeta_multisum(Complex64::new(0.0, 0.0), r, &rat(1, 2), &base, &ctrl).unwrap();
            assert!(close(v.value, Complex64::new(1.0, 0.0), 1e-12), "q = {q}, r = {r}");
        }
    }
    let exact = ExactBase::formal(2).unwrap();
    assert_eq!(qeuler_closed(0, 3, &rat(1, 2), &exact).unwrap(), RatFunc::one());
}

#[test]
fn single_and_multi_index_zeta_agree() {
    let ctrl = SeriesControl::default();
    let base = FloatBase::new(Complex64::new(0.45, -0.2)).unwrap();
    for r in 1..=3 {
        for s in [Complex64::new(2.0, 0.0), Complex64::new(-1.5, 0.7), Complex64::new(0.5, 3.0)] {
            let a = zeta_single_sum(s, r, &rat(2, 3), &base, &ctrl).unwrap().value;
            let b = zeta_multisum(s, r, &rat(2, 3), &base, &ctrl).unwrap().value;
            assert!(close(a, b, 1e-12), "r = {r}, s = {s}");
        }
    }
}

#[test]
fn zeta_at_negative_integers_is_the_polynomial_series() {
    let ctrl = SeriesControl::default();
    let base = FloatBase::real(0.5).unwrap();
    for n in 0..5 {
        let z = zeta_single_sum(Complex64::new(-(n as f64), 0.0), 2, &rat(1, 1), &base, &ctrl).unwrap();
        let e = qeuler_single_sum(n, 2, &rat(1, 1), &base, &ctrl).unwrap();
        assert_eq!(z.value, e.value);
    }
}

/// One side of the zeta-level symmetry summed over every `j`-tuple, with the
/// r-fold zeta series; no collapsing anywhere.
fn zeta_side_brute(a: u32, b: u32, r: u32, x: &BigRational, s: Complex64, base: &FloatBase) -> Complex64 {
    let ctrl = SeriesControl::default();
    let base_a = base.rebase(a);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut j = vec![0u32; r as usize];
    loop {
        let t: u32 = j.iter().sum();
        let y = x * BigRational::from_integer(b.into()) + rat((b * t) as i64, a as i64);
        let z = zeta_multisum(s, r, &y, &base_a, &ctrl).unwrap().value;
        sum += Complex64::new(-1.0, 0.0).powu(t) * base.qpow_int((b * t) as i64).unwrap() * z;
        match j.iter().position(|&v| v + 1 < a) {
            Some(p) => {
                j[p] += 1;
                j[..p].iter_mut().for_each(|v| *v = 0);
            }
            None => break,
        }
    }
    let two = q_number(&rat(2, 1), &base.rebase(b)).unwrap().pow_n(r);
    let scale = (s * q_number(&rat(b as i64, 1), base).unwrap().ln()).exp();
    two * scale * sum
}

#[test]
fn zeta_symmetry_against_brute_force_sides() {
    let base = FloatBase::real(0.5).unwrap();
    let ctrl = SeriesControl::default();
    let s = Complex64::new(1.5, 0.5);
    for (a, b, r) in [(3, 1, 2), (3, 5, 1)] {
        let p = SymmetryParams::new(a, b, r, rat(1, 1)).unwrap();
        let (l, rr) = zeta_symmetry_sides(&p, &s, &base, &ctrl).unwrap();
        assert!(close(l, zeta_side_brute(a, b, r, p.x(), s, &base), 1e-11));
        assert!(close(rr, zeta_side_brute(b, a, r, p.x(), s, &base), 1e-11));
        assert!(close(l, rr, 1e-9));
    }
}

#[test]
fn zeta_symmetry_with_a_one() {
    let base = FloatBase::real(0.5).unwrap();
    let p = SymmetryParams::new(1, 3, 2, rat(1, 1)).unwrap();
    let (l, r) = zeta_symmetry_sides(&p, &Complex64::new(2.0, 0.0), &base, &SeriesControl::default()).unwrap();
    assert!(close(l, r, 1e-9));
}
