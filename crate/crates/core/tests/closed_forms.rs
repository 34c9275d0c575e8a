//! Denominators and telescoping constants of the catalog systems against
//! independently computed references.

use std::collections::BTreeMap;

use rowpade::hermite::{compute_hermite, MultiIndex};
use rowpade::numerics::{Context, Gauss, Polynomial};
use rowpade::rows::{build_row, telescope_terms, RowSource};
use rowpade::series::catalog;
use rug::{Integer, Rational};

fn params(p: u32) -> BTreeMap<String, String> {
    [("p".to_string(), p.to_string())].into()
}

fn pair() -> MultiIndex {
    MultiIndex::new(vec![1, 1]).unwrap()
}

/// Taylor coefficients of 1/(1−z²) and 1/(1+z) + 1/(1−z/p).
fn fw_coeff(j: usize, k: usize, p: u32) -> Rational {
    if j == 0 {
        Rational::from(u32::from(k.is_multiple_of(2)))
    } else {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        Rational::from(sign) + Rational::from((1, Integer::from(Integer::u_pow_u(p, k as u32))))
    }
}

/// For m = (1,1) the two conditions "coefficient n of Q·f_j vanishes" form a
/// 2×3 system whose kernel is the cross product of its rows.
fn kernel_by_cross_product(n: usize, coeff: impl Fn(usize, usize) -> Rational) -> [Rational; 3] {
    let row = |j: usize| -> [Rational; 3] { [coeff(j, n), coeff(j, n - 1), coeff(j, n - 2)] };
    let (a, b) = (row(0), row(1));
    [
        Rational::from(&a[1] * &b[2]) - Rational::from(&a[2] * &b[1]),
        Rational::from(&a[2] * &b[0]) - Rational::from(&a[0] * &b[2]),
        Rational::from(&a[0] * &b[1]) - Rational::from(&a[1] * &b[0]),
    ]
}

fn proportional(q: &Polynomial<Gauss>, v: &[Rational; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| q.coeff(i) * Gauss::real(v[j].clone()) == q.coeff(j) * Gauss::real(v[i].clone())))
}

#[test]
fn fw_denominators_match_cross_product_kernel() {
    let ctx = Context::default();
    for p in [2u32, 3, 5] {
        let sys = catalog("5.1-fw", &params(p)).unwrap();
        for n in 3..=18 {
            let h = compute_hermite::<Gauss>(&sys, n, &pair(), &ctx).unwrap();
            let v = kernel_by_cross_product(n, |j, k| fw_coeff(j, k, p));
            assert!(proportional(&h.q, &v), "p = {p}, n = {n}: {}", h.q);
            assert_eq!(h.lambda, 0);
        }
    }
}

#[test]
fn fw_odd_closed_form_for_other_p() {
    let ctx = Context::default();
    for p in [3u32, 5] {
        let sys = catalog("5.1-fw", &params(p)).unwrap();
        for n in (5..=15).step_by(2) {
            let pn = Integer::from(Integer::u_pow_u(p, n as u32));
            let c = Rational::from((Integer::from(&pn - p * p), Integer::from(&pn - 1u32)));
            let h = compute_hermite::<Gauss>(&sys, n, &pair(), &ctx).unwrap();
            let want = Polynomial::new(vec![Gauss::real(-c), Gauss::zero(), Gauss::one()], &ctx);
            assert_eq!(h.q, want, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn telescoping_constant_for_p_three() {
    // |A_{n,2}| = λ_n·p(p²−1)/(p^{n+1}−1) on even n, with λ_n → 1
    let ctx = Context::default();
    let sys = catalog("5.1-fw", &params(3)).unwrap();
    let row = build_row::<Gauss>(RowSource::System { system: sys, mindex: pair() }, 12, 25, &ctx).unwrap();
    for t in telescope_terms(&row, 0).unwrap().iter().filter(|t| t.n % 2 == 0 && t.n >= 18) {
        let closed = 24.0 / (3f64.powi(t.n as i32 + 1) - 1.0);
        assert!((t.a_abs() / closed - 1.0).abs() < 1e-6, "n = {}", t.n);
    }
}

#[test]
fn log_component_coefficients() {
    // 1/(1−z) + log(3−z): φ_k = 1 − 1/(k·3^k) for k ≥ 1
    let sys = catalog("5.2-g", &BTreeMap::new()).unwrap();
    let f = sys.component(0);
    for k in 1..12u32 {
        let want = Rational::from(1) - Rational::from((1, Integer::from(Integer::u_pow_u(3, k)) * k));
        assert_eq!(f.coefficient(k as usize).rational, Gauss::real(want));
    }
    let c0 = f.coefficient(0);
    assert_eq!(c0.rational, Gauss::one());
    assert_eq!(c0.logs.len(), 1);
}

#[test]
fn common_denominator_vanishes_at_three() {
    // Q(3) = 0 makes Q·1/(3−z) a polynomial, so the f₂ condition holds
    let ctx = Context::default();
    let sys = catalog("5.2-f1f2", &BTreeMap::new()).unwrap();
    let row = build_row::<Gauss>(RowSource::System { system: sys, mindex: pair() }, 6, 24, &ctx).unwrap();
    let own = Polynomial::new(vec![Gauss::one(), Gauss::ratio(-1, 3)], &ctx);
    for mem in &row.members {
        assert_eq!(mem.views[1].q, own, "n = {}", mem.n);
        assert!(mem.q().eval(&Gauss::from_i64(3)).is_zero(), "n = {}", mem.n);
        assert!(!mem.q().eval(&Gauss::one()).is_zero());
    }
}
