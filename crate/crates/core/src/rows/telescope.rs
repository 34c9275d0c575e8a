//! Consecutive differences `R_{n+1} − R_n = A·z^{n+1−λ_n−λ_{n+1}}·q/(Q_n Q_{n+1})`
//! and the radius `R*_m = 1/limsup |A_{n,m}|^{1/n}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rug::Complex;
use serde::{Deserialize, Serialize};

use super::fit::{fit_rate_parity, fit_rate_restricted, Parity};
use super::RowSequence;
use crate::error::{Error, Result};
use crate::numerics::{Mode, Polynomial, Scalar};
use crate::pade::{normalize_polynomial, Normalization};
use crate::series::SeriesError;

/// Minimum number of terms [`estimate_rstar`] accepts.
pub const MIN_TERMS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct TelescopeTerm<S: Scalar> {
    pub n: usize,
    /// `A_{n,m}` for the canonical representatives of `Q_n`, `Q_{n+1}`, `q`.
    pub a: Complex,
    /// The same constant exactly, when every normalization involved is.
    pub a_exact: Option<S>,
    /// `q_{n,m−m*}` as stored; see `q_normalization`.
    pub q: Polynomial<S>,
    pub q_normalization: Normalization,
    pub deg_q: usize,
}

impl<S: Scalar> TelescopeTerm<S> {
    pub fn a_abs(&self) -> f64 {
        crate::numerics::cabs(&self.a)
    }
}

/// The term between members `n` and `n + 1` of component `k` (zero-based).
pub fn telescope<S: Scalar>(row: &RowSequence<S>, k: usize, n: usize) -> Result<TelescopeTerm<S>> {
    let ctx = &row.ctx;
    let prec = row.precision();
    let a = &row.member(n)?.views[k];
    let b = &row.member(n + 1)?.views[k];
    let left = &a.q * &b.p.base;
    let right = &b.q * &a.p.base;
    let scale = left.max_modulus().max(right.max_modulus());
    let d = (&left - &right).shift_up(a.lambda + b.lambda);
    let zero = Polynomial::zero(ctx);
    let la = a.p.log_part.as_ref().map_or(&zero, |lp| &lp.poly);
    let lb = b.p.log_part.as_ref().map_or(&zero, |lp| &lp.poly);
    let log_diff = &(&a.q * lb) - &(&b.q * la);
    if !log_diff.is_zero() {
        let arg = a.p.log_part.as_ref().or(b.p.log_part.as_ref()).and_then(|lp| lp.terms.first());
        return Err(SeriesError::OpaqueConstant { k: 0, a: arg.map(|t| t.a.to_string()).unwrap_or_default() }.into());
    }
    for (idx, c) in d.coeffs().iter().enumerate().take(n + 1) {
        if !c.is_negligible(scale, ctx) {
            return Err(Error::TelescopeViolated { n, k: idx, value: c.modulus() });
        }
    }
    let mut e = d.shift_down(n + 1);
    if S::MODE == Mode::Float {
        // drop rounding noise at the level of the products that cancelled
        let kept: Vec<S> =
            e.coeffs().iter().map(|c| if c.is_negligible(scale, ctx) { S::zero(ctx) } else { c.clone() }).collect();
        e = Polynomial::new(kept, ctx);
    }
    let bound = row.m() - row.mstar(k);
    if e.degree().is_some_and(|dg| dg > bound) {
        return Err(Error::Degrees(format!(
            "telescoping polynomial at n = {n} has degree {:?} > m − m* = {bound}",
            e.degree()
        )));
    }
    let (ca, cb) = (a.canonical_factor(prec), b.canonical_factor(prec));
    if e.is_zero() {
        return Ok(TelescopeTerm {
            n,
            a: Complex::new(prec),
            a_exact: Some(S::zero(ctx)),
            q: Polynomial::one(ctx),
            q_normalization: Normalization::Exact,
            deg_q: 0,
        });
    }
    let red = normalize_polynomial(&e, ctx)?;
    let lead = e.leading().expect("nonzero").clone();
    let k_scale = red.q.leading().expect("nonzero").clone() / lead;
    let fe = match &red.normalization {
        Normalization::Exact => Complex::with_val(prec, 1),
        Normalization::Scaled(c) => Complex::with_val(prec, c),
    };
    let a_stored = Complex::with_val(prec, 1) / (k_scale.to_complex(prec) * fe);
    let a_true = a_stored * ca * cb;
    let all_exact = a.is_canonical() && b.is_canonical() && red.normalization == Normalization::Exact;
    Ok(TelescopeTerm {
        n,
        a: a_true,
        a_exact: all_exact.then(|| S::one(ctx) / k_scale),
        deg_q: e.degree().unwrap_or(0),
        q: red.q,
        q_normalization: red.normalization,
    })
}

/// Terms for every consecutive pair of the row.
pub fn telescope_terms<S: Scalar>(row: &RowSequence<S>, k: usize) -> Result<Vec<TelescopeTerm<S>>> {
    let (lo, hi) = row.range;
    (lo..hi).into_par_iter().map(|n| telescope(row, k, n)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    #[serde(with = "crate::extf64::map")]
    pub per_n: BTreeMap<usize, f64>,
    #[serde(with = "crate::extf64")]
    pub tail_max_rate: f64,
    #[serde(with = "crate::extf64")]
    pub regression_rate: f64,
    #[serde(with = "crate::extf64")]
    pub rstar: f64,
    /// `"regression"`, or `"all-zero"` when every tail term vanishes.
    pub estimator: String,
    pub parity: Parity,
    pub window: (usize, usize),
    pub residual: f64,
}

/// `R*` with the default tail window and the parity rule.
pub fn estimate_rstar<S: Scalar>(terms: &[TelescopeTerm<S>]) -> Result<RadiusEstimate> {
    estimate_rstar_with(terms, None, None)
}

/// `R*` over an explicit window and/or parity class.
pub fn estimate_rstar_with<S: Scalar>(
    terms: &[TelescopeTerm<S>],
    window: Option<(usize, usize)>,
    parity: Option<Parity>,
) -> Result<RadiusEstimate> {
    if terms.len() < MIN_TERMS {
        return Err(Error::InsufficientData { needed: MIN_TERMS, got: terms.len() });
    }
    let per_n: BTreeMap<usize, f64> = terms.iter().map(|t| (t.n, t.a_abs())).collect();
    let fit = match parity {
        None => fit_rate_parity(&per_n, window)?,
        Some(p) => fit_rate_restricted(&per_n, window, p)?,
    };
    let (rstar, estimator) = if fit.all_zero || fit.regression_rate == 0.0 {
        (f64::INFINITY, "all-zero")
    } else {
        (1.0 / fit.regression_rate, "regression")
    };
    Ok(RadiusEstimate {
        per_n,
        tail_max_rate: fit.tail_max_rate,
        regression_rate: fit.regression_rate,
        rstar,
        estimator: estimator.into(),
        parity: fit.parity,
        window: fit.window,
        residual: fit.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::MultiIndex;
    use crate::numerics::{Context, Gauss};
    use crate::rows::{build_row, RowSource};
    use crate::series::{catalog, PowerSeries};
    use std::collections::BTreeMap;

    fn ctx() -> Context {
        Context::default()
    }

    fn fw_row<S: Scalar>(lo: usize, hi: usize) -> RowSequence<S> {
        let params: BTreeMap<String, String> = [("p".to_string(), "2".to_string())].into();
        let sys = catalog("5.1-fw", &params).unwrap();
        build_row(RowSource::System { system: sys, mindex: MultiIndex::new(vec![1, 1]).unwrap() }, lo, hi, &ctx())
            .unwrap()
    }

    #[test]
    fn rational_row_has_vanishing_terms() {
        let c = ctx();
        let f = PowerSeries::rational(
            Polynomial::new(vec![Gauss::one()], &c),
            Polynomial::new(vec![Gauss::one(), -Gauss::one()], &c),
        )
        .unwrap();
        let row = build_row::<Gauss>(RowSource::scalar(f, 1), 1, 12, &c).unwrap();
        let terms = telescope_terms(&row, 0).unwrap();
        assert!(terms.iter().all(|t| t.a_exact == Some(Gauss::zero())));
        let est = estimate_rstar(&terms).unwrap();
        assert_eq!(est.rstar, f64::INFINITY);
        assert_eq!(est.estimator, "all-zero");
    }

    #[test]
    fn fw_even_terms_follow_closed_form() {
        // |A_{n,2}| = λ_n·p(p²−1)/(p^{n+1}−1) with λ_n → 1
        let row = fw_row::<Gauss>(10, 31);
        let terms = telescope_terms(&row, 0).unwrap();
        for t in terms.iter().filter(|t| t.n % 2 == 0 && t.n >= 20) {
            let closed = 6.0 / (2f64.powi(t.n as i32 + 1) - 1.0);
            assert!((t.a_abs() / closed - 1.0).abs() < 1e-4, "n = {}: {} vs {}", t.n, t.a_abs(), closed);
        }
        assert!(terms.iter().all(|t| t.deg_q <= 1));
    }

    #[test]
    fn float_terms_match_exact() {
        let e = telescope_terms(&fw_row::<Gauss>(10, 16), 0).unwrap();
        let x = telescope_terms(&fw_row::<Complex>(10, 16), 0).unwrap();
        for (a, b) in e.iter().zip(&x) {
            assert!((a.a_abs() - b.a_abs()).abs() <= 1e-30 * a.a_abs().max(1e-300), "n = {}", a.n);
        }
    }

    #[test]
    fn too_few_terms() {
        let terms = telescope_terms(&fw_row::<Gauss>(5, 9), 0).unwrap();
        assert!(matches!(estimate_rstar(&terms), Err(Error::InsufficientData { needed: 8, got: 4 })));
    }
}
