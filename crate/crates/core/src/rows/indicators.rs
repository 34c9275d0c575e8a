//! Zero-accumulation indicators `Δ(a)`, `δ_j(a)` and `μ(a)` of a row.

use std::collections::BTreeMap;

use rug::Complex;
use serde::{Deserialize, Serialize};

use super::fit::{fit_rate_parity, tail_window, Parity};
use super::RowSequence;
use crate::numerics::{cabs, Scalar};

/// Default margin below 1 for counting `δ_j(a)` as converging.
pub const DECISION_TOL: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaEstimate {
    /// `Δ(a)` clamped to `[0, 1]`.
    pub value: f64,
    /// The estimate before clamping.
    #[serde(with = "crate::extf64")]
    pub raw: f64,
    #[serde(with = "crate::extf64")]
    pub tail_max_rate: f64,
    /// `|Q_n(a)|` for the canonical `Q_n`.
    #[serde(with = "crate::extf64::map")]
    pub per_n: BTreeMap<usize, f64>,
    pub parity: Parity,
    pub window: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorReport {
    pub a: (f64, f64),
    pub delta: DeltaEstimate,
    /// `δ_1(a) ≤ … ≤ δ_m(a)`.
    pub delta_j: Vec<f64>,
    /// Least number of zeros over the tail window.
    pub m_prime: usize,
    pub mu: usize,
    pub decision_tol: f64,
}

fn point(a: (f64, f64), prec: u32) -> Complex {
    Complex::with_val(prec, a)
}

fn window_of<S: Scalar>(row: &RowSequence<S>) -> (usize, usize) {
    let keys: BTreeMap<usize, f64> = row.ns().map(|n| (n, 0.0)).collect();
    tail_window(&keys).unwrap_or(row.range)
}

/// Rate estimate in `[0, 1]` with graceful fallbacks: regression when
/// possible, the tail max otherwise, 0 when every value vanishes.
fn rate(values: &BTreeMap<usize, f64>, window: (usize, usize)) -> (f64, f64, Parity) {
    match fit_rate_parity(values, Some(window)) {
        Ok(fit) if fit.all_zero => (0.0, 0.0, fit.parity),
        Ok(fit) => (fit.regression_rate, fit.tail_max_rate, fit.parity),
        Err(_) => {
            let tail = values
                .range(window.0..=window.1)
                .filter(|(n, v)| **n > 0 && **v > 0.0)
                .map(|(n, v)| v.powf(1.0 / *n as f64))
                .fold(0.0, f64::max);
            (tail, tail, Parity::All)
        }
    }
}

/// `Δ(a) = limsup |Q_n(a)|^{1/n}` over the common denominators.
pub fn delta_indicator<S: Scalar>(row: &RowSequence<S>, a: (f64, f64)) -> DeltaEstimate {
    let prec = row.precision();
    let z = point(a, prec);
    let per_n: BTreeMap<usize, f64> =
        row.members.iter().map(|m| (m.n, cabs(&m.canonical_q(prec).eval_complex(&z, prec)))).collect();
    let window = window_of(row);
    let (raw, tail_max_rate, parity) = rate(&per_n, window);
    DeltaEstimate { value: raw.clamp(0.0, 1.0), raw, tail_max_rate, per_n, parity, window }
}

/// `δ_j(a)` for `j = 1..=m`, with `m′` alongside.
pub fn delta_j_indicators<S: Scalar>(row: &RowSequence<S>, a: (f64, f64)) -> (Vec<f64>, usize) {
    let prec = row.precision();
    let z = point(a, prec);
    let m = row.m();
    let window = window_of(row);
    let distances: BTreeMap<usize, Vec<f64>> = row
        .members
        .iter()
        .map(|mem| {
            let mut d: Vec<f64> =
                mem.zeros().expanded().iter().map(|r| cabs(&Complex::with_val(prec, r - &z))).collect();
            d.sort_by(f64::total_cmp);
            (mem.n, d)
        })
        .collect();
    let m_prime = distances.range(window.0..=window.1).map(|(_, d)| d.len()).min().unwrap_or(0).min(m);
    let mut out = Vec::with_capacity(m);
    let mut floor = 0.0f64;
    for j in 0..m {
        if j >= m_prime {
            out.push(1.0);
            continue;
        }
        let values: BTreeMap<usize, f64> =
            distances.iter().filter_map(|(n, d)| d.get(j).map(|x| (*n, x.min(1.0)))).collect();
        let (r, _, _) = rate(&values, window);
        floor = floor.max(r.clamp(0.0, 1.0));
        out.push(floor);
    }
    (out, m_prime)
}

/// `μ(a)`: number of `δ_j(a) < 1 − tol`.
pub fn mu_indicator(report: &IndicatorReport, tol: f64) -> usize {
    report.delta_j.iter().filter(|d| **d < 1.0 - tol).count()
}

pub fn indicator_report<S: Scalar>(row: &RowSequence<S>, a: (f64, f64), decision_tol: f64) -> IndicatorReport {
    let delta = delta_indicator(row, a);
    let (delta_j, m_prime) = delta_j_indicators(row, a);
    let mut report = IndicatorReport { a, delta, delta_j, m_prime, mu: 0, decision_tol };
    report.mu = mu_indicator(&report, decision_tol);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::MultiIndex;
    use crate::numerics::{Context, Gauss};
    use crate::rows::{build_row, RowSource};
    use crate::series::catalog;

    fn row(name: &str, params: &[(&str, &str)], lo: usize, hi: usize) -> RowSequence<Gauss> {
        let params: BTreeMap<String, String> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let sys = catalog(name, &params).unwrap();
        let source = RowSource::System { system: sys, mindex: MultiIndex::new(vec![1, 1]).unwrap() };
        build_row(source, lo, hi, &Context::default()).unwrap()
    }

    #[test]
    fn fg_at_one() {
        let r = row("5.1-fg", &[], 3, 24);
        let rep = indicator_report(&r, (1.0, 0.0), DECISION_TOL);
        assert_eq!(rep.delta.per_n[&8], 0.0);
        assert!((rep.delta.per_n[&9] - 2.0).abs() < 1e-12);
        assert!(rep.delta.value > 0.9);
        assert_eq!(rep.delta_j[0], 1.0);
        assert_eq!(rep.mu, 0);
    }

    #[test]
    fn fw_at_one() {
        let r = row("5.1-fw", &[("p", "2")], 6, 30);
        let rep = indicator_report(&r, (1.0, 0.0), DECISION_TOL);
        assert!((rep.delta.value - 0.5).abs() < 0.05, "{:?}", rep.delta);
        assert!((rep.delta_j[0] - 0.5).abs() < 0.05, "{:?}", rep.delta_j);
        assert!(rep.delta_j[1] > 0.95);
        assert_eq!(rep.mu, 1);
    }

    #[test]
    fn far_point_clamps() {
        let r = row("5.1-fg", &[], 3, 20);
        let rep = indicator_report(&r, (100.0, 0.0), DECISION_TOL);
        assert_eq!(rep.delta.value, 1.0);
        assert!(rep.delta.raw >= 1.0 - 1e-9);
        assert!(rep.delta_j.iter().all(|d| *d == 1.0));
        assert_eq!(rep.mu, 0);
    }
}
