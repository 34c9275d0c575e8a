//! Geometric rate estimation: `limsup v_n^{1/n}` from finitely many `v_n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of positive values a regression needs.
pub const MIN_POINTS: usize = 4;

/// Relative gap between the even and odd fits above which the sequence is
/// treated as having parity structure.
pub const PARITY_GAP: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, n: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    #[serde(with = "crate::extf64::map")]
    pub values: BTreeMap<usize, f64>,
    /// `exp` of the least-squares slope of `log v_n` against `n`.
    pub regression_rate: f64,
    /// `max v_n^{1/n}` over the window.
    pub tail_max_rate: f64,
    pub window: (usize, usize),
    /// Root-mean-square residual of the regression in log space.
    pub residual: f64,
    pub parity: Parity,
    /// Positive values that entered the regression.
    pub used: usize,
    /// Every value in the window is zero; the rate is 0 by convention.
    pub all_zero: bool,
}

/// Last two-thirds of the indices present in `values`.
pub fn tail_window(values: &BTreeMap<usize, f64>) -> Option<(usize, usize)> {
    let keys: Vec<usize> = values.keys().copied().collect();
    let (&lo, &hi) = (keys.first()?, keys.last()?);
    Some((lo + (hi - lo) / 3, hi))
}

/// Least-squares fit of `log v_n = a + n·log ρ` over `window` (default: the
/// tail window), restricted to `parity`; zero values are skipped.
pub fn fit_rate_restricted(
    values: &BTreeMap<usize, f64>,
    window: Option<(usize, usize)>,
    parity: Parity,
) -> Result<RateFit> {
    let window =
        window.or_else(|| tail_window(values)).ok_or(Error::InsufficientData { needed: MIN_POINTS, got: 0 })?;
    let in_window: Vec<(usize, f64)> =
        values.range(window.0..=window.1).filter(|(n, _)| parity.admits(**n)).map(|(n, v)| (*n, *v)).collect();
    let points: Vec<(f64, f64)> =
        in_window.iter().filter(|(_, v)| *v > 0.0 && v.is_finite()).map(|&(n, v)| (n as f64, v.ln())).collect();
    let base = RateFit {
        values: values.clone(),
        regression_rate: 0.0,
        tail_max_rate: 0.0,
        window,
        residual: 0.0,
        parity,
        used: points.len(),
        all_zero: false,
    };
    if !in_window.is_empty() && in_window.iter().all(|(_, v)| *v == 0.0) {
        return Ok(RateFit { all_zero: true, ..base });
    }
    if points.len() < MIN_POINTS {
        return Err(Error::InsufficientData { needed: MIN_POINTS, got: points.len() });
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / k).sqrt();
    let tail_max_rate = points.iter().map(|p| (p.1 / p.0).exp()).fold(0.0, f64::max);
    Ok(RateFit { regression_rate: slope.exp(), tail_max_rate, residual, ..base })
}

/// [`fit_rate_restricted`] over all indices.
pub fn fit_rate(values: &BTreeMap<usize, f64>, window: Option<(usize, usize)>) -> Result<RateFit> {
    fit_rate_restricted(values, window, Parity::All)
}

/// Rate fit aware of even/odd structure. The even and odd subsequences are
/// fitted separately; when their rates differ by more than [`PARITY_GAP`]
/// (relative) the larger one is the limsup and is returned, otherwise the
/// fit over all indices is.
pub fn fit_rate_parity(values: &BTreeMap<usize, f64>, window: Option<(usize, usize)>) -> Result<RateFit> {
    let even = fit_rate_restricted(values, window, Parity::Even).ok();
    let odd = fit_rate_restricted(values, window, Parity::Odd).ok();
    if let (Some(e), Some(o)) = (&even, &odd) {
        let (re, ro) = (e.regression_rate, o.regression_rate);
        if (re - ro).abs() > PARITY_GAP * re.max(ro) {
            return Ok(if re >= ro { e.clone() } else { o.clone() });
        }
    }
    match fit_rate(values, window) {
        Ok(all) => Ok(all),
        // one parity may carry all the information (the other vanishing)
        Err(err) => {
            even.into_iter().chain(odd).max_by(|a, b| a.regression_rate.total_cmp(&b.regression_rate)).ok_or(err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(range: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> f64) -> BTreeMap<usize, f64> {
        range.map(|n| (n, f(n))).collect()
    }

    #[test]
    fn exact_geometric() {
        let v = seq(1..=30, |n| 3.0 * 0.4f64.powi(n as i32));
        let fit = fit_rate(&v, None).unwrap();
        assert!((fit.regression_rate - 0.4).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert_eq!(fit.window, (10, 30));
    }

    #[test]
    fn polynomial_factor_fades_with_window() {
        // n²·qⁿ: the local slope is log q + 2/n
        let q = 0.3f64;
        let v = seq(1..=400, |n| (n * n) as f64 * q.powi(n as i32));
        let near = fit_rate(&v, Some((10, 30))).unwrap().regression_rate;
        let far = fit_rate(&v, Some((300, 400))).unwrap().regression_rate;
        assert!((far - q).abs() < (near - q).abs());
        assert!((far - q).abs() < 2e-3);
    }

    #[test]
    fn zeros_are_flagged() {
        let v = seq(1..=12, |_| 0.0);
        let fit = fit_rate(&v, None).unwrap();
        assert!(fit.all_zero);
        assert_eq!(fit.regression_rate, 0.0);
    }

    #[test]
    fn too_few_points() {
        let v = seq(1..=12, |n| if n == 12 { 1.0 } else { 0.0 });
        assert!(matches!(fit_rate(&v, None), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn parity_takes_the_dominant_subsequence() {
        let v = seq(4..=40, |n| if n % 2 == 0 { 0.5f64.powi(n as i32) } else { 0.25f64.powi(n as i32) });
        let fit = fit_rate_parity(&v, None).unwrap();
        assert_eq!(fit.parity, Parity::Even);
        assert!((fit.regression_rate - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vanishing_parity_falls_back() {
        let v = seq(4..=30, |n| if n % 2 == 0 { 0.0 } else { 2.0 });
        let fit = fit_rate_parity(&v, None).unwrap();
        assert!((fit.regression_rate - 1.0).abs() < 1e-12);
    }
}
