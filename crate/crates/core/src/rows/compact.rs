//! Sup-norm errors on pole-excluded compacts, denominator coefficient-norm
//! distances and pointwise divergence of a row.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Complex;
use serde::{Deserialize, Serialize};

use super::fit::{fit_rate_parity, RateFit};
use super::RowSequence;
use crate::error::{Error, Result};
use crate::numerics::{cabs, Context, Polynomial, Scalar};

pub const DEFAULT_POINTS: usize = 512;
pub const DEFAULT_EPSILON: f64 = 1e-2;

/// Circle `|z| = r` sampled at equispaced points, with the exclusion
/// parameter `ε` of `K(ε)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactSet {
    pub radius: f64,
    pub points: usize,
    pub epsilon: f64,
}

impl CompactSet {
    pub fn circle(radius: f64, points: usize) -> Self {
        CompactSet { radius, points, epsilon: DEFAULT_EPSILON }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// All sample points before exclusion.
    pub fn samples(&self) -> Vec<(f64, f64)> {
        (0..self.points)
            .map(|j| {
                let t = TAU * j as f64 / self.points as f64;
                (self.radius * t.cos(), self.radius * t.sin())
            })
            .collect()
    }

    /// Sample points outside every disk of radius `ε/(6mn²)` about a zero of
    /// `Q_n` (any `n` of the row) and of radius `ε/(6m)` about a reference pole.
    pub fn surviving<S: Scalar>(&self, row: &RowSequence<S>) -> Vec<(f64, f64)> {
        let m = row.m().max(1) as f64;
        let mut disks: Vec<(f64, f64, f64)> = Vec::new();
        for mem in &row.members {
            let r = self.epsilon / (6.0 * m * (mem.n * mem.n).max(1) as f64);
            disks.extend(mem.zeros().iter().map(|z| {
                let (x, y) = z.to_c64();
                (x, y, r)
            }));
        }
        for f in row.source.components() {
            disks.extend(f.analytics().known_poles.iter().map(|p| (p.re, p.im, self.epsilon / (6.0 * m))));
        }
        self.samples().into_iter().filter(|(x, y)| disks.iter().all(|(a, b, r)| (x - a).hypot(y - b) > *r)).collect()
    }
}

impl fmt::Display for CompactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "circle:r={},points={}", self.radius, self.points)
    }
}

/// `circle:r=<radius>[,points=<count>][,epsilon=<ε>]`.
impl FromStr for CompactSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let body = s.strip_prefix("circle:").ok_or_else(|| format!("unknown compact `{s}` (expected circle:r=...)"))?;
        let mut radius = None;
        let mut out = CompactSet::circle(1.0, DEFAULT_POINTS);
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let bad = |_| format!("bad value for {key}: `{value}`");
            match key {
                "r" => radius = Some(value.parse::<f64>().map_err(bad)?),
                "points" => {
                    out.points = value.parse::<usize>().map_err(|_| format!("bad value for points: `{value}`"))?
                }
                "epsilon" => out.epsilon = value.parse::<f64>().map_err(bad)?,
                other => return Err(format!("unknown compact parameter `{other}`")),
            }
        }
        out.radius = radius.ok_or("circle needs r=")?;
        if out.radius.is_nan() || out.radius <= 0.0 || out.points == 0 || out.epsilon.is_nan() || out.epsilon <= 0.0 {
            return Err(format!("invalid compact `{s}`"));
        }
        Ok(out)
    }
}

fn evaluate_error<S: Scalar>(row: &RowSequence<S>, k: usize, n: usize, points: &[(f64, f64)]) -> Result<f64> {
    let prec = row.precision();
    let f = &row.source.components()[k];
    let view = &row.member(n)?.views[k];
    let mut worst = 0.0f64;
    for &p in points {
        let z = Complex::with_val(prec, p);
        let diff = Complex::with_val(prec, f.evaluate(&z, prec) - view.eval(&z, prec));
        worst = worst.max(cabs(&diff));
    }
    Ok(worst)
}

/// `max_{z ∈ K(ε)} |f_k(z) − R_{n,k}(z)|`.
pub fn sup_error<S: Scalar>(row: &RowSequence<S>, k: usize, n: usize, compact: &CompactSet) -> Result<f64> {
    let points = compact.surviving(row);
    if points.is_empty() {
        return Err(Error::CompactExcluded);
    }
    evaluate_error(row, k, n, &points)
}

/// [`sup_error`] for every `n` of the row, on a common surviving set.
pub fn sup_errors<S: Scalar>(row: &RowSequence<S>, k: usize, compact: &CompactSet) -> Result<BTreeMap<usize, f64>> {
    let points = compact.surviving(row);
    if points.is_empty() {
        return Err(Error::CompactExcluded);
    }
    let ns: Vec<usize> = row.ns().collect();
    ns.par_iter().map(|&n| Ok((n, evaluate_error(row, k, n, &points)?))).collect()
}

/// Coefficient norm of the difference: max modulus over indices.
pub fn coeff_norm_diff(target: &Polynomial<Complex>, q: &Polynomial<Complex>) -> f64 {
    target.max_diff(q)
}

/// Product normal form of a denominator with prescribed roots: `(z − η)` for
/// `|η| ≤ 1` and `(1 − z/η)` otherwise.
pub fn product_form(roots: &[Complex], ctx: &Context) -> Polynomial<Complex> {
    let prec = ctx.precision;
    let mut out = Polynomial::one(ctx);
    for r in roots {
        out = &out * &factor(r, cabs(r) <= 1.0, prec, ctx);
    }
    out
}

fn factor(zeta: &Complex, inner: bool, prec: u32, ctx: &Context) -> Polynomial<Complex> {
    if inner || cabs(zeta) == 0.0 {
        Polynomial::new(vec![Complex::with_val(prec, -zeta), Complex::with_val(prec, 1)], ctx)
    } else {
        let slope = Complex::with_val(prec, -1) / zeta;
        Polynomial::new(vec![Complex::with_val(prec, 1), slope], ctx)
    }
}

/// `Q_n` written in the normal form of `target_roots`: each zero is paired
/// with the nearest unpaired target root and gets that root's factor shape.
/// Unpaired zeros keep the shape their own modulus selects.
pub fn aligned_denominator(zeros: &[Complex], target_roots: &[Complex], ctx: &Context) -> Polynomial<Complex> {
    let prec = ctx.precision;
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, z) in zeros.iter().enumerate() {
        for (j, t) in target_roots.iter().enumerate() {
            pairs.push((cabs(&Complex::with_val(prec, z - t)), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut shape: Vec<Option<bool>> = vec![None; zeros.len()];
    let mut taken = vec![false; target_roots.len()];
    for (_, i, j) in pairs {
        if shape[i].is_none() && !taken[j] {
            shape[i] = Some(cabs(&target_roots[j]) <= 1.0);
            taken[j] = true;
        }
    }
    let mut out = Polynomial::one(ctx);
    for (z, s) in zeros.iter().zip(shape) {
        out = &out * &factor(z, s.unwrap_or(cabs(z) <= 1.0), prec, ctx);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenominatorRates {
    pub target: Vec<String>,
    pub fit: RateFit,
}

/// `‖𝒬 − Q_n‖` per `n` against the denominator with roots `target_roots`,
/// and its geometric rate.
pub fn denominator_rates<S: Scalar>(row: &RowSequence<S>, target_roots: &[Complex]) -> Result<DenominatorRates> {
    let ctx = Context::new(row.precision());
    let target = product_form(target_roots, &ctx);
    let values: BTreeMap<usize, f64> = row
        .members
        .iter()
        .map(|mem| (mem.n, coeff_norm_diff(&target, &aligned_denominator(&mem.zeros().expanded(), target_roots, &ctx))))
        .collect();
    let fit = fit_rate_parity(&values, None)?;
    Ok(DenominatorRates { target: target.render_coeffs(), fit })
}

/// `|R_{n+1,k}(z) − R_{n,k}(z)|` for consecutive members.
pub fn divergence<S: Scalar>(row: &RowSequence<S>, k: usize, z: (f64, f64)) -> Result<BTreeMap<usize, f64>> {
    let prec = row.precision();
    let z = Complex::with_val(prec, z);
    let (lo, hi) = row.range;
    (lo..hi)
        .map(|n| {
            let a = row.member(n)?.views[k].eval(&z, prec);
            let b = row.member(n + 1)?.views[k].eval(&z, prec);
            Ok((n, cabs(&Complex::with_val(prec, b - a))))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::MultiIndex;
    use crate::numerics::Gauss;
    use crate::rows::{build_row, RowSource};
    use crate::series::{catalog, PowerSeries};

    fn c(re: f64) -> Complex {
        Complex::with_val(256, re)
    }

    #[test]
    fn parse_and_display() {
        let k: CompactSet = "circle:r=0.5,points=64,epsilon=0.001".parse().unwrap();
        assert_eq!(k, CompactSet { radius: 0.5, points: 64, epsilon: 1e-3 });
        assert_eq!("circle:r=1".parse::<CompactSet>().unwrap().points, DEFAULT_POINTS);
        assert_eq!(k.to_string().parse::<CompactSet>().unwrap().radius, 0.5);
        for bad in ["disk:r=1", "circle:points=3", "circle:r=-1", "circle:r=1,q=2"] {
            assert!(bad.parse::<CompactSet>().is_err(), "{bad}");
        }
    }

    #[test]
    fn norm_examples() {
        let ctx = Context::default();
        let a = Polynomial::new(vec![c(-1.0), c(0.0), c(1.0)], &ctx);
        let b = Polynomial::new(vec![c(1.0), c(0.0), c(1.0)], &ctx);
        assert_eq!(coeff_norm_diff(&a, &a), 0.0);
        assert_eq!(coeff_norm_diff(&a, &b), 2.0);
    }

    #[test]
    fn product_form_mixes_shapes() {
        let ctx = Context::default();
        let q = product_form(&[c(1.0), c(2.0)], &ctx);
        let expect = Polynomial::new(vec![c(-1.0), c(1.5), c(-0.5)], &ctx);
        assert!(coeff_norm_diff(&q, &expect) < 1e-60);
        // a zero just outside the circle paired with the inner root 1
        let aligned = aligned_denominator(&[c(2.0), c(1.0 + 1e-9)], &[c(1.0), c(2.0)], &ctx);
        assert!(coeff_norm_diff(&aligned, &expect) < 1e-8);
        assert!(coeff_norm_diff(&product_form(&[c(1.0 + 1e-9), c(2.0)], &ctx), &expect) > 1.0);
    }

    #[test]
    fn rational_row_has_zero_error() {
        let ctx = Context::default();
        let f = PowerSeries::rational(
            Polynomial::new(vec![Gauss::one()], &ctx),
            Polynomial::new(vec![Gauss::one(), -Gauss::one()], &ctx),
        )
        .unwrap();
        let row = build_row::<Gauss>(RowSource::scalar(f, 1), 1, 6, &ctx).unwrap();
        let k = CompactSet::circle(0.5, 32);
        let errs = sup_errors(&row, 0, &k).unwrap();
        assert!(errs.values().all(|e| *e < 1e-60));
        assert!(divergence(&row, 0, (3.0, 0.0)).unwrap().values().all(|d| *d < 1e-60));
    }

    #[test]
    fn exclusion_removes_points_near_zeros() {
        let sys = catalog("5.1-fg", &BTreeMap::new()).unwrap();
        let row = build_row::<Gauss>(
            RowSource::System { system: sys, mindex: MultiIndex::new(vec![1, 1]).unwrap() },
            3,
            8,
            &Context::default(),
        )
        .unwrap();
        let k = CompactSet::circle(1.0, 512);
        let kept = k.surviving(&row);
        assert!(kept.len() < 512);
        for mem in &row.members {
            let r = k.epsilon / (6.0 * 2.0 * (mem.n * mem.n) as f64);
            for z in mem.zeros().iter() {
                let (a, b) = z.to_c64();
                assert!(kept.iter().all(|(x, y)| (x - a).hypot(y - b) > r));
            }
        }
        let tiny = CompactSet::circle(1.0, 4);
        assert!(matches!(sup_error(&row, 0, 5, &tiny), Err(Error::CompactExcluded)));
    }
}
