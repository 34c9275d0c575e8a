//! Formal power series `f(z) = Σ φ_k z^k`.
//!
//! Every series is kept in the normal form
//!
//! ```text
//!     N(z)/D(z) + Σ_i w_i·log(a_i − z),      D(0) ≠ 0,
//! ```
//!
//! with exact complex-rational data. That covers every function class the
//! crate works with, keeps all coefficients of index `k ≥ 1` rational, and
//! lets pole and radius metadata be derived exactly from the data rather
//! than merged heuristically.

pub mod catalog;
pub mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rug::{Complex, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{gcd_reduce, roots, Context, Gauss, Mode, Polynomial, Scalar};

pub use catalog::{catalog, catalog_names, CatalogEntry};
pub use spec::{parse_document, Literal, SeriesSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series not defined at origin: denominator vanishes at z = 0")]
    NotDefinedAtOrigin,
    #[error("log(a - z) requires a != 0")]
    ZeroLogArgument,
    #[error("coefficient {k} involves the transcendental constant log({a}), which has no exact value")]
    OpaqueConstant { k: usize, a: String },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("catalog entry `{name}` needs parameter `{param}`")]
    MissingParam { name: String, param: String },
    #[error("invalid parameter `{param}`: {reason}")]
    InvalidParam { param: String, reason: String },
    #[error("malformed series spec: {0}")]
    Spec(String),
    #[error("a system needs at least one component")]
    EmptySystem,
}

/// One `w·log(a − z)` term.
#[derive(Clone, Debug, PartialEq)]
pub struct LogTerm {
    pub weight: Gauss,
    pub a: Gauss,
}

/// Pole of the closed form: location and order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnownPole {
    pub re: f64,
    pub im: f64,
    pub order: usize,
}

impl KnownPole {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn distance_to(&self, re: f64, im: f64) -> f64 {
        (self.re - re).hypot(self.im - im)
    }
}

/// Ground-truth analytic data derived from the closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceAnalytics {
    /// Poles sorted by modulus.
    pub known_poles: Vec<KnownPole>,
    /// `R_m(f)` for `m = 0 ..= #poles + 1`; `f64::INFINITY` when unbounded.
    #[serde(with = "crate::extf64::map")]
    pub known_radii: BTreeMap<usize, f64>,
    /// Radius of the nearest branch point (`∞` for rational functions).
    #[serde(with = "crate::extf64")]
    pub branch_radius: f64,
}

impl ReferenceAnalytics {
    /// Radius of the largest disk about the origin in which `f` is
    /// meromorphic with at most `m` poles.
    pub fn radius(&self, m: usize) -> f64 {
        let mut moduli: Vec<f64> = Vec::new();
        for p in &self.known_poles {
            for _ in 0..p.order {
                moduli.push(p.modulus());
            }
        }
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        moduli.get(m).copied().unwrap_or(f64::INFINITY).min(self.branch_radius)
    }

    /// Order of the pole at `(re, im)` (within `tol`), zero if none.
    pub fn pole_order_at(&self, re: f64, im: f64, tol: f64) -> usize {
        self.known_poles.iter().find(|p| p.distance_to(re, im) <= tol).map_or(0, |p| p.order)
    }
}

/// The exact pieces of `φ_k`: a rational part plus, at `k = 0` only,
/// `Σ w·log a` constants.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoefficient {
    pub rational: Gauss,
    pub logs: Vec<LogTerm>,
}

/// A coefficient in a given arithmetic mode: floating mode folds every log
/// constant into `value`; exact mode keeps `log a` (a ≠ 1) symbolic in
/// `logs` as `(a, weight)` pairs.
#[derive(Clone, Debug)]
pub struct SplitCoefficient<S: Scalar> {
    pub value: S,
    pub logs: Vec<(Gauss, S)>,
}

struct Inner {
    description: String,
    num: Polynomial<Gauss>,
    den: Polynomial<Gauss>,
    logs: Vec<LogTerm>,
    memo: Mutex<Vec<Gauss>>,
    analytics: ReferenceAnalytics,
}

/// A formal power series with lazily computed, memoized coefficients.
#[derive(Clone)]
pub struct PowerSeries(Arc<Inner>);

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({})", self.0.description)
    }
}

fn exact_ctx() -> Context {
    Context::default()
}

impl PowerSeries {
    fn build(
        num: Polynomial<Gauss>,
        den: Polynomial<Gauss>,
        mut logs: Vec<LogTerm>,
        description: String,
    ) -> Result<Self, SeriesError> {
        if den.coeff(0).is_zero() {
            return Err(SeriesError::NotDefinedAtOrigin);
        }
        let ctx = exact_ctx();
        let (num, den) = if num.is_zero() {
            (num, Polynomial::one(&ctx))
        } else {
            let (_, n, d) = gcd_reduce(&num, &den, &ctx).expect("exact gcd of nonzero input");
            // scale so that D(0) = 1
            let d0 = d.coeff(0);
            let inv = Gauss::one() / d0;
            (n.scale(&inv), d.scale(&inv))
        };
        // merge log terms with equal argument, drop cancelled ones
        let mut merged: Vec<LogTerm> = Vec::new();
        for t in logs.drain(..) {
            if t.a.is_zero() {
                return Err(SeriesError::ZeroLogArgument);
            }
            match merged.iter_mut().find(|m| m.a == t.a) {
                Some(m) => m.weight = m.weight.clone() + t.weight,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.weight.is_zero());
        let analytics = analytics_of(&den, &merged);
        Ok(PowerSeries(Arc::new(Inner {
            description,
            num,
            den,
            logs: merged,
            memo: Mutex::new(Vec::new()),
            analytics,
        })))
    }

    /// `P/Q` expanded about the origin.
    pub fn rational(num: Polynomial<Gauss>, den: Polynomial<Gauss>) -> Result<Self, SeriesError> {
        let description = format!("({num})/({den})");
        PowerSeries::build(num, den, Vec::new(), description)
    }

    /// `log(a − z) = log a − Σ_{k≥1} z^k/(k·a^k)`.
    pub fn log_shift(a: Gauss) -> Result<Self, SeriesError> {
        if a.is_zero() {
            return Err(SeriesError::ZeroLogArgument);
        }
        let ctx = exact_ctx();
        let description = format!("log({a} - z)");
        PowerSeries::build(
            Polynomial::zero(&ctx),
            Polynomial::one(&ctx),
            vec![LogTerm { weight: Gauss::one(), a }],
            description,
        )
    }

    /// Finite series with the given leading coefficients.
    pub fn from_coeffs(values: Vec<Gauss>) -> Self {
        let ctx = exact_ctx();
        let num = Polynomial::new(values, &ctx);
        let description = format!("{num}");
        PowerSeries::build(num, Polynomial::one(&ctx), Vec::new(), description).expect("denominator is 1")
    }

    /// `Σ c_i·f_i`.
    pub fn linear_combination(terms: &[(Gauss, PowerSeries)]) -> Self {
        let ctx = exact_ctx();
        let mut num = Polynomial::zero(&ctx);
        let mut den = Polynomial::one(&ctx);
        let mut logs = Vec::new();
        let mut parts = Vec::new();
        for (c, f) in terms {
            if c.is_zero() {
                continue;
            }
            let fi = &f.0;
            // num/den + c·fn/fd = (num·fd + c·fn·den)/(den·fd)
            let scaled = fi.num.scale(c);
            num = &(&num * &fi.den) + &(&scaled * &den);
            den = &den * &fi.den;
            logs.extend(fi.logs.iter().map(|t| LogTerm { weight: t.weight.clone() * c.clone(), a: t.a.clone() }));
            parts.push(if *c == Gauss::one() { fi.description.clone() } else { format!("({c})·{}", fi.description) });
        }
        let description = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        PowerSeries::build(num, den, logs, description).expect("denominators of the terms are nonzero at 0")
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        PowerSeries::linear_combination(&[(Gauss::one(), self.clone()), (Gauss::one(), other.clone())])
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        PowerSeries::linear_combination(&[(Gauss::one(), self.clone()), (-Gauss::one(), other.clone())])
    }

    pub fn scaled(&self, c: &Gauss) -> PowerSeries {
        PowerSeries::linear_combination(&[(c.clone(), self.clone())])
    }

    pub fn with_description(&self, description: impl Into<String>) -> PowerSeries {
        let inner = &self.0;
        PowerSeries(Arc::new(Inner {
            description: description.into(),
            num: inner.num.clone(),
            den: inner.den.clone(),
            logs: inner.logs.clone(),
            memo: Mutex::new(inner.memo.lock().expect("memo lock").clone()),
            analytics: inner.analytics.clone(),
        }))
    }

    pub fn description(&self) -> &str {
        &self.0.description
    }

    pub fn analytics(&self) -> &ReferenceAnalytics {
        &self.0.analytics
    }

    /// Reduced rational part `(N, D)` with `D(0) = 1`.
    pub fn rational_part(&self) -> (&Polynomial<Gauss>, &Polynomial<Gauss>) {
        (&self.0.num, &self.0.den)
    }

    pub fn log_terms(&self) -> &[LogTerm] {
        &self.0.logs
    }

    pub fn is_rational(&self) -> bool {
        self.0.logs.is_empty()
    }

    fn rational_coeff(&self, k: usize) -> Gauss {
        let inner = &self.0;
        let mut memo = inner.memo.lock().expect("memo lock");
        while memo.len() <= k {
            let j = memo.len();
            // D(0) = 1: c_j = N_j − Σ_{i≥1} D_i c_{j−i}
            let mut c = inner.num.coeff(j);
            let dd = inner.den.degree().unwrap_or(0);
            for i in 1..=dd.min(j) {
                let di = inner.den.coeff(i);
                if !di.is_zero() {
                    c = c - di * memo[j - i].clone();
                }
            }
            memo.push(c);
        }
        memo[k].clone()
    }

    /// Exact decomposition of `φ_k`.
    pub fn coefficient(&self, k: usize) -> SeriesCoefficient {
        let mut rational = self.rational_coeff(k);
        let mut logs = Vec::new();
        for t in &self.0.logs {
            if k == 0 {
                if t.a != Gauss::one() {
                    logs.push(t.clone());
                }
            } else {
                // −w/(k·a^k)
                let denom = t.a.pow(k as u32) * Gauss::from_i64(k as i64);
                rational = rational - t.weight.clone() / denom;
            }
        }
        SeriesCoefficient { rational, logs }
    }

    /// `φ_k` in mode `S`; exact mode fails on a transcendental constant.
    pub fn coeff<S: Scalar>(&self, k: usize, ctx: &Context) -> Result<S, SeriesError> {
        let split = self.split_coeff::<S>(k, ctx);
        match split.logs.first() {
            None => Ok(split.value),
            Some((a, _)) => Err(SeriesError::OpaqueConstant { k, a: a.to_string() }),
        }
    }

    /// `φ_k` with symbolic log constants kept apart in exact mode.
    pub fn split_coeff<S: Scalar>(&self, k: usize, ctx: &Context) -> SplitCoefficient<S> {
        let c = self.coefficient(k);
        let mut value = S::from_gauss(ctx, &c.rational);
        let mut logs = Vec::new();
        for t in c.logs {
            match S::MODE {
                Mode::Float => {
                    let l = S::ln_of(ctx, &t.a).expect("log of nonzero constant");
                    value = value + S::from_gauss(ctx, &t.weight) * l;
                }
                Mode::Exact => logs.push((t.a.clone(), S::from_gauss(ctx, &t.weight))),
            }
        }
        SplitCoefficient { value, logs }
    }

    /// Closed-form value `N(z)/D(z) + Σ w·(log a + log(1 − z/a))` in floating
    /// mode. The log branch matches the series inside `|z| < |a|`.
    pub fn evaluate(&self, z: &Complex, prec: u32) -> Complex {
        let inner = &self.0;
        let mut v = inner.num.eval_complex(z, prec) / inner.den.eval_complex(z, prec);
        for t in &inner.logs {
            let a = t.a.to_complex(prec);
            let ratio = Complex::with_val(prec, z / &a);
            let one_minus = Complex::with_val(prec, 1) - ratio;
            let l = Complex::with_val(prec, a.ln_ref()) + one_minus.ln();
            v += t.weight.to_complex(prec) * l;
        }
        v
    }
}

fn analytics_of(den: &Polynomial<Gauss>, logs: &[LogTerm]) -> ReferenceAnalytics {
    let ctx = exact_ctx();
    let mut known_poles: Vec<KnownPole> = match den.degree() {
        Some(d) if d > 0 => roots(den, &ctx, ctx.root_tol())
            .map(|rs| {
                rs.iter()
                    .map(|r| {
                        let (re, im) = r.to_c64();
                        KnownPole { re, im, order: r.multiplicity }
                    })
                    .collect()
            })
            .unwrap_or_default(),
        _ => Vec::new(),
    };
    known_poles.sort_by(|a, b| {
        (a.modulus(), a.im, a.re).partial_cmp(&(b.modulus(), b.im, b.re)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let branch_radius = logs.iter().map(|t| t.a.modulus()).fold(f64::INFINITY, f64::min);
    let mut analytics = ReferenceAnalytics { known_poles, known_radii: BTreeMap::new(), branch_radius };
    let total: usize = analytics.known_poles.iter().map(|p| p.order).sum();
    for m in 0..=total + 1 {
        let r = analytics.radius(m);
        analytics.known_radii.insert(m, r);
    }
    analytics
}

/// Ordered list of series approximated simultaneously.
#[derive(Clone, Debug)]
pub struct SystemOfSeries {
    components: Vec<PowerSeries>,
}

impl SystemOfSeries {
    pub fn new(components: Vec<PowerSeries>) -> Result<Self, SeriesError> {
        if components.is_empty() {
            return Err(SeriesError::EmptySystem);
        }
        Ok(SystemOfSeries { components })
    }

    pub fn single(f: PowerSeries) -> Self {
        SystemOfSeries { components: vec![f] }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[PowerSeries] {
        &self.components
    }

    /// Zero-based component access.
    pub fn component(&self, k: usize) -> &PowerSeries {
        &self.components[k]
    }

    /// `R_m` of the system: largest disk where every component is meromorphic
    /// and the union of their poles (orders taken as the maximum over
    /// components) counts at most `m`.
    pub fn radius(&self, m: usize) -> f64 {
        let branch = self.components.iter().map(|c| c.analytics().branch_radius).fold(f64::INFINITY, f64::min);
        let mut poles: Vec<KnownPole> = Vec::new();
        for c in &self.components {
            for p in &c.analytics().known_poles {
                match poles.iter_mut().find(|q| q.distance_to(p.re, p.im) < 1e-12) {
                    Some(q) => q.order = q.order.max(p.order),
                    None => poles.push(p.clone()),
                }
            }
        }
        let mut moduli: Vec<f64> = poles.iter().flat_map(|p| std::iter::repeat_n(p.modulus(), p.order)).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        moduli.get(m).copied().unwrap_or(f64::INFINITY).min(branch)
    }
}

pub(crate) fn rational_from_str(text: &str, param: &str) -> Result<Rational, SeriesError> {
    crate::numerics::parse_rational(text).map_err(|reason| SeriesError::InvalidParam { param: param.into(), reason })
}
