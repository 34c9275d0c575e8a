//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Complex;

use super::scalar::{Context, Gauss, Scalar};

/// Coefficients in ascending degree. The stored trailing coefficient is never
/// an exact zero, so the zero polynomial has no coefficients at all.
#[derive(Clone)]
pub struct Polynomial<S: Scalar> {
    coeffs: Vec<S>,
    ctx: Context,
}

impl<S: Scalar> PartialEq for Polynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.render())).finish()
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c.render())?,
                1 => write!(f, "({})z", c.render())?,
                _ => write!(f, "({})z^{k}", c.render())?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>, ctx: &Context) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs, ctx: *ctx }
    }

    pub fn zero(ctx: &Context) -> Self {
        Polynomial { coeffs: Vec::new(), ctx: *ctx }
    }

    pub fn one(ctx: &Context) -> Self {
        Polynomial::constant(S::one(ctx), ctx)
    }

    pub fn constant(c: S, ctx: &Context) -> Self {
        Polynomial::new(vec![c], ctx)
    }

    /// `c·z^k`
    pub fn monomial(c: S, k: usize, ctx: &Context) -> Self {
        let mut coeffs = vec![S::zero(ctx); k];
        coeffs.push(c);
        Polynomial::new(coeffs, ctx)
    }

    pub fn from_gauss(coeffs: &[Gauss], ctx: &Context) -> Self {
        Polynomial::new(coeffs.iter().map(|c| S::from_gauss(ctx, c)).collect(), ctx)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[S], ctx: &Context) -> Self {
        roots.iter().fold(Polynomial::one(ctx), |acc, r| &acc * &Polynomial::new(vec![-r.clone(), S::one(ctx)], ctx))
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| S::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// Order of the zero at the origin, judged by exact zeros in exact mode
    /// and by negligibility relative to the largest coefficient in floating
    /// mode. `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        let scale = self.max_modulus();
        self.coeffs.iter().position(|c| !c.is_negligible(scale, &self.ctx))
    }

    /// Drops leading coefficients that are negligible relative to the largest
    /// one. A no-op in exact mode.
    pub fn trim_negligible(&self) -> Self {
        let scale = self.max_modulus();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.is_negligible(scale, &self.ctx)) {
            coeffs.pop();
        }
        Polynomial::new(coeffs, &self.ctx)
    }

    /// Zeroes low-order coefficients below `k` that are negligible; used after
    /// floating computations where exact cancellation is only approximate.
    pub fn clean_low(&self, k: usize) -> Self {
        let scale = self.max_modulus();
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().take(k) {
            if c.is_negligible(scale, &self.ctx) {
                *c = S::zero(&self.ctx);
            }
        }
        Polynomial::new(coeffs, &self.ctx)
    }

    pub fn scale(&self, c: &S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), &self.ctx)
    }

    pub fn eval(&self, z: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(&self.ctx), |acc, c| acc * z.clone() + c.clone())
    }

    /// Horner evaluation at a floating point, at precision `prec`.
    pub fn eval_complex(&self, z: &Complex, prec: u32) -> Complex {
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c.to_complex(prec);
        }
        acc
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![S::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs, ctx: self.ctx }
    }

    /// Divides by `z^k`, discarding the lowest `k` coefficients (which the
    /// caller asserts are zero).
    pub fn shift_down(&self, k: usize) -> Self {
        Polynomial::new(self.coeffs.iter().skip(k).cloned().collect(), &self.ctx)
    }

    /// Keeps the coefficients of degree `<= deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        Polynomial::new(self.coeffs.iter().take(deg + 1).cloned().collect(), &self.ctx)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_gauss(&self.ctx, &Gauss::from_i64(k as i64)))
                .collect(),
            &self.ctx,
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = S::one(&self.ctx) / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    ///
    /// # Panics
    /// Panics when `d` is the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Polynomial::zero(&self.ctx), self.clone());
        }
        let mut quot = vec![S::zero(&self.ctx); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            // remove the eliminated coefficient exactly
            rem[k + dd] = S::zero(&self.ctx);
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot, &self.ctx), Polynomial::new(rem, &self.ctx))
    }

    /// Converts every coefficient to floating mode.
    pub fn to_float(&self, prec: u32) -> Polynomial<Complex> {
        let ctx = Context::new(prec);
        Polynomial::new(self.coeffs.iter().map(|c| c.to_complex(prec)).collect(), &ctx)
    }

    /// Rendered coefficients, ascending.
    pub fn render_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.render()).collect()
    }
}

impl Polynomial<Complex> {
    /// Largest coefficient modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                let d = self.coeff(k) - other.coeff(k);
                super::scalar::cabs(&d)
            })
            .fold(0.0, f64::max)
    }
}

impl<'a, S: Scalar> Add<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(), &self.ctx)
    }
}

impl<'a, S: Scalar> Sub<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(), &self.ctx)
    }
}

impl<'a, S: Scalar> Mul<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &'a Polynomial<S>) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let mut out = vec![S::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out, &self.ctx)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.ctx)
    }
}
