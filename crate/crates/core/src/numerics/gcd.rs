//! Common factors of two polynomials.

use rug::Complex;

use super::poly::Polynomial;
use super::roots::roots;
use super::scalar::{cabs, Context, Mode, Scalar};
use super::NumericsError;

/// Monic gcd by the Euclidean remainder sequence. Only meaningful in exact
/// mode; floating callers go through [`gcd_reduce`].
pub fn gcd_exact<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> Polynomial<S> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    x.monic()
}

/// `(g, a/g, b/g)` with `g` the monic greatest common divisor.
///
/// Exact mode uses [`gcd_exact`] and exact quotients. Floating mode pairs the
/// roots of `a` and `b` that lie closer than the cluster radius, rebuilds `g`
/// from the pair midpoints and divides synthetically; a division remainder
/// above tolerance is reported as [`NumericsError::UncertainCancellation`].
pub fn gcd_reduce<S: Scalar>(
    a: &Polynomial<S>,
    b: &Polynomial<S>,
    ctx: &Context,
) -> Result<(Polynomial<S>, Polynomial<S>, Polynomial<S>), NumericsError> {
    if a.is_zero() && b.is_zero() {
        return Err(NumericsError::ZeroPolynomial);
    }
    match S::MODE {
        Mode::Exact => {
            let g = gcd_exact(a, b);
            let qa = a.div_rem(&g).0;
            let qb = b.div_rem(&g).0;
            Ok((g, qa, qb))
        }
        Mode::Float => {
            let g = common_factor_float(&[a, b], ctx)?;
            let qa = divide_checked(a, &g, ctx)?;
            let qb = divide_checked(b, &g, ctx)?;
            Ok((g, qa, qb))
        }
    }
}

/// Monic common factor of every polynomial in `polys` (exact gcd in exact
/// mode, common root clustering in floating mode).
pub fn common_factor<S: Scalar>(polys: &[&Polynomial<S>], ctx: &Context) -> Result<Polynomial<S>, NumericsError> {
    match S::MODE {
        Mode::Exact => {
            let mut g = Polynomial::zero(ctx);
            for p in polys {
                g = gcd_exact(&g, p);
            }
            Ok(g)
        }
        Mode::Float => common_factor_float(polys, ctx),
    }
}

fn common_factor_float<S: Scalar>(polys: &[&Polynomial<S>], ctx: &Context) -> Result<Polynomial<S>, NumericsError> {
    let prec = ctx.precision;
    let nonzero: Vec<&Polynomial<S>> = polys.iter().copied().filter(|p| !p.trim_negligible().is_zero()).collect();
    let Some((first, others)) = nonzero.split_first() else {
        return Err(NumericsError::ZeroPolynomial);
    };
    if others.is_empty() {
        return Ok(first.trim_negligible().monic());
    }
    if nonzero.iter().any(|p| p.trim_negligible().degree() == Some(0)) {
        return Ok(Polynomial::one(ctx));
    }
    let radius = ctx.cluster_radius();
    // candidate roots come from the first polynomial; each must be matched in
    // every other one
    let base = roots(*first, ctx, ctx.root_tol())?;
    let mut pools: Vec<Vec<(Complex, usize)>> = Vec::new();
    for p in others {
        let rs = roots(*p, ctx, ctx.root_tol())?;
        pools.push(rs.roots.into_iter().map(|r| (r.value, r.multiplicity)).collect());
    }
    let mut common: Vec<S> = Vec::new();
    for root in base.iter() {
        let mut mult = root.multiplicity;
        let mut center = root.value.clone();
        let mut hits = 1u32;
        let mut matched: Vec<usize> = Vec::with_capacity(pools.len());
        for pool in &pools {
            let hit = pool
                .iter()
                .enumerate()
                .filter(|(_, (z, k))| *k > 0 && cabs(&Complex::with_val(prec, z - &root.value)) < radius)
                .min_by(|x, y| {
                    let dx = cabs(&Complex::with_val(prec, &x.1 .0 - &root.value));
                    let dy = cabs(&Complex::with_val(prec, &y.1 .0 - &root.value));
                    dx.partial_cmp(&dy).unwrap_or(std::cmp::Ordering::Equal)
                });
            match hit {
                Some((idx, (z, k))) => {
                    mult = mult.min(*k);
                    center += z;
                    hits += 1;
                    matched.push(idx);
                }
                None => {
                    mult = 0;
                    break;
                }
            }
        }
        if mult == 0 {
            continue;
        }
        for (pool, idx) in pools.iter_mut().zip(matched) {
            pool[idx].1 -= mult;
        }
        let center = center / hits;
        if !nonzero.iter().all(|p| vanishes_at(p, &center, ctx)) {
            continue;
        }
        for _ in 0..mult {
            common.push(S::from_complex_lossy(&center, ctx));
        }
    }
    Ok(Polynomial::from_roots(&common, ctx))
}

/// Whether `|p(z)|` is below half the working precision relative to
/// `Σ|c_i||z|^i`. Root distance alone cannot tell a shared root from a zero of
/// another polynomial that merely lies close by.
fn vanishes_at<S: Scalar>(p: &Polynomial<S>, z: &Complex, ctx: &Context) -> bool {
    let prec = ctx.precision;
    let r = cabs(z);
    let magnitude: f64 = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.modulus());
    let value = cabs(&p.eval_complex(z, prec));
    value <= 2f64.powf(-(prec as f64) / 2.0) * magnitude.max(f64::MIN_POSITIVE)
}

/// `a / g` by Euclidean division, rejecting a remainder above tolerance.
pub fn divide_checked<S: Scalar>(
    a: &Polynomial<S>,
    g: &Polynomial<S>,
    ctx: &Context,
) -> Result<Polynomial<S>, NumericsError> {
    if g.degree() == Some(0) {
        return Ok(a.scale(&(S::one(ctx) / g.coeff(0))));
    }
    let (q, r) = a.div_rem(g);
    let scale = a.max_modulus().max(f64::MIN_POSITIVE);
    let rel = r.max_modulus() / scale;
    if S::MODE == Mode::Float && rel > ctx.cluster_radius() {
        return Err(NumericsError::UncertainCancellation { residual: rel });
    }
    if S::MODE == Mode::Exact && !r.is_zero() {
        return Err(NumericsError::UncertainCancellation { residual: rel });
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::Gauss;

    fn ep(c: &[Gauss]) -> Polynomial<Gauss> {
        Polynomial::new(c.to_vec(), &Context::default())
    }

    fn ints(c: &[i64]) -> Polynomial<Gauss> {
        ep(&c.iter().map(|&x| Gauss::from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn shared_linear_factor() {
        let ctx = Context::default();
        let (g, qa, qb) = gcd_reduce(&ints(&[-1, 0, 1]), &ints(&[-1, 1]), &ctx).unwrap();
        assert_eq!(g, ints(&[-1, 1]));
        assert_eq!(qa, ints(&[1, 1]));
        assert_eq!(qb, ints(&[1]));
    }

    #[test]
    fn disjoint_roots_give_one() {
        let ctx = Context::default();
        let (g, _, _) = gcd_reduce(&ints(&[1, 0, 1]), &ints(&[-1, 0, 1]), &ctx).unwrap();
        assert_eq!(g, ints(&[1]));
    }

    #[test]
    fn half_is_the_common_root() {
        // (z-1)(z-1/2) and (z-1/2)(z+3); oracle: multiply back exactly
        let ctx = Context::default();
        let half = Gauss::ratio(1, 2);
        let lin = |r: Gauss| ep(&[-r, Gauss::one()]);
        let a = &lin(Gauss::one()) * &lin(half.clone());
        let b = &lin(half.clone()) * &lin(Gauss::from_i64(-3));
        let (g, qa, qb) = gcd_reduce(&a, &b, &ctx).unwrap();
        assert_eq!(g, lin(half));
        assert_eq!(&g * &qa, a);
        assert_eq!(&g * &qb, b);
    }

    #[test]
    fn float_common_root_cluster() {
        let ctx = Context::default();
        let a = ints(&[-1, 0, 1]).to_float(256);
        let b = ints(&[-1, 1]).to_float(256);
        let (g, qa, qb) = gcd_reduce(&a, &b, &ctx).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(cabs(&(g.coeff(0) + Complex::with_val(256, 1))) < 1e-40);
        assert!(cabs(&(qa.coeff(0) - Complex::with_val(256, 1))) < 1e-40);
        assert_eq!(qb.degree(), Some(0));
    }

    #[test]
    fn nearby_roots_are_not_shared() {
        // roots 1 and 1 + 1e-12: inside the cluster radius, far from common
        let ctx = Context::default();
        let near = Gauss::from_i64(1) + Gauss::ratio(1, 1_000_000_000_000);
        let a = ints(&[-1, 1]).to_float(256);
        let b = ep(&[-near, Gauss::one()]).to_float(256);
        let (g, _, _) = gcd_reduce(&a, &b, &ctx).unwrap();
        assert_eq!(g.degree(), Some(0));
    }
}
