//! Polynomial roots with multiplicities.
//!
//! Exact polynomials are split into square-free factors first (Yun's
//! algorithm over the rationals), so multiplicities are exact and every
//! factor handed to the iteration has simple roots. Floating polynomials are
//! refined as they are and nearby roots are merged into clusters.

use rug::{Complex, Float};

use super::gcd::gcd_exact;
use super::poly::Polynomial;
use super::scalar::{cabs, Context, Mode, Scalar};
use super::NumericsError;

/// Sweep cap for the simultaneous iteration.
pub const MAX_SWEEPS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex,
    pub multiplicity: usize,
    /// `|p(value)|` for the polynomial the root was refined on.
    pub residual: f64,
}

impl Root {
    pub fn modulus(&self) -> f64 {
        cabs(&self.value)
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.value.real().to_f64(), self.value.imag().to_f64())
    }
}

/// Roots of one polynomial, each with its multiplicity.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn empty() -> Self {
        RootSet { roots: Vec::new() }
    }

    /// Sum of multiplicities.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Complex> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r.value.clone(), r.multiplicity)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    /// Roots sorted by modulus, then argument; gives reports a stable order.
    pub fn sorted(mut self) -> Self {
        self.roots.sort_by(|a, b| {
            let ka = (a.modulus(), a.value.imag().to_f64(), a.value.real().to_f64());
            let kb = (b.modulus(), b.value.imag().to_f64(), b.value.real().to_f64());
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        });
        self
    }
}

/// All complex roots of `p` refined until `|p(z)| <= tol·Σ|c_k||z|^k`.
pub fn roots<S: Scalar>(p: &Polynomial<S>, ctx: &Context, tol: f64) -> Result<RootSet, NumericsError> {
    if p.is_zero() {
        return Err(NumericsError::ZeroPolynomial);
    }
    let p = p.trim_negligible();
    if p.degree() == Some(0) {
        return Err(NumericsError::NoRoots);
    }
    let prec = ctx.precision;
    let val = p.valuation().unwrap_or(0);
    let mut out = Vec::new();
    if val > 0 {
        out.push(Root { value: Complex::new(prec), multiplicity: val, residual: 0.0 });
    }
    let rest = p.clean_low(val).shift_down(val);
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(RootSet { roots: out }.sorted());
    }
    match S::MODE {
        Mode::Exact => {
            for (mult, factor) in squarefree(&rest) {
                if factor.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let fp = factor.to_float(prec);
                for (z, res) in aberth(&fp, prec, tol)? {
                    out.push(Root { value: z, multiplicity: mult, residual: res });
                }
            }
        }
        Mode::Float => {
            let fp = rest.to_float(prec);
            let simple = aberth(&fp, prec, tol)?;
            out.extend(cluster(&fp, simple, ctx.cluster_radius(), prec));
        }
    }
    Ok(RootSet { roots: out }.sorted())
}

/// Square-free decomposition `p = c·∏ a_i^i`; returns `(i, a_i)` pairs.
pub fn squarefree<S: Scalar>(p: &Polynomial<S>) -> Vec<(usize, Polynomial<S>)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = gcd_exact(p, &dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_exact(&b, &d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = &nc - &nb.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a));
        }
        b = nb;
        i += 1;
    }
    out
}

fn horner_with_derivative(c: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex, Float) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    let mut scale = Float::new(prec);
    let zabs = Float::with_val(prec, z.abs_ref());
    for coef in c.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += coef;
        scale *= &zabs;
        scale += Float::with_val(prec, coef.abs_ref());
    }
    (p, dp, scale)
}

/// Aberth-Ehrlich simultaneous iteration; returns each root with `|p(z)|`.
fn aberth(p: &Polynomial<Complex>, prec: u32, tol: f64) -> Result<Vec<(Complex, f64)>, NumericsError> {
    let c = p.coeffs();
    let d = c.len() - 1;
    if d == 1 {
        let z = Complex::with_val(prec, -&c[0]) / &c[1];
        return Ok(vec![(z, 0.0)]);
    }
    let lead = Float::with_val(prec, c[d].abs_ref());
    let tail = Float::with_val(prec, c[0].abs_ref());
    let mut radius = (tail / &lead).to_f64().powf(1.0 / d as f64);
    if !radius.is_finite() || radius <= 0.0 {
        radius = 1.0;
    }
    let mut z: Vec<Complex> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            Complex::with_val(prec, (radius * theta.cos(), radius * theta.sin()))
        })
        .collect();
    let tol_f = Float::with_val(prec, tol);
    let mut converged = vec![false; d];
    for _sweep in 0..MAX_SWEEPS {
        for i in 0..d {
            let (pv, dpv, scale) = horner_with_derivative(c, &z[i], prec);
            let pabs = Float::with_val(prec, pv.abs_ref());
            if pabs <= Float::with_val(prec, &tol_f * &scale) {
                converged[i] = true;
                continue;
            }
            converged[i] = false;
            if dpv.is_zero() {
                continue;
            }
            let w = Complex::with_val(prec, &pv / &dpv);
            let mut s = Complex::new(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = Complex::with_val(prec, &z[i] - zj);
                    if !diff.is_zero() {
                        s += diff.recip();
                    }
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &w * &s);
            let step = if denom.is_zero() { w } else { w / denom };
            z[i] -= step;
        }
        if converged.iter().all(|&ok| ok) {
            let out = z
                .into_iter()
                .map(|zi| {
                    let r = cabs(&p.eval_complex(&zi, prec));
                    (zi, r)
                })
                .collect();
            return Ok(out);
        }
    }
    let residuals = z.iter().map(|zi| cabs(&p.eval_complex(zi, prec))).collect();
    let best = z.iter().map(|zi| (zi.real().to_f64(), zi.imag().to_f64())).collect();
    Err(NumericsError::RootsNotConverged { best, residuals })
}

/// Merges roots closer than `radius` (transitively) and replaces each cluster
/// by its centroid with the combined multiplicity.
fn cluster(p: &Polynomial<Complex>, simple: Vec<(Complex, f64)>, radius: f64, prec: u32) -> Vec<Root> {
    let n = simple.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let dist = cabs(&Complex::with_val(prec, &simple[i].0 - &simple[j].0));
            if dist < radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let k = members.len();
            let mut sum = Complex::new(prec);
            for &i in &members {
                sum += &simple[i].0;
            }
            let center = sum / k as u32;
            let residual = if k == 1 { simple[members[0]].1 } else { cabs(&p.eval_complex(&center, prec)) };
            Root { value: center, multiplicity: k, residual }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::Gauss;

    fn exact(c: &[Gauss]) -> Polynomial<Gauss> {
        Polynomial::new(c.to_vec(), &Context::default())
    }

    #[test]
    fn unit_square_roots() {
        let ctx = Context::default();
        let p = exact(&[Gauss::from_i64(-1), Gauss::zero(), Gauss::one()]);
        let rs = roots(&p, &ctx, ctx.root_tol()).unwrap();
        assert_eq!(rs.count(), 2);
        let mut re: Vec<f64> = rs.iter().map(|r| r.to_c64().0).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1.0).abs() < 1e-60 && (re[1] - 1.0).abs() < 1e-60);
        assert!(rs.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn square_root_of_odd_constant() {
        // z^2 - 28/31; oracle: direct square root
        let ctx = Context::default();
        let p = exact(&[-Gauss::ratio(28, 31), Gauss::zero(), Gauss::one()]);
        let rs = roots(&p, &ctx, ctx.root_tol()).unwrap();
        let oracle = (28.0f64 / 31.0).sqrt();
        for r in rs.iter() {
            assert!((r.modulus() - oracle).abs() < 1e-15);
            assert!(r.to_c64().1.abs() < 1e-30);
        }
        assert!((oracle - 0.950_382_3).abs() < 1e-6);
    }

    #[test]
    fn double_root_exact_and_float() {
        let ctx = Context::default();
        let p = exact(&[Gauss::one(), Gauss::from_i64(-2), Gauss::one()]);
        let rs = roots(&p, &ctx, ctx.root_tol()).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 2);
        let pf = p.to_float(256);
        let rf = roots(&pf, &ctx, ctx.root_tol()).unwrap();
        assert_eq!(rf.roots.len(), 1);
        assert_eq!(rf.roots[0].multiplicity, 2);
        assert!((rf.roots[0].to_c64().0 - 1.0).abs() < 1e-30);
    }

    #[test]
    fn constant_has_no_roots() {
        let ctx = Context::default();
        assert!(matches!(roots(&exact(&[Gauss::from_i64(3)]), &ctx, 1e-10), Err(NumericsError::NoRoots)));
    }

    #[test]
    fn zero_roots_extracted() {
        let ctx = Context::default();
        let p = exact(&[Gauss::zero(), Gauss::zero(), Gauss::from_i64(-1), Gauss::one()]);
        let rs = roots(&p, &ctx, ctx.root_tol()).unwrap();
        assert_eq!(rs.count(), 3);
        assert_eq!(rs.roots[0].multiplicity, 2);
        assert_eq!(rs.roots[0].modulus(), 0.0);
    }
}
