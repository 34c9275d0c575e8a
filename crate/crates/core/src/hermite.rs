//! Hermite-Padé simultaneous approximants of type `(n, 𝐦)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{nullspace_vector, Context, Matrix, Polynomial, RootSet, Scalar};
use crate::pade::{reduce_and_normalize, Normalization, Numerator, PadeApproximant, Taylor};
use crate::series::SystemOfSeries;

/// `𝐦 = (m_1, …, m_d)`, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultiIndex {
    parts: Vec<usize>,
}

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().all(|&p| p == 0) {
            return Err(Error::Degrees("multi-index must have a nonzero part".into()));
        }
        Ok(MultiIndex { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|𝐦|`
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<Vec<usize>> for MultiIndex {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        MultiIndex::new(parts)
    }
}

impl From<MultiIndex> for Vec<usize> {
    fn from(m: MultiIndex) -> Self {
        m.parts
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// `"1,1"` or `"(1,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Degrees(format!("bad multi-index `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitePadeApproximant<S: Scalar> {
    pub n: usize,
    pub mindex: MultiIndex,
    pub q_raw: Polynomial<S>,
    pub p_raws: Vec<Numerator<S>>,
    pub q: Polynomial<S>,
    pub ps: Vec<Numerator<S>>,
    pub lambda: usize,
    pub normalization: Normalization,
    pub zeros: RootSet,
}

/// Stacks, for each component `j`, the `m_j` conditions that coefficients
/// `z^{n−m_j+1} … z^n` of `Q·f_j` vanish, and reduces the resulting
/// `(Q, P_1, …, P_d)` by their simultaneous common factor.
pub fn compute_hermite<S: Scalar>(
    system: &SystemOfSeries,
    n: usize,
    mindex: &MultiIndex,
    ctx: &Context,
) -> Result<HermitePadeApproximant<S>> {
    if system.len() != mindex.len() {
        return Err(Error::Degrees(format!(
            "system has {} components but the multi-index {} has {}",
            system.len(),
            mindex,
            mindex.len()
        )));
    }
    if n < mindex.max_part() {
        return Err(Error::Degrees(format!("n = {n} is below the largest part of {mindex}")));
    }
    let total = mindex.total();
    let taylors: Vec<Taylor<S>> = system.components().iter().map(|f| Taylor::of(f, n, ctx)).collect();
    let mut matrix = Matrix::zeros(total, total + 1, ctx);
    let mut row = 0;
    for (taylor, &mj) in taylors.iter().zip(mindex.parts()) {
        for r in n + 1 - mj..=n {
            for col in 0..=total.min(r) {
                let mono = Polynomial::monomial(S::one(ctx), col, ctx);
                matrix.set(row, col, taylor.product_coeff(&mono, r, ctx)?);
            }
            row += 1;
        }
    }
    let q_raw = Polynomial::new(nullspace_vector(&matrix, ctx).vector, ctx);
    let p_raws: Vec<Numerator<S>> =
        taylors.iter().zip(mindex.parts()).map(|(t, &mj)| t.numerator(&q_raw, n - mj, ctx)).collect();
    let refs: Vec<&Numerator<S>> = p_raws.iter().collect();
    let red = reduce_and_normalize(&q_raw, &refs, ctx)?;
    Ok(HermitePadeApproximant {
        n,
        mindex: mindex.clone(),
        q_raw,
        p_raws,
        q: red.q,
        ps: red.ps,
        lambda: red.lambda,
        normalization: red.normalization,
        zeros: red.zeros,
    })
}

/// Component `k` (zero-based) as an incomplete Padé approximant of type
/// `(n, |𝐦|, m_k)`, with the cancellation between `Q` and `P_k` alone.
pub fn component_view<S: Scalar>(h: &HermitePadeApproximant<S>, k: usize, ctx: &Context) -> Result<PadeApproximant<S>> {
    let p_raw = h.p_raws[k].clone();
    let red = reduce_and_normalize(&h.q_raw, &[&p_raw], ctx)?;
    Ok(PadeApproximant {
        n: h.n,
        m: h.mindex.total(),
        mstar: h.mindex.parts()[k],
        q_raw: h.q_raw.clone(),
        p_raw,
        q: red.q,
        p: red.ps.into_iter().next().expect("one numerator"),
        lambda: red.lambda,
        normalization: red.normalization,
        zeros: red.zeros,
    })
}

impl<S: Scalar> HermitePadeApproximant<S> {
    /// The approximant viewed with the common denominator as a
    /// [`PadeApproximant`] for component `k`; no further cancellation.
    pub fn common_view(&self, k: usize) -> PadeApproximant<S> {
        PadeApproximant {
            n: self.n,
            m: self.mindex.total(),
            mstar: self.mindex.parts()[k],
            q_raw: self.q_raw.clone(),
            p_raw: self.p_raws[k].clone(),
            q: self.q.clone(),
            p: self.ps[k].clone(),
            lambda: self.lambda,
            normalization: self.normalization.clone(),
            zeros: self.zeros.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{common_factor, Gauss};
    use crate::pade::{compute_pade, linearization_order};
    use crate::series::{catalog, PowerSeries};
    use rug::Complex;
    use std::collections::BTreeMap;

    fn ctx() -> Context {
        Context::default()
    }

    fn ints(c: &[i64]) -> Polynomial<Gauss> {
        Polynomial::new(c.iter().map(|&x| Gauss::from_i64(x)).collect(), &ctx())
    }

    fn none() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    fn mi(parts: &[usize]) -> MultiIndex {
        MultiIndex::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn multi_index_parsing() {
        assert_eq!("1,1".parse::<MultiIndex>().unwrap(), mi(&[1, 1]));
        assert_eq!("(2, 0, 1)".parse::<MultiIndex>().unwrap().total(), 3);
        assert!("0,0".parse::<MultiIndex>().is_err());
        assert!("a".parse::<MultiIndex>().is_err());
        let json = serde_json::to_string(&mi(&[1, 2])).unwrap();
        assert_eq!(json, "[1,2]");
        assert!(serde_json::from_str::<MultiIndex>("[0]").is_err());
    }

    #[test]
    fn fg_denominators_alternate() {
        let sys = catalog("5.1-fg", &none()).unwrap();
        for n in 3..=12 {
            let h = compute_hermite::<Gauss>(&sys, n, &mi(&[1, 1]), &ctx()).unwrap();
            let want = if n % 2 == 0 { ints(&[-1, 0, 1]) } else { ints(&[1, 0, 1]) };
            assert_eq!(h.q, want, "n = {n}");
        }
    }

    #[test]
    fn fw_odd_constant() {
        let params: BTreeMap<String, String> = [("p".to_string(), "2".to_string())].into();
        let sys = catalog("5.1-fw", &params).unwrap();
        let h = compute_hermite::<Gauss>(&sys, 5, &mi(&[1, 1]), &ctx()).unwrap();
        let want = Polynomial::new(vec![-Gauss::ratio(28, 31), Gauss::zero(), Gauss::one()], &ctx());
        assert_eq!(h.q, want);
    }

    #[test]
    fn single_component_is_pade() {
        let f = PowerSeries::rational(ints(&[1, 2]), ints(&[6, -5, 1])).unwrap();
        let sys = SystemOfSeries::single(f.clone());
        for (n, m) in [(3, 1), (4, 2), (6, 3)] {
            let h = compute_hermite::<Gauss>(&sys, n, &mi(&[m]), &ctx()).unwrap();
            let a = compute_pade::<Gauss>(&f, n, m, &ctx()).unwrap();
            assert_eq!(h.q, a.q);
            assert_eq!(h.ps[0], a.p);
            assert_eq!(component_view(&h, 0, &ctx()).unwrap(), a);
        }
    }

    #[test]
    fn matching_conditions_and_no_common_root() {
        let sys = catalog("5.2-g", &none()).unwrap();
        for n in 3..=9 {
            let h = compute_hermite::<Gauss>(&sys, n, &mi(&[1, 1]), &ctx()).unwrap();
            for (j, f) in sys.components().iter().enumerate() {
                let order = linearization_order(&h.q, &h.ps[j], f, n + 2, &ctx());
                assert!(order.reaches(n + 1 - h.lambda), "n = {n}, j = {j}: {order:?}");
            }
            let mut polys = vec![&h.q];
            for p in &h.ps {
                polys.extend(p.polys());
            }
            assert_eq!(common_factor(&polys, &ctx()).unwrap().degree(), Some(0));
            assert_eq!(h.q.degree(), Some(2));
        }
    }

    #[test]
    fn h_and_hhat_share_denominators() {
        let h = catalog("5.3-h", &none()).unwrap();
        let hh = catalog("5.3-hhat", &none()).unwrap();
        for n in 4..=10 {
            let a = compute_hermite::<Gauss>(&h, n, &mi(&[1, 1]), &ctx()).unwrap();
            let b = compute_hermite::<Gauss>(&hh, n, &mi(&[1, 1]), &ctx()).unwrap();
            assert_eq!(a.q.render_coeffs(), b.q.render_coeffs(), "n = {n}");
            assert_eq!(a.normalization, b.normalization);
        }
    }

    #[test]
    fn component_view_divides_common_denominator() {
        let sys = catalog("5.2-f1f2", &none()).unwrap();
        let h = compute_hermite::<Gauss>(&sys, 12, &mi(&[1, 1]), &ctx()).unwrap();
        let v = component_view(&h, 1, &ctx()).unwrap();
        assert!(h.q.div_rem(&v.q).1.is_zero());
        assert_eq!((v.m, v.mstar), (2, 1));
        let near3 = v.zeros.iter().any(|r| (r.to_c64().0 - 3.0).abs() < 1e-3);
        assert!(near3);
    }

    #[test]
    fn float_mode_tracks_exact() {
        let sys = catalog("5.2-g", &none()).unwrap();
        let e = compute_hermite::<Gauss>(&sys, 12, &mi(&[1, 1]), &ctx()).unwrap();
        let x = compute_hermite::<Complex>(&sys, 12, &mi(&[1, 1]), &ctx()).unwrap();
        let eq = e.common_view(0).canonical_q(256);
        assert!(eq.max_diff(&x.q) < 1e-40);
    }

    #[test]
    fn shape_errors() {
        let sys = catalog("5.1-fg", &none()).unwrap();
        assert!(compute_hermite::<Gauss>(&sys, 4, &mi(&[1]), &ctx()).is_err());
        assert!(compute_hermite::<Gauss>(&sys, 1, &mi(&[2, 1]), &ctx()).is_err());
    }
}
