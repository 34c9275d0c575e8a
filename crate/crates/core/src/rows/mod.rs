//! Row sequences and their analytics.
//!
//! A row fixes the denominator degree (`m`, or a multi-index `𝐦`) and lets
//! `n` run over an interval. Members are computed independently and in
//! parallel; everything downstream reads the finished, immutable row.

pub mod assign;
pub mod compact;
pub mod fit;
pub mod indicators;
pub mod telescope;

use rayon::prelude::*;
use rug::Complex;

use crate::error::{Error, Result};
use crate::hermite::{component_view, compute_hermite, HermitePadeApproximant, MultiIndex};
use crate::numerics::{Context, Polynomial, RootSet, Scalar};
use crate::pade::{compute_incomplete, IncompleteSelector, PadeApproximant};
use crate::series::{PowerSeries, SystemOfSeries};

pub use assign::assign_k;
pub use compact::{
    aligned_denominator, coeff_norm_diff, denominator_rates, divergence, product_form, sup_error, sup_errors,
    CompactSet, DenominatorRates,
};
pub use fit::{fit_rate, fit_rate_parity, fit_rate_restricted, tail_window, Parity, RateFit};
pub use indicators::{
    delta_indicator, delta_j_indicators, indicator_report, mu_indicator, DeltaEstimate, IndicatorReport, DECISION_TOL,
};
pub use telescope::{estimate_rstar, estimate_rstar_with, telescope, telescope_terms, RadiusEstimate, TelescopeTerm};

#[derive(Clone, Debug)]
pub enum RowSource {
    Scalar { f: PowerSeries, m: usize, mstar: usize, selector: IncompleteSelector },
    System { system: SystemOfSeries, mindex: MultiIndex },
}

impl RowSource {
    pub fn scalar(f: PowerSeries, m: usize) -> Self {
        RowSource::Scalar { f, m, mstar: m, selector: IncompleteSelector::Canonical }
    }

    /// `m` of a scalar row, `|𝐦|` of a system row.
    pub fn m(&self) -> usize {
        match self {
            RowSource::Scalar { m, .. } => *m,
            RowSource::System { mindex, .. } => mindex.total(),
        }
    }

    /// Smallest admissible `n`.
    pub fn min_n(&self) -> usize {
        match self {
            RowSource::Scalar { m, .. } => *m,
            RowSource::System { mindex, .. } => mindex.max_part(),
        }
    }

    pub fn components(&self) -> Vec<PowerSeries> {
        match self {
            RowSource::Scalar { f, .. } => vec![f.clone()],
            RowSource::System { system, .. } => system.components().to_vec(),
        }
    }

    /// Reference `R_m` (system radius for system rows).
    pub fn known_radius(&self, m: usize) -> f64 {
        match self {
            RowSource::Scalar { f, .. } => f.analytics().radius(m),
            RowSource::System { system, .. } => system.radius(m),
        }
    }
}

/// One `n` of a row.
#[derive(Clone, Debug)]
pub struct RowMember<S: Scalar> {
    pub n: usize,
    /// Present for system rows.
    pub hermite: Option<HermitePadeApproximant<S>>,
    /// Per component: the incomplete Padé view with its own cancellation.
    /// A scalar row has exactly one.
    pub views: Vec<PadeApproximant<S>>,
}

impl<S: Scalar> RowMember<S> {
    /// The common denominator as stored.
    pub fn q(&self) -> &Polynomial<S> {
        self.hermite.as_ref().map_or(&self.views[0].q, |h| &h.q)
    }

    /// Zeros of the common denominator.
    pub fn zeros(&self) -> &RootSet {
        self.hermite.as_ref().map_or(&self.views[0].zeros, |h| &h.zeros)
    }

    pub fn lambda(&self) -> usize {
        self.hermite.as_ref().map_or(self.views[0].lambda, |h| h.lambda)
    }

    /// Canonical common denominator in floating mode.
    pub fn canonical_q(&self, prec: u32) -> Polynomial<Complex> {
        match &self.hermite {
            None => self.views[0].canonical_q(prec),
            Some(h) => h.common_view(0).canonical_q(prec),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match &self.hermite {
            None => self.views[0].is_canonical(),
            Some(h) => h.normalization == crate::pade::Normalization::Exact,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RowSequence<S: Scalar> {
    pub source: RowSource,
    pub range: (usize, usize),
    pub members: Vec<RowMember<S>>,
    pub ctx: Context,
}

impl<S: Scalar> RowSequence<S> {
    pub fn member(&self, n: usize) -> Result<&RowMember<S>> {
        let (lo, hi) = self.range;
        if n < lo || n > hi {
            return Err(Error::OutOfRange { n, lo, hi });
        }
        Ok(&self.members[n - lo])
    }

    pub fn ns(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m.n)
    }

    pub fn m(&self) -> usize {
        self.source.m()
    }

    /// `m*` of component `k`.
    pub fn mstar(&self, k: usize) -> usize {
        match &self.source {
            RowSource::Scalar { mstar, .. } => *mstar,
            RowSource::System { mindex, .. } => mindex.parts()[k],
        }
    }

    pub fn component_count(&self) -> usize {
        self.members.first().map_or(0, |m| m.views.len())
    }

    /// Working precision for floating evaluations.
    pub fn precision(&self) -> u32 {
        self.ctx.precision
    }
}

fn member<S: Scalar>(source: &RowSource, n: usize, ctx: &Context) -> Result<RowMember<S>> {
    match source {
        RowSource::Scalar { f, m, mstar, selector } => {
            let a = compute_incomplete(f, n, *m, *mstar, selector, ctx)?;
            Ok(RowMember { n, hermite: None, views: vec![a] })
        }
        RowSource::System { system, mindex } => {
            let h = compute_hermite(system, n, mindex, ctx)?;
            let views = (0..system.len()).map(|k| component_view(&h, k, ctx)).collect::<Result<Vec<_>>>()?;
            Ok(RowMember { n, hermite: Some(h), views })
        }
    }
}

/// Computes every member for `n` in `lo..=hi`.
pub fn build_row<S: Scalar>(source: RowSource, lo: usize, hi: usize, ctx: &Context) -> Result<RowSequence<S>> {
    if lo > hi {
        return Err(Error::Degrees(format!("empty range {lo}..={hi}")));
    }
    if lo < source.min_n() {
        return Err(Error::Degrees(format!("n must be at least {}, got {lo}", source.min_n())));
    }
    let members = (lo..=hi).into_par_iter().map(|n| member::<S>(&source, n, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(RowSequence { source, range: (lo, hi), members, ctx: *ctx })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Gauss;
    use crate::series::catalog;
    use std::collections::BTreeMap;

    fn ctx() -> Context {
        Context::default()
    }

    #[test]
    fn geometric_row_is_constant() {
        let ctxt = ctx();
        let f = PowerSeries::rational(
            Polynomial::new(vec![Gauss::one()], &ctxt),
            Polynomial::new(vec![Gauss::one(), -Gauss::one()], &ctxt),
        )
        .unwrap();
        let row = build_row::<Gauss>(RowSource::scalar(f, 1), 1, 10, &ctxt).unwrap();
        assert_eq!(row.members.len(), 10);
        for m in &row.members {
            assert_eq!(m.q().render_coeffs(), vec!["-1", "1"]);
        }
    }

    #[test]
    fn fg_row_members() {
        let sys = catalog("5.1-fg", &BTreeMap::new()).unwrap();
        let source = RowSource::System { system: sys, mindex: MultiIndex::new(vec![1, 1]).unwrap() };
        let row = build_row::<Gauss>(source, 3, 20, &ctx()).unwrap();
        assert_eq!(row.members.len(), 18);
        assert_eq!(row.member(7).unwrap().q().render_coeffs(), vec!["1", "0", "1"]);
        assert_eq!(row.member(8).unwrap().q().render_coeffs(), vec!["-1", "0", "1"]);
        assert!(row.member(21).is_err());
        assert_eq!(row.component_count(), 2);
    }

    #[test]
    fn range_checks() {
        let sys = catalog("5.1-fg", &BTreeMap::new()).unwrap();
        let source = RowSource::System { system: sys, mindex: MultiIndex::new(vec![2, 1]).unwrap() };
        assert!(build_row::<Gauss>(source.clone(), 1, 5, &ctx()).is_err());
        assert!(build_row::<Gauss>(source, 6, 5, &ctx()).is_err());
    }
}
