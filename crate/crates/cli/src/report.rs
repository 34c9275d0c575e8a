//! Report schema. Exact coefficients are rational strings (`"-28/31"`);
//! floating ones are decimal strings at the run's precision.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use rowpade::numerics::{render_complex, Mode, RootSet, Scalar};
use rowpade::pade::{Normalization, Numerator, Order};
use rowpade::rows::{DenominatorRates, IndicatorReport, RadiusEstimate, RateFit, RowMember, TelescopeTerm};
use rowpade::verify::CheckResult;

use crate::config::RunConfig;
use crate::error::CliResult;

pub const SCHEMA: &str = "rowpade-report/1";

/// Significant digits of decimal strings.
pub const DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericTag {
    pub mode: Mode,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approximant: Option<MemberRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<MemberRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<RowSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            config: None,
            numeric: None,
            approximant: None,
            members: Vec::new(),
            summary: None,
            checks: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn with_config(mut self, cfg: &RunConfig) -> Self {
        self.numeric = Some(NumericTag { mode: cfg.mode, precision_bits: cfg.precision_bits });
        self.config = Some(cfg.clone());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub item: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogTermRecord {
    pub weight: String,
    pub a: String,
}

/// `base + (Σ w·log a)·log_poly`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumeratorRecord {
    pub base: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub log_terms: Vec<LogTermRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub log_poly: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TelescopeRecord {
    pub component: usize,
    pub a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_exact: Option<String>,
    pub q: Vec<String>,
    pub deg_q: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub n: usize,
    pub lambda: usize,
    /// `"exact"`, or `"scaled"` when the canonical denominator is `scale·q`.
    pub normalization: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    pub q: Vec<String>,
    pub numerators: Vec<NumeratorRecord>,
    pub zeros: Vec<ZeroRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub remainder_orders: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub telescope: Vec<TelescopeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusRecord {
    pub component: usize,
    /// Reference `R_m` of the component.
    #[serde(with = "rowpade::extf64")]
    pub known_radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<RadiusEstimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactRecord {
    pub component: usize,
    pub compact: String,
    pub epsilon: f64,
    pub surviving_points: usize,
    #[serde(with = "rowpade::extf64::map")]
    pub errors: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<RateFit>,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct RowSummary {
    #[serde(default)]
    pub radius: Vec<RadiusRecord>,
    #[serde(default)]
    pub indicators: Vec<IndicatorReport>,
    #[serde(default)]
    pub compacts: Vec<CompactRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator_rates: Option<DenominatorRates>,
}

pub fn zeros(set: &RootSet) -> Vec<ZeroRecord> {
    set.iter().map(|r| ZeroRecord { value: render_complex(&r.value, DIGITS), multiplicity: r.multiplicity }).collect()
}

pub fn numerator<S: Scalar>(p: &Numerator<S>) -> NumeratorRecord {
    let (log_terms, log_poly) = match &p.log_part {
        None => (Vec::new(), Vec::new()),
        Some(lp) => (
            lp.terms.iter().map(|t| LogTermRecord { weight: t.weight.to_string(), a: t.a.to_string() }).collect(),
            lp.poly.render_coeffs(),
        ),
    };
    NumeratorRecord { base: p.base.render_coeffs(), log_terms, log_poly }
}

fn normalization(n: &Normalization) -> (String, Option<String>) {
    match n {
        Normalization::Exact => ("exact".into(), None),
        Normalization::Scaled(c) => ("scaled".into(), Some(render_complex(c, DIGITS))),
    }
}

pub fn member<S: Scalar>(m: &RowMember<S>) -> MemberRecord {
    let (norm, numerators) = match &m.hermite {
        Some(h) => (&h.normalization, h.ps.iter().map(numerator).collect()),
        None => (&m.views[0].normalization, vec![numerator(&m.views[0].p)]),
    };
    let (normalization, scale) = normalization(norm);
    MemberRecord {
        n: m.n,
        lambda: m.lambda(),
        normalization,
        scale,
        q: m.q().render_coeffs(),
        numerators,
        zeros: zeros(m.zeros()),
        remainder_orders: Vec::new(),
        telescope: Vec::new(),
    }
}

pub fn order(o: Order) -> String {
    match o {
        Order::At(k) => format!("{k}"),
        Order::AtLeast(k) => format!(">={k}"),
    }
}

pub fn telescope<S: Scalar>(component: usize, t: &TelescopeTerm<S>) -> TelescopeRecord {
    TelescopeRecord {
        component,
        a: render_complex(&t.a, DIGITS),
        a_exact: t.a_exact.as_ref().filter(|_| S::MODE == Mode::Exact).map(|a| a.render()),
        q: t.q.render_coeffs(),
        deg_q: t.deg_q,
    }
}

/// Per-n numeric series as `n,quantity,value` rows.
pub fn write_csv(report: &Report, out: impl Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::error::CliError::Io(std::io::Error::other(e));
    w.write_record(["n", "quantity", "value"]).map_err(io)?;
    let mut row = |n: usize, q: &str, v: String| w.write_record([n.to_string(), q.to_string(), v]).map_err(io);
    for m in report.members.iter().chain(report.approximant.iter()) {
        row(m.n, "lambda", m.lambda.to_string())?;
        for t in &m.telescope {
            row(m.n, &format!("A[{}]", t.component), t.a.clone())?;
        }
    }
    if let Some(s) = &report.summary {
        for r in &s.radius {
            for (n, v) in r.estimate.iter().flat_map(|e| e.per_n.iter()) {
                row(*n, &format!("abs_A[{}]", r.component), v.to_string())?;
            }
        }
        for c in &s.compacts {
            for (n, v) in &c.errors {
                row(*n, &format!("sup_error[{};{}]", c.component, c.compact), v.to_string())?;
            }
        }
        for ind in &s.indicators {
            for (n, v) in &ind.delta.per_n {
                row(*n, &format!("abs_Q[{}{:+}i]", ind.a.0, ind.a.1), v.to_string())?;
            }
        }
        if let Some(d) = &s.denominator_rates {
            for (n, v) in &d.fit.values {
                row(*n, "coeff_norm_diff", v.to_string())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(report: &Report, path: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}").and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}
