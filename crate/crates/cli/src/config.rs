use std::collections::BTreeMap;
use std::fs;

use rug::Complex;
use serde::{Deserialize, Serialize};

use rowpade::hermite::MultiIndex;
use rowpade::numerics::{parse_rational, roots, Context, Gauss, Mode, Polynomial};
use rowpade::pade::IncompleteSelector;
use rowpade::rows::{CompactSet, RowSource};
use rowpade::series::{catalog, parse_document, SystemOfSeries};

use crate::args::{RowArgs, SourceArgs};
use crate::error::{CliError, CliResult};

pub const MIN_PRECISION: u32 = 64;

/// Everything a run depends on, echoed into its report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub series: String,
    pub params: BTreeMap<String, String>,
    pub mode: Mode,
    pub precision_bits: u32,
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multi_index: Option<MultiIndex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mstar: Option<usize>,
    pub epsilon: f64,
    #[serde(default)]
    pub compacts: Vec<CompactSet>,
    #[serde(default)]
    pub indicator_points: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_denominator: Option<String>,
    pub decision_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_params(items: &[String]) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| usage(format!("expected key=value, got `{item}`")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// `a:b`, inclusive.
pub fn parse_range(text: &str) -> CliResult<(usize, usize)> {
    let bad = || usage(format!("expected a range a:b, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(usage(format!("empty range `{text}`")));
    }
    Ok((a, b))
}

/// A complex point: `2`, `-0.5`, `3i`, `1+2i`, `1-0.5i`.
pub fn parse_point(text: &str) -> CliResult<(f64, f64)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('\u{2212}', "-");
    let bad = || usage(format!("`{text}` is not a complex number"));
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| (x, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let imag = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        s => s.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(i) => Ok((body[..i].parse::<f64>().map_err(|_| bad())?, imag(&body[i..])?)),
        None => Ok((0.0, imag(body)?)),
    }
}

pub fn parse_points(text: &str) -> CliResult<Vec<(f64, f64)>> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_point).collect()
}

/// Roots of a reference denominator given as `roots:...` or `coeffs:...`.
pub fn target_roots(text: &str, prec: u32) -> CliResult<Vec<Complex>> {
    if let Some(list) = text.strip_prefix("roots:") {
        return Ok(parse_points(list)?.into_iter().map(|p| Complex::with_val(prec, p)).collect());
    }
    let list = text
        .strip_prefix("coeffs:")
        .ok_or_else(|| usage(format!("target denominator must start with roots: or coeffs:, got `{text}`")))?;
    let coeffs =
        list.split(',').map(|c| parse_rational(c).map(Gauss::real).map_err(usage)).collect::<CliResult<Vec<_>>>()?;
    let ctx = Context::new(prec);
    let poly = Polynomial::new(coeffs, &ctx);
    if poly.degree().unwrap_or(0) == 0 {
        return Err(usage("target denominator must have positive degree"));
    }
    let rs = roots(&poly, &ctx, ctx.root_tol()).map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(rs.expanded())
}

pub fn load_system(series: &str, params: &BTreeMap<String, String>) -> CliResult<SystemOfSeries> {
    if let Some(name) = series.strip_prefix("catalog:") {
        return Ok(catalog(name, params)?);
    }
    if !params.is_empty() {
        return Err(usage("--params applies to catalog:NAME series only"));
    }
    let text = fs::read_to_string(series).map_err(|e| usage(format!("cannot read `{series}`: {e}")))?;
    Ok(parse_document(&text)?)
}

impl RunConfig {
    fn base(src: &SourceArgs, n_min: usize, n_max: usize) -> CliResult<Self> {
        let mode: Mode = src.mode.parse().map_err(|e: String| usage(e))?;
        if src.precision_bits < MIN_PRECISION {
            return Err(usage(format!("--precision-bits must be at least {MIN_PRECISION}")));
        }
        let multi_index = src
            .multi_index
            .as_deref()
            .map(|s| s.parse::<MultiIndex>().map_err(|e| usage(e.to_string())))
            .transpose()?;
        Ok(RunConfig {
            series: src.series.clone(),
            params: parse_params(&src.params)?,
            mode,
            precision_bits: src.precision_bits,
            n_min,
            n_max,
            multi_index,
            m: src.m,
            mstar: src.mstar,
            epsilon: rowpade::rows::compact::DEFAULT_EPSILON,
            compacts: Vec::new(),
            indicator_points: Vec::new(),
            target_denominator: None,
            decision_tol: rowpade::rows::DECISION_TOL,
            output_path: src.out.as_ref().map(|p| p.display().to_string()),
        })
    }

    pub fn for_approximate(src: &SourceArgs, n: usize) -> CliResult<Self> {
        Self::base(src, n, n)
    }

    pub fn for_row(args: &RowArgs) -> CliResult<Self> {
        let (lo, hi) = parse_range(&args.n_range)?;
        let mut cfg = Self::base(&args.source, lo, hi)?;
        if args.epsilon.is_nan() || args.epsilon <= 0.0 {
            return Err(usage("--epsilon must be positive"));
        }
        cfg.epsilon = args.epsilon;
        cfg.compacts = args
            .compact
            .iter()
            .map(|c| {
                let own_epsilon = c.contains("epsilon=");
                let k: CompactSet = c.parse().map_err(usage)?;
                Ok(if own_epsilon { k } else { k.with_epsilon(args.epsilon) })
            })
            .collect::<CliResult<_>>()?;
        cfg.indicator_points = args.indicator_points.as_deref().map(parse_points).transpose()?.unwrap_or_default();
        if let Some(t) = &args.target_denominator {
            target_roots(t, cfg.precision_bits)?;
            cfg.target_denominator = Some(t.clone());
        }
        if !(0.0..1.0).contains(&args.decision_tol) {
            return Err(usage("--decision-tol must lie in [0, 1)"));
        }
        cfg.decision_tol = args.decision_tol;
        Ok(cfg)
    }

    pub fn context(&self) -> Context {
        Context::new(self.precision_bits)
    }

    pub fn source(&self) -> CliResult<RowSource> {
        let system = load_system(&self.series, &self.params)?;
        match (&self.multi_index, self.m) {
            (Some(mindex), _) => {
                if mindex.len() != system.len() {
                    return Err(usage(format!(
                        "multi-index {mindex} has {} parts but the series has {} components",
                        mindex.len(),
                        system.len()
                    )));
                }
                Ok(RowSource::System { system, mindex: mindex.clone() })
            }
            (None, Some(m)) => {
                if system.len() != 1 {
                    return Err(usage("--m/--mstar need a single series; use --multi-index for systems"));
                }
                let mstar = self.mstar.unwrap_or(m);
                if mstar > m {
                    return Err(usage(format!("mstar = {mstar} exceeds m = {m}")));
                }
                let f = system.component(0).clone();
                Ok(RowSource::Scalar { f, m, mstar, selector: IncompleteSelector::Canonical })
            }
            (None, None) => Err(usage("give --m for a scalar series or --multi-index for a system")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(parse_point("2").unwrap(), (2.0, 0.0));
        assert_eq!(parse_point("-1").unwrap(), (-1.0, 0.0));
        assert_eq!(parse_point("3i").unwrap(), (0.0, 3.0));
        assert_eq!(parse_point("-i").unwrap(), (0.0, -1.0));
        assert_eq!(parse_point("1+2i").unwrap(), (1.0, 2.0));
        assert_eq!(parse_point("1e-3-0.5i").unwrap(), (1e-3, -0.5));
        assert!(parse_point("abc").is_err());
        assert_eq!(parse_points("1,-1,3").unwrap().len(), 3);
    }

    #[test]
    fn ranges_and_params() {
        assert_eq!(parse_range("4:30").unwrap(), (4, 30));
        assert!(parse_range("5:4").is_err());
        assert!(parse_range("5").is_err());
        let p = parse_params(&["p=2".into(), "a=1,b=3".into()]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse_params(&["p".into()]).is_err());
    }

    #[test]
    fn targets() {
        let r = target_roots("coeffs:-1,3/2,-1/2", 256).unwrap();
        let mut re: Vec<f64> = r.iter().map(|z| z.real().to_f64()).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - 1.0).abs() < 1e-30 && (re[1] - 2.0).abs() < 1e-30);
        assert_eq!(target_roots("roots:1,2", 256).unwrap().len(), 2);
        assert!(target_roots("poly:1", 256).is_err());
        assert!(target_roots("coeffs:3", 256).is_err());
    }
}
