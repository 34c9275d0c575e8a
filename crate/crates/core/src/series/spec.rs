//! JSON series-spec documents.
//!
//! ```json
//! {"kind":"rational","num":["1"],"den":["1","-1"]}
//! {"kind":"logshift","a":"3"}
//! {"kind":"sum","terms":[{"kind":"logshift","a":"3"},{"kind":"rational","num":[1],"den":[1,-1]}]}
//! {"kind":"scale","factor":"-1/2","series":{"kind":"logshift","a":"10"}}
//! {"kind":"coeffs","values":["1","0","1/2"]}
//! {"kind":"catalog","name":"5.1-fw","params":{"p":"2"}}
//! ```
//!
//! Literals are strings such as `"p/q"` or `"0.25"`, JSON numbers, or
//! `{"re": .., "im": ..}`. A top-level array is a system, one series per
//! entry.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{catalog, PowerSeries, SeriesError, SystemOfSeries};
use crate::numerics::{parse_rational, Context, Gauss, Polynomial};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Number(serde_json::Number),
    Complex { re: Box<Literal>, im: Box<Literal> },
}

impl Literal {
    fn real(&self) -> Result<rug::Rational, SeriesError> {
        match self {
            Literal::Text(s) => parse_rational(s).map_err(SeriesError::Spec),
            Literal::Number(n) => parse_rational(&n.to_string()).map_err(SeriesError::Spec),
            Literal::Complex { .. } => Err(SeriesError::Spec("nested complex literal".into())),
        }
    }

    pub fn to_gauss(&self) -> Result<Gauss, SeriesError> {
        match self {
            Literal::Complex { re, im } => Ok(Gauss::new(re.real()?, im.real()?)),
            _ => Ok(Gauss::real(self.real()?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SeriesSpec {
    Rational {
        num: Vec<Literal>,
        den: Vec<Literal>,
    },
    #[serde(rename = "logshift")]
    LogShift {
        a: Literal,
    },
    Sum {
        terms: Vec<SeriesSpec>,
    },
    Scale {
        factor: Literal,
        series: Box<SeriesSpec>,
    },
    Coeffs {
        values: Vec<Literal>,
    },
    Catalog {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, Value>,
        /// One-based component; whole system when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        component: Option<usize>,
    },
}

fn gauss_vec(values: &[Literal]) -> Result<Vec<Gauss>, SeriesError> {
    values.iter().map(Literal::to_gauss).collect()
}

fn param_text(v: &Value) -> Result<String, SeriesError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(SeriesError::Spec(format!("parameter value {other} is not a number"))),
    }
}

impl SeriesSpec {
    /// Builds the system this spec denotes (length one unless a whole
    /// catalog system is named).
    pub fn to_system(&self) -> Result<SystemOfSeries, SeriesError> {
        match self {
            SeriesSpec::Catalog { name, params, component } => {
                let params = params
                    .iter()
                    .map(|(k, v)| Ok((k.clone(), param_text(v)?)))
                    .collect::<Result<BTreeMap<_, _>, SeriesError>>()?;
                let sys = catalog(name, &params)?;
                match component {
                    None => Ok(sys),
                    Some(k) if (1..=sys.len()).contains(k) => Ok(SystemOfSeries::single(sys.component(k - 1).clone())),
                    Some(k) => Err(SeriesError::Spec(format!("`{name}` has no component {k}"))),
                }
            }
            _ => Ok(SystemOfSeries::single(self.to_series()?)),
        }
    }

    /// Builds a single series; a catalog entry must then select a component.
    pub fn to_series(&self) -> Result<PowerSeries, SeriesError> {
        let ctx = Context::default();
        match self {
            SeriesSpec::Rational { num, den } => {
                PowerSeries::rational(Polynomial::new(gauss_vec(num)?, &ctx), Polynomial::new(gauss_vec(den)?, &ctx))
            }
            SeriesSpec::LogShift { a } => PowerSeries::log_shift(a.to_gauss()?),
            SeriesSpec::Sum { terms } => {
                let parts = terms
                    .iter()
                    .map(|t| Ok((Gauss::one(), t.to_series()?)))
                    .collect::<Result<Vec<_>, SeriesError>>()?;
                Ok(PowerSeries::linear_combination(&parts))
            }
            SeriesSpec::Scale { factor, series } => Ok(series.to_series()?.scaled(&factor.to_gauss()?)),
            SeriesSpec::Coeffs { values } => Ok(PowerSeries::from_coeffs(gauss_vec(values)?)),
            SeriesSpec::Catalog { name, .. } => {
                let sys = self.to_system()?;
                if sys.len() == 1 {
                    Ok(sys.component(0).clone())
                } else {
                    Err(SeriesError::Spec(format!("catalog `{name}` is a system; pick a \"component\"")))
                }
            }
        }
    }
}

/// Parses a spec document: one object, or an array of single-series specs.
pub fn parse_document(text: &str) -> Result<SystemOfSeries, SeriesError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SeriesError::Spec(e.to_string()))?;
    match value {
        Value::Array(items) => {
            let mut out = Vec::with_capacity(items.len());
            for item in items {
                let spec: SeriesSpec = serde_json::from_value(item).map_err(|e| SeriesError::Spec(e.to_string()))?;
                out.push(spec.to_series()?);
            }
            SystemOfSeries::new(out)
        }
        other => {
            let spec: SeriesSpec = serde_json::from_value(other).map_err(|e| SeriesError::Spec(e.to_string()))?;
            spec.to_system()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Gauss;

    #[test]
    fn rational_document() {
        let sys = parse_document(r#"{"kind":"rational","num":["1"],"den":["1","-1"]}"#).unwrap();
        let f = sys.component(0);
        assert_eq!(f.coefficient(7).rational, Gauss::one());
    }

    #[test]
    fn numbers_decimals_and_complex() {
        let doc = r#"{"kind":"coeffs","values":[1, "0.25", {"re":"1/2","im":-3}]}"#;
        let f = parse_document(doc).unwrap().component(0).clone();
        assert_eq!(f.coefficient(1).rational, Gauss::ratio(1, 4));
        assert_eq!(f.coefficient(2).rational, Gauss::new((1, 2).into(), (-3).into()));
    }

    #[test]
    fn sum_and_scale_match_direct_construction() {
        let doc = r#"{"kind":"sum","terms":[
            {"kind":"rational","num":[1],"den":[1,-1]},
            {"kind":"scale","factor":"2","series":{"kind":"logshift","a":"3"}}]}"#;
        let f = parse_document(doc).unwrap().component(0).clone();
        // φ_2 = 1 + 2·(−1/18)
        assert_eq!(f.coefficient(2).rational, Gauss::ratio(8, 9));
    }

    #[test]
    fn catalog_whole_and_component() {
        let sys = parse_document(r#"{"kind":"catalog","name":"5.1-fw","params":{"p":2}}"#).unwrap();
        assert_eq!(sys.len(), 2);
        let one = parse_document(r#"{"kind":"catalog","name":"5.1-fw","params":{"p":"2"},"component":2}"#).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.component(0).analytics().known_poles.len(), 2);
    }

    #[test]
    fn array_is_a_system() {
        let doc = r#"[{"kind":"logshift","a":"3"},{"kind":"catalog","name":"5.2-g","component":2}]"#;
        assert_eq!(parse_document(doc).unwrap().len(), 2);
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            "{",
            r#"{"kind":"bogus"}"#,
            r#"{"kind":"rational","num":["1/0"],"den":["1"]}"#,
            r#"{"kind":"rational","num":["1"],"den":["0","1"]}"#,
            r#"{"kind":"logshift","a":"0"}"#,
            r#"[{"kind":"catalog","name":"5.1-fg"}]"#,
            r#"[]"#,
        ] {
            assert!(parse_document(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn spec_round_trips_through_serde() {
        let doc = r#"{"kind":"catalog","name":"5.1-fw","params":{"p":"2"},"component":1}"#;
        let spec: SeriesSpec = serde_json::from_str(doc).unwrap();
        let again: SeriesSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again);
    }
}
