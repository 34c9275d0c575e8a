//! Named example systems with closed forms.

use std::collections::BTreeMap;

use rug::Rational;

use super::{rational_from_str, PowerSeries, SeriesError, SystemOfSeries};
use crate::numerics::{Context, Gauss, Polynomial};

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub params: &'static [&'static str],
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "5.1-fg", description: "(1/(1-z^2), z/(1+z^2))", params: &[] },
    CatalogEntry { name: "5.1-fh", description: "(1/(1-z^2), 1/(1+z))", params: &[] },
    CatalogEntry { name: "5.1-fw", description: "(1/(1-z^2), 1/(1+z) + 1/(1-z/p)), p > 1", params: &["p"] },
    CatalogEntry { name: "5.2-f1f2", description: "(1/(1-z) + 1/(2-z), 1/(3-z))", params: &[] },
    CatalogEntry { name: "5.2-g", description: "(1/(1-z) + log(3-z), 1/(2-z) + log(10-z))", params: &[] },
    CatalogEntry {
        name: "5.3-h",
        description: "(1/(1-z) + 1/(2-z) + log(3-z), 1/(1-z) + log(3-z) + log(4-z))",
        params: &[],
    },
    CatalogEntry { name: "5.3-hhat", description: "(h1 - h2, h2) for the 5.3-h system", params: &[] },
];

pub fn catalog_names() -> &'static [CatalogEntry] {
    ENTRIES
}

fn poly(c: &[Gauss]) -> Polynomial<Gauss> {
    Polynomial::new(c.to_vec(), &Context::default())
}

fn ints(c: &[i64]) -> Polynomial<Gauss> {
    poly(&c.iter().map(|&x| Gauss::from_i64(x)).collect::<Vec<_>>())
}

fn rat(num: &[i64], den: &[i64]) -> PowerSeries {
    PowerSeries::rational(ints(num), ints(den)).expect("catalog denominators are nonzero at 0")
}

/// `1/(a − z)`
fn simple_pole(a: i64) -> PowerSeries {
    rat(&[1], &[a, -1])
}

fn log_shift(a: i64) -> PowerSeries {
    PowerSeries::log_shift(Gauss::from_i64(a)).expect("nonzero log argument")
}

fn named(f: PowerSeries, label: &str) -> PowerSeries {
    f.with_description(label)
}

/// Builds the named example system.
pub fn catalog(name: &str, params: &BTreeMap<String, String>) -> Result<SystemOfSeries, SeriesError> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| SeriesError::UnknownCatalog(name.to_string()))?;
    if let Some(extra) = params.keys().find(|k| !entry.params.contains(&k.as_str())) {
        return Err(SeriesError::InvalidParam {
            param: extra.clone(),
            reason: format!("`{name}` takes no parameter `{extra}`"),
        });
    }
    let f = || named(rat(&[1], &[1, 0, -1]), "1/(1-z^2)");
    let components = match name {
        "5.1-fg" => vec![f(), named(rat(&[0, 1], &[1, 0, 1]), "z/(1+z^2)")],
        "5.1-fh" => vec![f(), named(rat(&[1], &[1, 1]), "1/(1+z)")],
        "5.1-fw" => {
            let raw =
                params.get("p").ok_or_else(|| SeriesError::MissingParam { name: name.into(), param: "p".into() })?;
            let p = rational_from_str(raw, "p")?;
            if p <= 1 {
                return Err(SeriesError::InvalidParam { param: "p".into(), reason: format!("p = {p} must exceed 1") });
            }
            // 1/(1 − z/p) = p/(p − z)
            let pg = Gauss::real(p.clone());
            let shifted = PowerSeries::rational(poly(std::slice::from_ref(&pg)), poly(&[pg, -Gauss::one()]))
                .expect("p > 1 so the pole is off the origin");
            let w = rat(&[1], &[1, 1]).add(&shifted);
            vec![f(), named(w, &format!("1/(1+z) + 1/(1-z/{p})"))]
        }
        "5.2-f1f2" => {
            vec![named(simple_pole(1).add(&simple_pole(2)), "1/(1-z) + 1/(2-z)"), named(simple_pole(3), "1/(3-z)")]
        }
        "5.2-g" => vec![
            named(simple_pole(1).add(&log_shift(3)), "1/(1-z) + log(3-z)"),
            named(simple_pole(2).add(&log_shift(10)), "1/(2-z) + log(10-z)"),
        ],
        "5.3-h" | "5.3-hhat" => {
            let h1 = named(simple_pole(1).add(&simple_pole(2)).add(&log_shift(3)), "1/(1-z) + 1/(2-z) + log(3-z)");
            let h2 = named(simple_pole(1).add(&log_shift(3)).add(&log_shift(4)), "1/(1-z) + log(3-z) + log(4-z)");
            if name == "5.3-h" {
                vec![h1, h2]
            } else {
                vec![named(h1.sub(&h2), "h1 - h2"), h2]
            }
        }
        _ => unreachable!("entry table and match arms agree"),
    };
    SystemOfSeries::new(components)
}

/// Rational parameter helper for callers that hold numbers.
pub fn params_of(pairs: &[(&str, Rational)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}
