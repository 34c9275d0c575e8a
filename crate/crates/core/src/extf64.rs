//! Serde helpers writing non-finite floats as the strings `"inf"`, `"-inf"`
//! and `"nan"`, so reports survive a JSON round trip.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Num(f64),
    Text(String),
}

fn to_repr(x: f64) -> Repr {
    if x.is_finite() {
        Repr::Num(x)
    } else if x.is_nan() {
        Repr::Text("nan".into())
    } else if x > 0.0 {
        Repr::Text("inf".into())
    } else {
        Repr::Text("-inf".into())
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
    match r {
        Repr::Num(x) => Ok(x),
        Repr::Text(s) => match s.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            other => Err(E::custom(format!("expected a number, got `{other}`"))),
        },
    }
}

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    to_repr(*x).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod map {
    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, f64>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<usize, Repr> = m.iter().map(|(k, v)| (*k, to_repr(*v))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, f64>, D::Error> {
        let raw = BTreeMap::<usize, Repr>::deserialize(d)?;
        raw.into_iter().map(|(k, v)| Ok((k, from_repr::<D::Error>(v)?))).collect()
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| to_repr(*x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr::<D::Error>).collect()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize, Debug, PartialEq)]
    struct Probe {
        #[serde(with = "super")]
        r: f64,
        #[serde(with = "super::map")]
        m: BTreeMap<usize, f64>,
    }

    #[test]
    fn infinity_round_trips() {
        let p = Probe { r: f64::INFINITY, m: [(1, 2.5), (2, f64::INFINITY)].into() };
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"r":"inf","m":{"1":2.5,"2":"inf"}}"#);
        assert_eq!(serde_json::from_str::<Probe>(&text).unwrap(), p);
        assert!(serde_json::from_str::<Probe>(r#"{"r":"big","m":{}}"#).is_err());
    }
}
