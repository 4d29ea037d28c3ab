use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{precision_digits, BigFloat, Ring};

use super::TruncatedSeries;

/// Text form of a coefficient inside the series JSON document.
pub trait CoeffText: Ring {
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Result<Self>;
}

impl CoeffText for BigRational {
    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
}

impl CoeffText for BigFloat {
    fn to_text(&self) -> String {
        self.to_decimal_string(precision_digits() as usize)
    }

    fn from_text(s: &str) -> Result<Self> {
        BigFloat::from_decimal_str(s)
    }
}

/// Serialized series: `{vars, order_x, ring, terms: [[i, j, k, "c"], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub vars: Vec<String>,
    pub order_x: usize,
    pub ring: String,
    pub terms: Vec<(usize, u32, u32, String)>,
}

impl<R: CoeffText> TruncatedSeries<R> {
    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            vars: vec!["x".into(), "y".into(), "u".into()],
            order_x: self.order_x(),
            ring: self.ring.to_string(),
            terms: self
                .terms()
                .map(|((i, j, k), c)| (i, j, k, c.to_text()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &SeriesDoc) -> Result<Self> {
        if doc.vars != ["x", "y", "u"] {
            return Err(Error::Format(format!("unexpected variables {:?}", doc.vars)));
        }
        let tag = R::ring_tag().to_string();
        let same_family = doc.ring == tag
            || (doc.ring.starts_with("bigfloat:") && tag.starts_with("bigfloat:"));
        if !same_family {
            return Err(Error::RingMismatch {
                left: doc.ring.clone(),
                right: tag,
            });
        }
        let mut terms = Vec::with_capacity(doc.terms.len());
        for (i, j, k, c) in &doc.terms {
            if *i > doc.order_x {
                return Err(Error::Format(format!(
                    "term x^{i} beyond order {}",
                    doc.order_x
                )));
            }
            terms.push((*i, *j, *k, R::from_text(c)?));
        }
        Ok(Self::from_terms(doc.order_x, terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("series document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SeriesDoc =
            serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Analytic;
    use crate::series::Var;

    #[test]
    fn rational_round_trip() {
        let s = TruncatedSeries::<BigRational>::var(Var::X, 3)
            .mul(&TruncatedSeries::var(Var::Y, 3))
            .unwrap()
            .exp()
            .unwrap();
        let text = s.to_json();
        assert!(text.starts_with(r#"{"vars":["x","y","u"],"order_x":3,"ring":"rational","terms":[[0,0,0,"1/1"],[1,1,0,"1/1"],[2,2,0,"1/2"]"#));
        assert_eq!(TruncatedSeries::from_json(&text).unwrap(), s);
    }

    #[test]
    fn bigfloat_round_trip() {
        let s = TruncatedSeries::<BigFloat>::var(Var::X, 4).exp().unwrap();
        let back = TruncatedSeries::<BigFloat>::from_json(&s.to_json()).unwrap();
        let d = back.sub(&s).unwrap();
        for (_, c) in d.terms() {
            assert!(c.abs().value_f64() < 1e-45);
        }
        assert!(TruncatedSeries::<BigRational>::from_json(&s.to_json()).is_err());
    }
}
