use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::monomial::compare_vars;
use super::{Monomial, MultiPoly, PolyError, Rational};

/// Wire form of a polynomial; big integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> Self {
        PolyJson::from(&p)
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = PolyError;

    fn try_from(j: PolyJson) -> Result<Self, Self::Error> {
        let mut order: Vec<usize> = (0..j.vars.len()).collect();
        order.sort_by(|&a, &b| compare_vars(&j.vars[a], &j.vars[b]));
        let vars: Vec<String> = order.iter().map(|&i| j.vars[i].clone()).collect();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return Err(PolyError::Json("duplicate variable".into()));
        }
        let mut terms = BTreeMap::new();
        for t in j.terms {
            if t.exp.len() != vars.len() {
                return Err(PolyError::Json("exponent length does not match variable list".into()));
            }
            let num: BigInt = t.num.parse().map_err(|_| PolyError::Json(format!("bad numerator {}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| PolyError::Json(format!("bad denominator {}", t.den)))?;
            if den.is_zero() {
                return Err(PolyError::Json("zero denominator".into()));
            }
            let exp = Monomial(order.iter().map(|&i| t.exp[i]).collect());
            let entry = terms.entry(exp).or_insert_with(Rational::zero);
            *entry += Rational::new(num, den);
        }
        Ok(MultiPoly::from_parts(vars, terms))
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(deserializer)?;
        MultiPoly::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p: MultiPoly = "3*u^2*w - x/2".parse().unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["vars"], serde_json::json!(["u", "w", "x"]));
        assert_eq!(v["terms"][0], serde_json::json!({"exp": [2, 1, 0], "num": "3", "den": "1"}));
        assert_eq!(v["terms"][1], serde_json::json!({"exp": [0, 0, 1], "num": "-1", "den": "2"}));
        let back: MultiPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn accepts_unsorted_variables_and_rejects_bad_terms() {
        let j = serde_json::json!({"vars": ["x", "u"], "terms": [{"exp": [1, 2], "num": "5", "den": "1"}]});
        let p: MultiPoly = serde_json::from_value(j).unwrap();
        assert_eq!(p, "5*u^2*x".parse().unwrap());
        let bad = serde_json::json!({"vars": ["x"], "terms": [{"exp": [1, 2], "num": "5", "den": "1"}]});
        assert!(serde_json::from_value::<MultiPoly>(bad).is_err());
        let zero_den = serde_json::json!({"vars": ["x"], "terms": [{"exp": [1], "num": "5", "den": "0"}]});
        assert!(serde_json::from_value::<MultiPoly>(zero_den).is_err());
    }
}
