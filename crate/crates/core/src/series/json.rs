//! JSON encoding of Laurent polynomials and matrices.
//!
//! A polynomial is `{"terms": [{"exp": k, "re": "p/q", "im": "p/q"}, ...]}`
//! with terms in increasing exponent order; a matrix is a 2×2 array of them.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::parse_rational;
use super::{GaussianRational, LaurentMatrix, LaurentPoly};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: i32,
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms()
                .iter()
                .map(|(k, c)| TermRepr {
                    exp: *k,
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let re = parse_rational(&t.re).map_err(D::Error::custom)?;
            let im = parse_rational(&t.im).map_err(D::Error::custom)?;
            terms.push((t.exp, GaussianRational::new(re, im)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [[&self.a, &self.b], [&self.c, &self.d]].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[LaurentPoly; 2]; 2]>::deserialize(deserializer)?;
        Ok(LaurentMatrix::new(a, b, c, d))
    }
}
