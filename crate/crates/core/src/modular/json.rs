//! JSON form of a [`ModularDatum`].
//!
//! ```text
//! {
//!   "rank": N, "level": k,
//!   "alcove": [[λ_1, …, λ_{N-1}], …],          // alcove order
//!   "conformal_weights": ["n/d", …],
//!   "theta": ["q", …],                         // θ_i = exp(2πi q), q in [0,1)
//!   "s": [[[re, im], …], …],                    // row-major
//!   "t": [[re, im], …],                        // diagonal of T
//!   "conjugation": [j, …],                     // index of the dual
//!   "zeta": [re, im],
//!   "qdim": [d, …]
//! }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::liealg::{Alcove, Rational};
use crate::linalg::CMatrix;
use crate::modular::{ModularDatum, RationalPhase};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatumJson {
    pub rank: usize,
    pub level: u32,
    pub alcove: Vec<Vec<u32>>,
    pub conformal_weights: Vec<String>,
    pub theta: Vec<RationalPhase>,
    pub s: Vec<Vec<[f64; 2]>>,
    pub t: Vec<[f64; 2]>,
    pub conjugation: Vec<usize>,
    pub zeta: [f64; 2],
    pub qdim: Vec<f64>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDatum(msg.into())
}

impl From<&ModularDatum> for DatumJson {
    fn from(d: &ModularDatum) -> Self {
        let n = d.len();
        DatumJson {
            rank: d.rank,
            level: d.level,
            alcove: d
                .alcove
                .weights()
                .iter()
                .map(|w| w.labels().to_vec())
                .collect(),
            conformal_weights: d.conformal_weights.iter().map(|r| r.to_string()).collect(),
            theta: d.theta.clone(),
            s: (0..n)
                .map(|i| (0..n).map(|j| pair(d.s[(i, j)])).collect())
                .collect(),
            t: d.t.iter().map(|&z| pair(z)).collect(),
            conjugation: d.conjugation.clone(),
            zeta: pair(d.zeta),
            qdim: d.qdim.clone(),
        }
    }
}

impl DatumJson {
    /// Validate against the exact data recomputed from `(rank, level)` and
    /// take S, T, ζ from the document.
    pub fn into_datum(self) -> Result<ModularDatum> {
        if self.rank < 2 {
            return Err(malformed(format!("rank must be >= 2, got {}", self.rank)));
        }
        let alcove = Alcove::new(self.rank, self.level);
        let n = alcove.len();
        let labels: Vec<Vec<u32>> = alcove
            .weights()
            .iter()
            .map(|w| w.labels().to_vec())
            .collect();
        if self.alcove != labels {
            return Err(malformed(
                "alcove does not match the enumeration for (rank, level)",
            ));
        }
        let weights = alcove.conformal_weights();
        let parsed: std::result::Result<Vec<Rational>, _> = self
            .conformal_weights
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect();
        if parsed.map_err(|e| malformed(format!("conformal weight: {e}")))? != weights {
            return Err(malformed(
                "conformal weights disagree with the exact values",
            ));
        }
        let theta: Vec<RationalPhase> = weights
            .iter()
            .map(|&w| RationalPhase::from_conformal_weight(w))
            .collect();
        if self.theta != theta {
            return Err(malformed("theta disagrees with the exact twists"));
        }
        if self.conjugation != alcove.conjugation() {
            return Err(malformed("conjugation does not match label reversal"));
        }
        if self.s.len() != n || self.s.iter().any(|row| row.len() != n) {
            return Err(malformed(format!("s must be {n}x{n}")));
        }
        if self.t.len() != n || self.qdim.len() != n {
            return Err(malformed(format!("t and qdim must have length {n}")));
        }
        let zeta = complex(self.zeta);
        let t: Vec<Complex64> = self.t.iter().map(|&p| complex(p)).collect();
        for (i, (tt, th)) in t.iter().zip(&theta).enumerate() {
            if (tt * zeta - th.to_complex()).norm() > 1e-9 {
                return Err(malformed(format!("t[{i}] is not theta[{i}] / zeta")));
            }
        }
        let s = CMatrix::from_fn(n, n, |i, j| complex(self.s[i][j]));
        Ok(ModularDatum {
            rank: self.rank,
            level: self.level,
            alcove,
            conformal_weights: weights,
            theta,
            s,
            t,
            conjugation: self.conjugation,
            zeta,
            qdim: self.qdim,
        })
    }
}

impl ModularDatum {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&DatumJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<DatumJson>(text)?.into_datum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for (rank, level) in [(2, 4), (3, 2), (4, 1)] {
            let d = ModularDatum::new(rank, level).unwrap();
            let text = d.to_json().unwrap();
            let back = ModularDatum::from_json(&text).unwrap();
            assert_eq!(back.s, d.s);
            assert_eq!(back.t, d.t);
            assert_eq!(back.theta, d.theta);
            assert_eq!(back.to_json().unwrap(), text);
        }
    }

    #[test]
    fn schema_fields() {
        let d = ModularDatum::new(2, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&d.to_json().unwrap()).unwrap();
        assert_eq!(v["alcove"], serde_json::json!([[0], [1], [2]]));
        assert_eq!(
            v["conformal_weights"],
            serde_json::json!(["0", "3/16", "1/2"])
        );
        assert_eq!(v["theta"], serde_json::json!(["0/1", "13/16", "1/2"]));
        assert_eq!(v["conjugation"], serde_json::json!([0, 1, 2]));
    }

    #[test]
    fn tampered_documents_are_rejected() {
        let d = ModularDatum::new(3, 1).unwrap();
        let mut doc = DatumJson::from(&d);
        doc.theta[1] = RationalPhase::one();
        assert!(matches!(doc.into_datum(), Err(Error::MalformedDatum(_))));

        let mut doc = DatumJson::from(&d);
        doc.alcove.swap(1, 2);
        assert!(doc.into_datum().is_err());

        let mut doc = DatumJson::from(&d);
        doc.s.pop();
        assert!(doc.into_datum().is_err());

        assert!(matches!(ModularDatum::from_json("{"), Err(Error::Json(_))));
    }
}
