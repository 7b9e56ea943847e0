//! JSON norm definitions.
//!
//! ```json
//! {"kind": "pnorm", "p": 4}
//! {"kind": "pnorm", "p": "inf"}
//! {"kind": "quadratic", "form": [[2, 1], [1, 2]]}
//! {"kind": "polygon", "vertices": [[1, -1], [1, 1], [-1, 1], [-1, -1]]}
//! {"kind": "linear_image", "inner": {"kind": "pnorm", "p": 3}, "map": [[1, 1], [0, 1]]}
//! ```
//!
//! Each kind accepts exactly its own fields; anything else is rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::vec2::{Mat2, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormDef {
    Quadratic { form: Mat2 },
    Pnorm { p: PValue },
    Polygon { vertices: Vec<Vec2> },
    LinearImage { inner: Box<NormDef>, map: Mat2 },
}

/// Exponent of a p-norm: a number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Finite(f64),
    Infinite(InfTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

impl PValue {
    pub fn value(self) -> f64 {
        match self {
            PValue::Finite(p) => p,
            PValue::Infinite(_) => f64::INFINITY,
        }
    }

    pub fn from_value(p: f64) -> Self {
        if p == f64::INFINITY {
            PValue::Infinite(InfTag::Inf)
        } else {
            PValue::Finite(p)
        }
    }
}

impl NormDef {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("norm definitions always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let p: NormDef = NormDef::from_json(r#"{"kind":"pnorm","p":"inf"}"#).unwrap();
        assert_eq!(p, NormDef::Pnorm { p: PValue::Infinite(InfTag::Inf) });
        let q = NormDef::from_json(r#"{"kind":"quadratic","form":[[2,1],[1,2]]}"#).unwrap();
        assert_eq!(q, NormDef::Quadratic { form: Mat2([[2.0, 1.0], [1.0, 2.0]]) });
        let l = NormDef::from_json(r#"{"kind":"linear_image","inner":{"kind":"pnorm","p":3},"map":[[1,1],[0,1]]}"#)
            .unwrap();
        assert!(matches!(l, NormDef::LinearImage { .. }));
        let poly = NormDef::from_json(r#"{"kind":"polygon","vertices":[[1,-1],[1,1],[-1,1],[-1,-1]]}"#).unwrap();
        assert!(matches!(poly, NormDef::Polygon { ref vertices } if vertices.len() == 4));
    }

    #[test]
    fn rejects_foreign_fields() {
        let err = NormDef::from_json(r#"{"kind":"pnorm","p":2,"form":[[1,0],[0,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("form"), "{err}");
        let err = NormDef::from_json(r#"{"kind":"quadratic"}"#).unwrap_err();
        assert!(err.to_string().contains("form"), "{err}");
        let err = NormDef::from_json(r#"{"kind":"sphere"}"#).unwrap_err();
        assert!(err.to_string().contains("sphere"), "{err}");
        assert!(NormDef::from_json(r#"{"kind":"pnorm","p":"infinity"}"#).is_err());
    }

    #[test]
    fn inf_round_trips_as_string() {
        let def = NormDef::Pnorm { p: PValue::from_value(f64::INFINITY) };
        assert_eq!(def.to_json(), r#"{"kind":"pnorm","p":"inf"}"#);
        assert_eq!(NormDef::from_json(&def.to_json()).unwrap(), def);
    }
}
