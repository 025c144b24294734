//! File schemas that bundle several library types.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{ExactSystem, GaussRational, LaurentPoly, MonomialIndex, ZkIndex};
use crate::moments::MomentData;

/// Moment data whose index type follows the `"semigroup"` field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMomentData {
    Planar(MomentData<MonomialIndex>),
    Torus(MomentData<ZkIndex>),
}

impl AnyMomentData {
    pub fn from_value(value: Value) -> Result<Self, serde_json::Error> {
        let torus = value.get("semigroup").and_then(Value::as_str) == Some("Zk");
        if torus {
            serde_json::from_value(value).map(AnyMomentData::Torus)
        } else {
            serde_json::from_value(value).map(AnyMomentData::Planar)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        AnyMomentData::from_value(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyMomentData::Planar(d) => serde_json::to_string(d),
            AnyMomentData::Torus(d) => serde_json::to_string(d),
        }
        .expect("moment data serializes")
    }
}

/// Exact moments on the triangle `k + l <= degree`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactMomentFile {
    pub degree: u32,
    pub values: Vec<(MonomialIndex, GaussRational)>,
}

impl ExactMomentFile {
    pub fn new(degree: u32, system: &ExactSystem) -> Self {
        ExactMomentFile { degree, values: system.iter().map(|(k, v)| (*k, v.clone())).collect() }
    }

    pub fn system(&self) -> ExactSystem {
        self.values.iter().cloned().collect()
    }
}

/// A target polynomial together with the monomial basis for a Gram search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SosProblem {
    pub target: LaurentPoly,
    pub basis: Vec<MonomialIndex>,
}
