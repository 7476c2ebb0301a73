//! Condition verdicts with machine-recheckable evidence payloads.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "brute-force")]
    BruteForce,
    #[serde(rename = "witness")]
    Witness,
    #[serde(rename = "derived-by-implication")]
    DerivedByImplication,
    #[serde(rename = "fixture-asserted")]
    FixtureAsserted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ConditionStatus {
    Holds { method: Method, evidence: Value },
    Fails { method: Method, evidence: Value },
    Unknown { reason: String },
}

impl ConditionStatus {
    pub fn holds(method: Method, evidence: Value) -> ConditionStatus {
        ConditionStatus::Holds { method, evidence }
    }

    pub fn fails(method: Method, evidence: Value) -> ConditionStatus {
        ConditionStatus::Fails { method, evidence }
    }

    pub fn unknown(reason: impl Into<String>) -> ConditionStatus {
        ConditionStatus::Unknown { reason: reason.into() }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, ConditionStatus::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, ConditionStatus::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ConditionStatus::Unknown { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            ConditionStatus::Holds { .. } => "holds",
            ConditionStatus::Fails { .. } => "fails",
            ConditionStatus::Unknown { .. } => "unknown",
        }
    }

    pub fn method(&self) -> Option<Method> {
        match self {
            ConditionStatus::Holds { method, .. } | ConditionStatus::Fails { method, .. } => {
                Some(*method)
            }
            ConditionStatus::Unknown { .. } => None,
        }
    }
}
