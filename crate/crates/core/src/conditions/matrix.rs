//! Condition matrices: all catalog entries for one (ring, p), with
//! implication closure and consistency checking on top of the direct
//! checker verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::catalog::{ConditionId, ImplicationGraph};
use super::check::{check, CheckContext};
use super::closure::{implication_closure, Contradiction};
use super::status::{ConditionStatus, Method};

#[derive(Debug, Clone)]
pub struct ConditionMatrix {
    pub ring: String,
    pub p: u64,
    /// Checker verdicts before closure.
    pub direct: BTreeMap<ConditionId, ConditionStatus>,
    /// Verdicts after implication closure.
    pub closed: BTreeMap<ConditionId, ConditionStatus>,
    pub contradictions: Vec<Contradiction>,
}

impl ConditionMatrix {
    pub fn status(&self, cond: ConditionId) -> &ConditionStatus {
        &self.closed[&cond]
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            ring: self.ring.clone(),
            p: self.p,
            conditions: ConditionId::ALL
                .iter()
                .map(|c| MatrixCellJson {
                    condition: c.mnemonic().to_string(),
                    roman: c.roman().to_string(),
                    status: self.closed[c].clone(),
                })
                .collect(),
            contradictions: self.contradictions.clone(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ring {}  p = {}\n", self.ring, self.p));
        for c in ConditionId::ALL {
            let s = &self.closed[&c];
            let method = s
                .method()
                .map(|m| format!("{}", serde_json::to_value(m).unwrap().as_str().unwrap_or("")))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "  {:6} {:18} {:8} {}\n",
                format!("({})", c.roman()),
                c.mnemonic(),
                s.verdict(),
                method,
            ));
        }
        if self.contradictions.is_empty() {
            out.push_str("  closure: consistent\n");
        } else {
            for c in &self.contradictions {
                out.push_str(&format!(
                    "  CONTRADICTION at {} via {}\n",
                    c.condition.mnemonic(),
                    c.via
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixCellJson {
    pub condition: String,
    pub roman: String,
    pub status: ConditionStatus,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub p: u64,
    pub conditions: Vec<MatrixCellJson>,
    pub contradictions: Vec<Contradiction>,
}

/// Run every checker directly (no closure).
pub fn direct_statuses(ctx: &CheckContext) -> BTreeMap<ConditionId, ConditionStatus> {
    ConditionId::ALL
        .iter()
        .map(|&c| (c, check(ctx, c)))
        .collect()
}

/// The full matrix: direct checks, then implication closure.
pub fn condition_matrix(ctx: &CheckContext) -> ConditionMatrix {
    condition_matrix_with_assertions(ctx, &[])
}

/// The full matrix with fixture-asserted cells merged in before closure.
/// An assertion lands on an Unknown cell; a clash with an independently
/// determined verdict is recorded as a contradiction and the checker verdict
/// is kept.
pub fn condition_matrix_with_assertions(
    ctx: &CheckContext,
    assertions: &[(ConditionId, ConditionStatus)],
) -> ConditionMatrix {
    let direct = direct_statuses(ctx);
    let mut merged = direct.clone();
    let mut contradictions = Vec::new();
    for (cond, asserted) in assertions {
        debug_assert!(matches!(
            asserted.method(),
            None | Some(Method::FixtureAsserted)
        ));
        match &merged[cond] {
            ConditionStatus::Unknown { .. } => {
                merged.insert(*cond, asserted.clone());
            }
            existing if existing.verdict() == asserted.verdict() => {}
            existing => {
                contradictions.push(Contradiction {
                    condition: *cond,
                    existing: existing.verdict().into(),
                    implied: asserted.verdict().into(),
                    via: "fixture assertion".into(),
                });
            }
        }
    }
    let graph = ImplicationGraph::standard();
    let (closed, mut closure_contradictions) = implication_closure(&merged, &graph);
    contradictions.append(&mut closure_contradictions);
    ConditionMatrix {
        ring: ctx.ring.spec_string(),
        p: ctx.p,
        direct,
        closed,
        contradictions,
    }
}
