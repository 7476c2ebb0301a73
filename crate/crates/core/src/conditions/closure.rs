//! Implication closure over the condition graph.
//!
//! Holds propagates forward along every edge whose tails all hold (joint
//! edges require every tail); Fails propagates backward along single-tail
//! edges only. Propagation never overwrites an independently determined
//! verdict: a clash is recorded as a contradiction, which signals a defect
//! in a checker or in the graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::catalog::{ConditionId, ImplicationGraph};
use super::status::{ConditionStatus, Method};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Contradiction {
    pub condition: ConditionId,
    pub existing: String,
    pub implied: String,
    pub via: String,
}

fn edge_label(tails: &[ConditionId], head: ConditionId) -> String {
    let t: Vec<&str> = tails.iter().map(|c| c.mnemonic()).collect();
    format!("{} => {}", t.join(" + "), head.mnemonic())
}

/// Propagate to a fixpoint; returns the closed statuses and any
/// contradictions found. Monotone (never downgrades a verdict) and
/// idempotent.
pub fn implication_closure(
    statuses: &BTreeMap<ConditionId, ConditionStatus>,
    graph: &ImplicationGraph,
) -> (BTreeMap<ConditionId, ConditionStatus>, Vec<Contradiction>) {
    let mut out = statuses.clone();
    let mut contradictions = Vec::new();
    loop {
        let mut changed = false;
        for edge in &graph.edges {
            let label = edge_label(&edge.tails, edge.head);
            // Forward: all tails hold => head holds.
            let all_tails_hold = edge
                .tails
                .iter()
                .all(|t| out.get(t).map_or(false, |s| s.is_holds()));
            if all_tails_hold {
                match out.get(&edge.head) {
                    Some(s) if s.is_fails() => {
                        if !contradictions.iter().any(|c: &Contradiction| {
                            c.condition == edge.head && c.via == label
                        }) {
                            contradictions.push(Contradiction {
                                condition: edge.head,
                                existing: s.verdict().into(),
                                implied: "holds".into(),
                                via: label.clone(),
                            });
                        }
                    }
                    Some(s) if s.is_holds() => {}
                    _ => {
                        out.insert(
                            edge.head,
                            ConditionStatus::holds(
                                Method::DerivedByImplication,
                                json!({ "via": label }),
                            ),
                        );
                        changed = true;
                    }
                }
            }
            // Backward, single-tail edges only: head fails => tail fails.
            if edge.tails.len() == 1 {
                let head_fails = out.get(&edge.head).map_or(false, |s| s.is_fails());
                if head_fails {
                    let tail = edge.tails[0];
                    match out.get(&tail) {
                        Some(s) if s.is_holds() => {
                            if !contradictions
                                .iter()
                                .any(|c| c.condition == tail && c.via == label)
                            {
                                contradictions.push(Contradiction {
                                    condition: tail,
                                    existing: s.verdict().into(),
                                    implied: "fails".into(),
                                    via: label.clone(),
                                });
                            }
                        }
                        Some(s) if s.is_fails() => {}
                        _ => {
                            out.insert(
                                tail,
                                ConditionStatus::fails(
                                    Method::DerivedByImplication,
                                    json!({ "via": label, "direction": "contrapositive" }),
                                ),
                            );
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (out, contradictions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn holds() -> ConditionStatus {
        ConditionStatus::holds(Method::Witness, json!({}))
    }

    fn fails() -> ConditionStatus {
        ConditionStatus::fails(Method::Witness, json!({}))
    }

    #[test]
    fn forward_propagation_through_equivalences() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        let mut start = BTreeMap::new();
        start.insert(PthRootsInPrime, holds());
        let (closed, contra) = implication_closure(&start, &g);
        assert!(contra.is_empty());
        for c in [FinLev, FinLevPrime, TeichImageFin, PthRootsIn, Lev1, PrModP2, VImage] {
            assert!(closed.get(&c).map_or(false, |s| s.is_holds()), "{c:?}");
        }
    }

    #[test]
    fn joint_edges_need_all_tails() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        let mut start = BTreeMap::new();
        start.insert(Lev1, holds());
        let (closed, _) = implication_closure(&start, &g);
        assert!(closed.get(&FinLev).is_none() || closed[&FinLev].is_unknown());
        start.insert(SomePower, holds());
        let (closed, contra) = implication_closure(&start, &g);
        assert!(contra.is_empty());
        assert!(closed[&FinLev].is_holds());
    }

    #[test]
    fn backward_failure_propagation() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        let mut start = BTreeMap::new();
        // SOMEPOWER fails => PMODP2 fails (single-tail edge PMODP2 -> SOMEPOWER).
        start.insert(SomePower, fails());
        let (closed, contra) = implication_closure(&start, &g);
        assert!(contra.is_empty());
        assert!(closed[&PModP2].is_fails());
        assert!(closed[&VImageFin].is_fails());
        // And onward: V-IMAGE-ALL and V-IMAGE fail through the chain.
        assert!(closed[&VImageAll].is_fails());
        assert!(closed[&VImage].is_fails());
        // Joint tails do not backward-propagate: LEV1 stays undetermined.
        assert!(!closed.contains_key(&Lev1));
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        let mut start = BTreeMap::new();
        start.insert(PthRootsModP, holds());
        start.insert(SomePower, holds());
        let (closed1, c1) = implication_closure(&start, &g);
        let (closed2, c2) = implication_closure(&closed1, &g);
        assert!(c1.is_empty() && c2.is_empty());
        assert_eq!(closed1, closed2);
        // Monotone: everything in the input keeps its verdict.
        for (k, v) in &start {
            assert_eq!(closed1[k].verdict(), v.verdict());
        }
    }

    #[test]
    fn contradiction_detection() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        let mut start = BTreeMap::new();
        start.insert(Surj, holds());
        start.insert(TeichImage, fails());
        let (_, contra) = implication_closure(&start, &g);
        assert!(!contra.is_empty());
        assert!(contra.iter().any(|c| c.condition == TeichImage || c.condition == Surj));
    }
}
