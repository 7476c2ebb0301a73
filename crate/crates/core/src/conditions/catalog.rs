//! The condition catalog and the implication graph among the conditions.

use serde::{Deserialize, Serialize};

/// Frobenius surjectivity conditions on a ring R at a prime p. Mnemonics
/// are stable identifiers; the roman labels give the catalog position
/// (primed variants are the single-level specializations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    /// F surjective on the full Witt ring W(R).
    Surj,
    /// F: W_{p^n}(R) -> W_{p^(n-1)}(R) surjective for all n >= 2.
    FinLev,
    /// F: W_{p^2}(R) -> W_p(R) surjective.
    FinLevPrime,
    /// Every x in W(R) is congruent to a Teichmuller lift mod pW(R).
    TeichDense,
    /// The image of F on W(R) contains all Teichmuller lifts.
    TeichImage,
    /// The image of F at every finite level contains all (r, 0, ..., 0).
    TeichImageFin,
    /// The image of F: W_{p^2} -> W_p contains all (r, 0).
    TeichImageFinPrime,
    /// The image of F on W(R) contains V(1).
    VImage,
    /// The image of F at every finite level n >= 2 contains V(1).
    VImageAll,
    /// The image of F: W_{p^n} -> W_{p^(n-1)} contains V^(n-1)(1) for n >= 2.
    VImageFin2,
    /// The image of F: W_{p^2} -> W_p contains V(1).
    VImageFin,
    /// F^n: W_{p^n}(R) -> W_1(R) surjective for all n >= 1.
    Lev1,
    /// F: W_p(R) -> W_1(R) surjective.
    Lev1Prime,
    /// p is invertible in R.
    PInv,
    /// Nested balls B(r_i, I_i) always have a common point.
    Spher,
    /// The p-th power map on R/pI_inf is surjective.
    PthRootsIInf,
    /// The p-th power map on R/pI_n is surjective for every n >= 1.
    PthRootsIn,
    /// The p-th power map on R/pI_1 is surjective.
    PthRootsInPrime,
    /// For every r there is s with s^p = pr (mod p^2 R).
    PrModP2,
    /// There are r, s with r^p = -p (mod psR) and s in I_1.
    PModP2,
    /// There are r, s with r^p = -p (mod psR) and s^N in pR for some N > 0.
    SomePower,
    /// The Frobenius on R/pR is surjective.
    PthRootsModP,
}

impl ConditionId {
    pub const ALL: [ConditionId; 22] = [
        ConditionId::Surj,
        ConditionId::FinLev,
        ConditionId::FinLevPrime,
        ConditionId::TeichDense,
        ConditionId::TeichImage,
        ConditionId::TeichImageFin,
        ConditionId::TeichImageFinPrime,
        ConditionId::VImage,
        ConditionId::VImageAll,
        ConditionId::VImageFin2,
        ConditionId::VImageFin,
        ConditionId::Lev1,
        ConditionId::Lev1Prime,
        ConditionId::PInv,
        ConditionId::Spher,
        ConditionId::PthRootsIInf,
        ConditionId::PthRootsIn,
        ConditionId::PthRootsInPrime,
        ConditionId::PrModP2,
        ConditionId::PModP2,
        ConditionId::SomePower,
        ConditionId::PthRootsModP,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            ConditionId::Surj => "SURJ",
            ConditionId::FinLev => "FINLEV",
            ConditionId::FinLevPrime => "FINLEV'",
            ConditionId::TeichDense => "TEICH-DENSE",
            ConditionId::TeichImage => "TEICH-IMAGE",
            ConditionId::TeichImageFin => "TEICH-IMAGE-FIN",
            ConditionId::TeichImageFinPrime => "TEICH-IMAGE-FIN'",
            ConditionId::VImage => "V-IMAGE",
            ConditionId::VImageAll => "V-IMAGE-ALL",
            ConditionId::VImageFin2 => "V-IMAGE-FIN2",
            ConditionId::VImageFin => "V-IMAGE-FIN",
            ConditionId::Lev1 => "LEV1",
            ConditionId::Lev1Prime => "LEV1'",
            ConditionId::PInv => "P-INV",
            ConditionId::Spher => "SPHER",
            ConditionId::PthRootsIInf => "PTHROOTS-IINF",
            ConditionId::PthRootsIn => "PTHROOTS-IN",
            ConditionId::PthRootsInPrime => "PTHROOTS-IN'",
            ConditionId::PrModP2 => "PR-MODP2",
            ConditionId::PModP2 => "PMODP2",
            ConditionId::SomePower => "SOMEPOWER",
            ConditionId::PthRootsModP => "PTHROOTS-MODP",
        }
    }

    pub fn roman(self) -> &'static str {
        match self {
            ConditionId::Surj => "i",
            ConditionId::FinLev => "ii",
            ConditionId::FinLevPrime => "ii'",
            ConditionId::TeichDense => "iii",
            ConditionId::TeichImage => "iv",
            ConditionId::TeichImageFin => "v",
            ConditionId::TeichImageFinPrime => "v'",
            ConditionId::VImage => "vi",
            ConditionId::VImageAll => "vii",
            ConditionId::VImageFin2 => "viii",
            ConditionId::VImageFin => "ix",
            ConditionId::Lev1 => "x",
            ConditionId::Lev1Prime => "x'",
            ConditionId::PInv => "xi",
            ConditionId::Spher => "xii",
            ConditionId::PthRootsIInf => "xiii",
            ConditionId::PthRootsIn => "xiv",
            ConditionId::PthRootsInPrime => "xiv'",
            ConditionId::PrModP2 => "xv",
            ConditionId::PModP2 => "xvi",
            ConditionId::SomePower => "xvii",
            ConditionId::PthRootsModP => "xviii",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<ConditionId> {
        ConditionId::ALL.iter().copied().find(|c| c.mnemonic() == s)
    }

    /// Conditions about the infinite-length Witt ring (or I_inf); these are
    /// never decided by searches, only by witnesses or fixture assertions.
    pub fn is_infinite_level(self) -> bool {
        matches!(
            self,
            ConditionId::Surj
                | ConditionId::TeichDense
                | ConditionId::TeichImage
                | ConditionId::VImage
                | ConditionId::VImageAll
                | ConditionId::Spher
                | ConditionId::PthRootsIInf
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    /// A direct implication tail => head.
    Single,
    /// One direction of a proved equivalence.
    Equivalence,
    /// All tails together imply the head.
    Joint,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub tails: Vec<ConditionId>,
    pub head: ConditionId,
    pub kind: EdgeKind,
}

/// The directed implication graph among the conditions.
#[derive(Debug, Clone)]
pub struct ImplicationGraph {
    pub edges: Vec<Edge>,
}

impl ImplicationGraph {
    /// The full catalog graph: the direct implications, the joint-hypothesis
    /// implications, and the proved equivalences
    /// FINLEV = FINLEV' = TEICH-IMAGE-FIN = TEICH-IMAGE-FIN' = PTHROOTS-IN =
    /// PTHROOTS-IN' and LEV1 = LEV1' = PTHROOTS-MODP.
    pub fn standard() -> ImplicationGraph {
        use ConditionId::*;
        let single = |t: ConditionId, h: ConditionId| Edge {
            tails: vec![t],
            head: h,
            kind: EdgeKind::Single,
        };
        let mut edges = vec![
            single(Surj, TeichImage),
            single(Surj, TeichDense),
            single(Surj, Spher),
            single(FinLev, Lev1),
            single(PthRootsIn, PrModP2),
            single(PModP2, SomePower),
            single(TeichImage, TeichImageFin),
            single(VImage, VImageAll),
            single(VImageAll, VImageFin),
            single(VImageFin2, VImageFin),
            single(PrModP2, VImageFin2),
            single(PrModP2, VImage),
            single(PInv, Surj),
        ];
        let mut equiv = |a: ConditionId, b: ConditionId| {
            edges.push(Edge {
                tails: vec![a],
                head: b,
                kind: EdgeKind::Equivalence,
            });
            edges.push(Edge {
                tails: vec![b],
                head: a,
                kind: EdgeKind::Equivalence,
            });
        };
        equiv(FinLev, TeichImageFin);
        equiv(TeichImageFin, PthRootsIn);
        equiv(VImageFin, PModP2);
        equiv(Lev1, PthRootsModP);
        equiv(PthRootsIInf, TeichImage);
        equiv(FinLev, FinLevPrime);
        equiv(TeichImageFin, TeichImageFinPrime);
        equiv(PthRootsIn, PthRootsInPrime);
        equiv(Lev1, Lev1Prime);
        edges.push(Edge {
            tails: vec![Lev1, SomePower],
            head: FinLev,
            kind: EdgeKind::Joint,
        });
        edges.push(Edge {
            tails: vec![TeichDense, TeichImage],
            head: Surj,
            kind: EdgeKind::Joint,
        });
        edges.push(Edge {
            tails: vec![Spher, FinLev],
            head: Surj,
            kind: EdgeKind::Joint,
        });
        ImplicationGraph { edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_twenty_two_conditions_with_unique_labels() {
        use std::collections::BTreeSet;
        assert_eq!(ConditionId::ALL.len(), 22);
        let mnemonics: BTreeSet<_> = ConditionId::ALL.iter().map(|c| c.mnemonic()).collect();
        assert_eq!(mnemonics.len(), 22);
        let romans: BTreeSet<_> = ConditionId::ALL.iter().map(|c| c.roman()).collect();
        assert_eq!(romans.len(), 22);
        for c in ConditionId::ALL {
            assert_eq!(ConditionId::from_mnemonic(c.mnemonic()), Some(c));
        }
    }

    #[test]
    fn graph_shape() {
        use ConditionId::*;
        let g = ImplicationGraph::standard();
        // 13 plain single edges, 9 equivalences (18 directed), 3 joint.
        assert_eq!(g.edges.len(), 13 + 18 + 3);
        let joint: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Joint)
            .collect();
        assert_eq!(joint.len(), 3);
        // The equivalence class of FINLEV reaches PTHROOTS-IN' along
        // equivalence edges.
        let mut reach = std::collections::BTreeSet::from([FinLev]);
        loop {
            let before = reach.len();
            for e in &g.edges {
                if e.kind == EdgeKind::Equivalence && e.tails.iter().all(|t| reach.contains(t)) {
                    reach.insert(e.head);
                }
            }
            if reach.len() == before {
                break;
            }
        }
        for c in [FinLevPrime, TeichImageFin, TeichImageFinPrime, PthRootsIn, PthRootsInPrime] {
            assert!(reach.contains(&c), "{c:?} not reachable");
        }
    }
}
