//! The ideal chain I_0 ⊇ I_1 ⊇ ⋯ ⊇ I_∞ and the kernel of Frobenius.
//!
//! I_0 = R and I_i = { r : r^p ∈ p·I_{i-1} }; I_∞ is the intersection. An
//! element r occurs as the first component of a length-(n+1) kernel vector
//! exactly when r ∈ I_n, and the kernel constructor realizes that direction
//! explicitly: each slot is produced by an exact division by p whose success
//! certifies the membership.
//!
//! Two computable models are provided: explicit element sets for finite
//! rings (computed literally from the definition), and valuation cutoffs
//! c_i with I_i = { v(r) >= c_i } for valuation rings, where
//! c_i = smallest attainable value >= (1 + c_{i-1})/p.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, WittError};
use crate::ring::{Ring, RingElement, ValueGroup};
use crate::universal::correction_poly;
use crate::wittvec::{eval_poly_x, WittVector};

/// Index into the chain: a finite depth or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainIndex {
    At(u32),
    Infinity,
}

impl std::fmt::Display for ChainIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainIndex::At(i) => write!(f, "{i}"),
            ChainIndex::Infinity => write!(f, "inf"),
        }
    }
}

/// A computable model of the ideal chain for one (ring, p) pair.
#[derive(Debug, Clone)]
pub enum IdealChainModel {
    /// Finite rings: I_0..I_depth as explicit sets, plus the stable set
    /// (the chain on a finite ring stabilizes, giving I_∞ exactly).
    BruteForce {
        ring: Ring,
        p: u64,
        levels: Vec<BTreeSet<RingElement>>,
        stable: BTreeSet<RingElement>,
    },
    /// Valuation rings: I_i = { v >= c_i } over the attainable value group.
    ValuationCutoff {
        ring: Ring,
        p: u64,
        cutoffs: Vec<BigRational>,
        c_inf: BigRational,
        c_inf_attained: bool,
        group: ValueGroup,
    },
}

/// A ball B(center, I_i) = center + I_i.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: RingElement,
    pub index: ChainIndex,
}

impl Ball {
    pub fn contains(&self, model: &IdealChainModel, r: &RingElement) -> Result<bool> {
        let ring = model.ring();
        let diff = ring.sub(r, &self.center)?;
        model.contains(&diff, self.index)
    }
}

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

/// Build a chain model to the given depth.
pub fn ideal_chain(ring: &Ring, p: u64, depth: u32) -> Result<IdealChainModel> {
    ideal_chain_with_budget(ring, p, depth, DEFAULT_ENUMERATION_BUDGET)
}

pub fn ideal_chain_with_budget(
    ring: &Ring,
    p: u64,
    depth: u32,
    budget: u64,
) -> Result<IdealChainModel> {
    let caps = ring.capabilities(p);
    if let Some(card) = ring.cardinality() {
        if card > budget.into() {
            return Err(WittError::BudgetExhausted(format!(
                "finite ring of size {card} exceeds enumeration budget {budget}"
            )));
        }
        return brute_force_chain(ring, p, depth);
    }
    if caps.has_valuation {
        let group = caps.value_group.expect("valuation implies a value group");
        return Ok(valuation_chain(ring, p, depth, group));
    }
    Err(WittError::CapabilityMissing(format!(
        "{}: no ideal-chain strategy (not finite, no valuation for p={p})",
        ring.spec_string()
    )))
}

fn brute_force_chain(ring: &Ring, p: u64, depth: u32) -> Result<IdealChainModel> {
    let all: BTreeSet<RingElement> = ring.enumerate_all()?.collect();
    let mut levels = vec![all.clone()];
    let mut current = all;
    let mut stable: Option<BTreeSet<RingElement>> = None;
    let mut i = 0u32;
    loop {
        let p_prev: BTreeSet<RingElement> = current
            .iter()
            .map(|x| ring.int_mul(&BigInt::from(p), x).expect("same ring"))
            .collect();
        let next: BTreeSet<RingElement> = levels[0]
            .iter()
            .filter(|r| {
                let rp = ring.pow(r, p).expect("same ring");
                p_prev.contains(&rp)
            })
            .cloned()
            .collect();
        let is_stable = next == current;
        current = next;
        i += 1;
        if i <= depth {
            levels.push(current.clone());
        }
        if is_stable && stable.is_none() {
            stable = Some(current.clone());
        }
        if i >= depth && stable.is_some() {
            break;
        }
        // Termination: sets strictly decrease until stabilization.
    }
    Ok(IdealChainModel::BruteForce {
        ring: ring.clone(),
        p,
        levels,
        stable: stable.expect("chain stabilizes on finite rings"),
    })
}

/// Smallest attainable valuation >= x for the group.
fn round_up(group: &ValueGroup, x: &BigRational) -> BigRational {
    match group {
        ValueGroup::Lattice { denom } => {
            let d = BigInt::from(*denom);
            let scaled = x * BigRational::from(d.clone());
            let k = scaled.ceil();
            BigRational::new(k.to_integer(), d)
        }
        ValueGroup::PDivisible => x.clone(),
    }
}

fn valuation_chain(ring: &Ring, p: u64, depth: u32, group: ValueGroup) -> IdealChainModel {
    let one = BigRational::one();
    let pq = BigRational::from(BigInt::from(p));
    let mut cutoffs = vec![BigRational::zero()];
    for _ in 1..=depth {
        let prev = cutoffs.last().unwrap();
        let next = round_up(&group, &((&one + prev) / &pq));
        cutoffs.push(next);
    }
    // The limit: iterate the same recursion to a fixpoint. In a lattice the
    // sequence is nondecreasing, bounded, and stabilizes; in the p-divisible
    // group the limit is 1/(p-1) exactly.
    let (c_inf, c_inf_attained) = match &group {
        ValueGroup::Lattice { .. } => {
            let mut c = cutoffs.last().unwrap().clone();
            loop {
                let next = round_up(&group, &((&one + &c) / &pq));
                if next == c {
                    break;
                }
                c = next;
            }
            (c, true)
        }
        ValueGroup::PDivisible => {
            let c = BigRational::new(BigInt::one(), BigInt::from(p - 1));
            // Attained at tower level 1: v(1 - mu_p) = 1/(p-1).
            (c, true)
        }
    };
    IdealChainModel::ValuationCutoff {
        ring: ring.clone(),
        p,
        cutoffs,
        c_inf,
        c_inf_attained,
        group,
    }
}

impl IdealChainModel {
    pub fn ring(&self) -> &Ring {
        match self {
            IdealChainModel::BruteForce { ring, .. } => ring,
            IdealChainModel::ValuationCutoff { ring, .. } => ring,
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            IdealChainModel::BruteForce { p, .. } => *p,
            IdealChainModel::ValuationCutoff { p, .. } => *p,
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            IdealChainModel::BruteForce { levels, .. } => (levels.len() - 1) as u32,
            IdealChainModel::ValuationCutoff { cutoffs, .. } => (cutoffs.len() - 1) as u32,
        }
    }

    pub fn cutoff(&self, index: ChainIndex) -> Option<&BigRational> {
        match self {
            IdealChainModel::ValuationCutoff { cutoffs, c_inf, .. } => match index {
                ChainIndex::At(i) => cutoffs.get(i as usize),
                ChainIndex::Infinity => Some(c_inf),
            },
            IdealChainModel::BruteForce { .. } => None,
        }
    }

    pub fn c_inf_attained(&self) -> bool {
        match self {
            IdealChainModel::ValuationCutoff { c_inf_attained, .. } => *c_inf_attained,
            IdealChainModel::BruteForce { .. } => false,
        }
    }

    /// Exact membership r ∈ I_index.
    pub fn contains(&self, r: &RingElement, index: ChainIndex) -> Result<bool> {
        match self {
            IdealChainModel::BruteForce { levels, stable, .. } => match index {
                ChainIndex::At(i) => {
                    let set = levels.get(i as usize).ok_or_else(|| {
                        WittError::InvalidRequest(format!(
                            "depth {i} exceeds computed depth {}",
                            levels.len() - 1
                        ))
                    })?;
                    Ok(set.contains(r))
                }
                ChainIndex::Infinity => Ok(stable.contains(r)),
            },
            IdealChainModel::ValuationCutoff { ring, p, .. } => {
                let c = self.cutoff(index).ok_or_else(|| {
                    WittError::InvalidRequest(format!(
                        "depth {index} exceeds computed depth {}",
                        self.depth()
                    ))
                })?;
                Ok(ring.valuation(r, *p)?.at_least(c))
            }
        }
    }

    /// Exact membership r ∈ p·I_index.
    pub fn contains_p_multiple(&self, r: &RingElement, index: ChainIndex) -> Result<bool> {
        match self {
            IdealChainModel::BruteForce { ring, p, levels, stable } => {
                let set = match index {
                    ChainIndex::At(i) => levels.get(i as usize).ok_or_else(|| {
                        WittError::InvalidRequest(format!(
                            "depth {i} exceeds computed depth {}",
                            levels.len() - 1
                        ))
                    })?,
                    ChainIndex::Infinity => stable,
                };
                for x in set {
                    if &ring.int_mul(&BigInt::from(*p), x)? == r {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            IdealChainModel::ValuationCutoff { ring, p, .. } => {
                let c = self.cutoff(index).ok_or_else(|| {
                    WittError::InvalidRequest(format!(
                        "depth {index} exceeds computed depth {}",
                        self.depth()
                    ))
                })?;
                let bound = c + BigRational::one();
                Ok(ring.valuation(r, *p)?.at_least(&bound))
            }
        }
    }
}

/// Membership test with chain depth handled by the model.
pub fn in_ideal(model: &IdealChainModel, r: &RingElement, index: ChainIndex) -> Result<bool> {
    model.contains(r, index)
}

/// Build a Witt vector z of length n+1 with z_0 = r and F(z) = 0.
///
/// The recursion fills slot i+1 with
/// exact_div_p(-z_i^p - p f_{p^i}(z_0..z_i)); the exactness of each division
/// is the runtime certificate that r ∈ I_n. No chain model is consulted.
pub fn kernel_element(ring: &Ring, p: u64, r: &RingElement, n: u32) -> Result<WittVector> {
    ring.check_element(r).map_err(|_| {
        WittError::RingMismatch("kernel first component must live in the given ring".into())
    })?;
    let mut comps = vec![r.clone()];
    for i in 0..n {
        let f_i = correction_poly(p, i)?;
        let f_val = eval_poly_x(ring, &f_i, &comps);
        let zi_p = ring.pow(&comps[i as usize], p)?;
        let rhs = ring.neg(&ring.add(&zi_p, &ring.int_mul(&BigInt::from(p), &f_val)?)?)?;
        let div = ring.exact_div_p(&rhs, p).ok_or_else(|| {
            WittError::NotInIdeal(format!(
                "slot {} division failed: first component not in I_{n} (or capability gap)",
                i + 1
            ))
        })?;
        comps.push(div.quotient);
    }
    let z = WittVector::new(p, ring, comps)?;
    if n >= 1 {
        let f = z.frobenius()?;
        let zero = WittVector::zero(p, ring, n as usize)?;
        if f != zero {
            return Err(WittError::VerificationFailed(
                "kernel construction produced a vector with F(z) != 0".into(),
            ));
        }
    }
    Ok(z)
}

/// Per-slot membership finding in a congruence report.
#[derive(Debug, Clone)]
pub struct SlotCheck {
    pub slot: usize,
    pub index: ChainIndex,
    pub holds: bool,
}

/// Outcome of a forward/backward congruence verification. A failed
/// precondition is reported as such, never as a refutation of the
/// conclusion.
#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub direction: &'static str,
    pub precondition: Vec<SlotCheck>,
    pub conclusion: Vec<SlotCheck>,
}

impl CongruenceReport {
    pub fn precondition_ok(&self) -> bool {
        self.precondition.iter().all(|s| s.holds)
    }

    pub fn conclusion_holds(&self) -> bool {
        self.conclusion.iter().all(|s| s.holds)
    }

    pub fn passed(&self) -> bool {
        self.precondition_ok() && self.conclusion_holds()
    }
}

/// Forward congruence transport: if x_j - y_j ∈ I_{n-j} for all slots j,
/// then the F-images differ by p·I_{n-j-1} slotwise.
pub fn congruence_forward(
    x: &WittVector,
    y: &WittVector,
    model: &IdealChainModel,
    n: u32,
) -> Result<CongruenceReport> {
    check_congruence_inputs(x, y, model, n)?;
    let ring = model.ring();
    let top = x.len() - 1;
    let mut precondition = Vec::new();
    for j in 0..=top {
        let idx = ChainIndex::At(n - j as u32);
        let diff = ring.sub(x.component(j), y.component(j))?;
        precondition.push(SlotCheck {
            slot: j,
            index: idx,
            holds: model.contains(&diff, idx)?,
        });
    }
    let mut conclusion = Vec::new();
    if precondition.iter().all(|s| s.holds) && x.len() >= 2 {
        let fx = x.frobenius()?;
        let fy = y.frobenius()?;
        for j in 0..fx.len() {
            let idx = ChainIndex::At(n - j as u32 - 1);
            let diff = ring.sub(fx.component(j), fy.component(j))?;
            conclusion.push(SlotCheck {
                slot: j,
                index: idx,
                holds: model.contains_p_multiple(&diff, idx)?,
            });
        }
    }
    Ok(CongruenceReport {
        direction: "forward",
        precondition,
        conclusion,
    })
}

/// Backward congruence transport: if the F-images differ by p·I_{n-j}
/// slotwise and the top components differ by I_{n-i}, then x_j - y_j ∈
/// I_{n-j} for every slot.
pub fn congruence_backward(
    x: &WittVector,
    y: &WittVector,
    model: &IdealChainModel,
    n: u32,
) -> Result<CongruenceReport> {
    check_congruence_inputs(x, y, model, n)?;
    let ring = model.ring();
    let top = x.len() - 1;
    let mut precondition = Vec::new();
    if x.len() >= 2 {
        let fx = x.frobenius()?;
        let fy = y.frobenius()?;
        for j in 0..fx.len() {
            let idx = ChainIndex::At(n - j as u32);
            let diff = ring.sub(fx.component(j), fy.component(j))?;
            precondition.push(SlotCheck {
                slot: j,
                index: idx,
                holds: model.contains_p_multiple(&diff, idx)?,
            });
        }
    }
    {
        let idx = ChainIndex::At(n - top as u32);
        let diff = ring.sub(x.component(top), y.component(top))?;
        precondition.push(SlotCheck {
            slot: top,
            index: idx,
            holds: model.contains(&diff, idx)?,
        });
    }
    let mut conclusion = Vec::new();
    if precondition.iter().all(|s| s.holds) {
        for j in 0..=top {
            let idx = ChainIndex::At(n - j as u32);
            let diff = ring.sub(x.component(j), y.component(j))?;
            conclusion.push(SlotCheck {
                slot: j,
                index: idx,
                holds: model.contains(&diff, idx)?,
            });
        }
    }
    Ok(CongruenceReport {
        direction: "backward",
        precondition,
        conclusion,
    })
}

fn check_congruence_inputs(
    x: &WittVector,
    y: &WittVector,
    model: &IdealChainModel,
    n: u32,
) -> Result<()> {
    if x.ring() != model.ring() || y.ring() != model.ring() || x.len() != y.len() {
        return Err(WittError::RingMismatch(
            "congruence inputs must share the model ring and length".into(),
        ));
    }
    let i = (x.len() - 1) as u32;
    if n < i {
        return Err(WittError::InvalidRequest(format!(
            "need n >= {i} for vectors of length {}",
            x.len()
        )));
    }
    if n > model.depth() {
        return Err(WittError::InvalidRequest(format!(
            "model depth {} insufficient for n = {n}",
            model.depth()
        )));
    }
    Ok(())
}

/// Lift through Frobenius inside I_∞: given x with every component in
/// p·I_∞, produce y one slot longer with y_0 = 0, every component in I_∞,
/// and F(y) = x exactly.
pub fn kernel_lift(model: &IdealChainModel, x: &WittVector) -> Result<WittVector> {
    let ring = model.ring();
    let p = model.prime();
    if x.ring() != ring {
        return Err(WittError::RingMismatch("lift input not in model ring".into()));
    }
    match model {
        IdealChainModel::ValuationCutoff { c_inf_attained, .. } => {
            if !c_inf_attained {
                return Err(WittError::CapabilityMissing(
                    "kernel lift needs an attained I_∞ cutoff".into(),
                ));
            }
        }
        IdealChainModel::BruteForce { .. } => {
            return Err(WittError::CapabilityMissing(
                "kernel lift is defined for valuation-cutoff models".into(),
            ))
        }
    }
    for (j, c) in x.components().iter().enumerate() {
        if !model.contains_p_multiple(c, ChainIndex::Infinity)? {
            return Err(WittError::Precondition(format!(
                "component {j} is not in p·I_∞"
            )));
        }
    }
    let mut comps = vec![ring.zero()];
    for i in 0..x.len() {
        let f_i = correction_poly(p, i as u32)?;
        let f_val = eval_poly_x(ring, &f_i, &comps);
        let yi_p = ring.pow(&comps[i], p)?;
        let rhs = ring.sub(
            x.component(i),
            &ring.add(&yi_p, &ring.int_mul(&BigInt::from(p), &f_val)?)?,
        )?;
        let div = ring.exact_div_p(&rhs, p).ok_or_else(|| {
            WittError::Precondition(format!("slot {} division failed in kernel lift", i + 1))
        })?;
        comps.push(div.quotient);
    }
    let y = WittVector::new(p, ring, comps)?;
    // Verify the construction: F(y) = x and all components in I_∞.
    let fy = y.frobenius()?;
    if &fy != x {
        return Err(WittError::Internal("kernel lift failed F(y) = x".into()));
    }
    for c in y.components() {
        if !model.contains(c, ChainIndex::Infinity)? {
            return Err(WittError::Internal(
                "kernel lift left I_∞ despite valid preconditions".into(),
            ));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn integer_chain_stabilizes_at_one() {
        let z = Ring::integers();
        let model = ideal_chain(&z, 3, 5).unwrap();
        for i in 1..=5 {
            assert_eq!(model.cutoff(ChainIndex::At(i)).unwrap(), &rat(1, 1));
        }
        assert_eq!(model.cutoff(ChainIndex::Infinity).unwrap(), &rat(1, 1));
        // I_i = (p): p ∈ I_5, 1 ∉ I_1, 0 ∈ everything.
        assert!(model.contains(&z.from_int(BigInt::from(3)), ChainIndex::At(5)).unwrap());
        assert!(!model.contains(&z.from_int(BigInt::from(1)), ChainIndex::At(1)).unwrap());
        assert!(model.contains(&z.zero(), ChainIndex::Infinity).unwrap());
    }

    #[test]
    fn cyclotomic_cutoffs_round_up() {
        // Zeta(3,2): d = 6; c_1 = 2/6, c_2 = smallest multiple of 1/6 >= 4/9,
        // i.e. 3/6; the chain then stabilizes at 1/2 = 1/(p-1).
        let r = Ring::cyclotomic(3, 2).unwrap();
        let model = ideal_chain(&r, 3, 3).unwrap();
        assert_eq!(model.cutoff(ChainIndex::At(1)).unwrap(), &rat(1, 3));
        assert_eq!(model.cutoff(ChainIndex::At(2)).unwrap(), &rat(1, 2));
        assert_eq!(model.cutoff(ChainIndex::At(3)).unwrap(), &rat(1, 2));
        assert_eq!(model.cutoff(ChainIndex::Infinity).unwrap(), &rat(1, 2));
        assert!(model.c_inf_attained());
    }

    #[test]
    fn tower_cutoffs_are_exact() {
        let t = Ring::cyclotomic_tower(3).unwrap();
        let model = ideal_chain(&t, 3, 3).unwrap();
        assert_eq!(model.cutoff(ChainIndex::At(1)).unwrap(), &rat(1, 3));
        assert_eq!(model.cutoff(ChainIndex::At(2)).unwrap(), &rat(4, 9));
        assert_eq!(model.cutoff(ChainIndex::At(3)).unwrap(), &rat(13, 27));
        assert_eq!(model.cutoff(ChainIndex::Infinity).unwrap(), &rat(1, 2));
    }

    #[test]
    fn brute_force_chain_z4() {
        let z4 = Ring::modular(BigUint::from(4u32)).unwrap();
        let model = ideal_chain(&z4, 2, 2).unwrap();
        let expect: BTreeSet<RingElement> =
            [0i64, 2].iter().map(|&v| z4.from_int(BigInt::from(v))).collect();
        match &model {
            IdealChainModel::BruteForce { levels, stable, .. } => {
                assert_eq!(levels[1], expect);
                assert_eq!(levels[2], expect);
                assert_eq!(*stable, expect);
            }
            _ => panic!("expected brute force"),
        }
    }

    #[test]
    fn brute_force_ideals_are_ideals() {
        for (m, p) in [(4u32, 2u64), (9, 3)] {
            let ring = Ring::modular(BigUint::from(m)).unwrap();
            let model = ideal_chain(&ring, p, 2).unwrap();
            if let IdealChainModel::BruteForce { levels, .. } = &model {
                for set in levels {
                    for a in set {
                        for b in set {
                            assert!(set.contains(&ring.add(a, b).unwrap()));
                        }
                        for r in ring.enumerate_all().unwrap() {
                            assert!(set.contains(&ring.mul(&r, a).unwrap()));
                        }
                    }
                }
                // Nesting.
                for w in levels.windows(2) {
                    assert!(w[1].is_subset(&w[0]));
                }
            }
        }
    }

    #[test]
    fn kernel_element_over_z() {
        let z = Ring::integers();
        let two = z.from_int(BigInt::from(2));
        let k1 = kernel_element(&z, 2, &two, 1).unwrap();
        assert_eq!(
            k1.components(),
            &[two.clone(), z.from_int(BigInt::from(-2))]
        );
        let k2 = kernel_element(&z, 2, &two, 2).unwrap();
        assert_eq!(
            k2.components(),
            &[
                two.clone(),
                z.from_int(BigInt::from(-2)),
                z.from_int(BigInt::from(-6))
            ]
        );
        // Ghost shape (*, 0, 0).
        let g = k2.ghost();
        assert_eq!(g.values[0], two);
        assert!(g.values[1].is_zero() && g.values[2].is_zero());
        // 3 is not in I_1 = (2).
        let three = z.from_int(BigInt::from(3));
        assert!(matches!(
            kernel_element(&z, 2, &three, 1),
            Err(WittError::NotInIdeal(_))
        ));
        // r = 0 gives the zero vector.
        let k0 = kernel_element(&z, 2, &z.zero(), 3).unwrap();
        assert!(k0.components().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn kernel_first_components_match_brute_force_sets() {
        // Corollary oracle equivalence on Z/4 (p=2) and Z/9 (p=3), i <= 2.
        for (m, p) in [(4u32, 2u64), (9, 3)] {
            let ring = Ring::modular(BigUint::from(m)).unwrap();
            let model = ideal_chain(&ring, p, 2).unwrap();
            for i in 1..=2u32 {
                for r in ring.enumerate_all().unwrap() {
                    let succeeded = kernel_element(&ring, p, &r, i).is_ok();
                    let member = model.contains(&r, ChainIndex::At(i)).unwrap();
                    assert_eq!(
                        succeeded, member,
                        "mismatch at m={m} p={p} i={i} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn backward_congruence_on_kernel_vector() {
        let z = Ring::integers();
        let model = ideal_chain(&z, 2, 2).unwrap();
        let x = kernel_element(&z, 2, &z.from_int(BigInt::from(2)), 2).unwrap();
        let y = WittVector::zero(2, &z, 3).unwrap();
        let report = congruence_backward(&x, &y, &model, 2).unwrap();
        assert!(report.precondition_ok());
        assert!(report.conclusion_holds(), "report: {report:?}");
    }

    #[test]
    fn forward_congruence_trivial_and_perturbed() {
        let z = Ring::integers();
        let model = ideal_chain(&z, 2, 3).unwrap();
        let x = WittVector::new(
            2,
            &z,
            vec![
                z.from_int(BigInt::from(6)),
                z.from_int(BigInt::from(-2)),
                z.from_int(BigInt::from(10)),
            ],
        )
        .unwrap();
        // x = y trivially passes.
        let r = congruence_forward(&x, &x, &model, 3).unwrap();
        assert!(r.passed());
        // Perturb slot j by an element of I_{n-j}: still passes.
        let n = 2u32;
        let y = WittVector::new(
            2,
            &z,
            vec![
                z.add(x.component(0), &z.from_int(BigInt::from(4))).unwrap(), // I_2 = (2): 4 ∈
                z.add(x.component(1), &z.from_int(BigInt::from(2))).unwrap(),
                z.add(x.component(2), &z.from_int(BigInt::from(1))).unwrap(), // I_0 = Z
            ],
        )
        .unwrap();
        let r = congruence_forward(&x, &y, &model, n).unwrap();
        assert!(r.precondition_ok());
        assert!(r.conclusion_holds(), "{r:?}");
        // Violated hypothesis is reported as precondition failure.
        let bad = WittVector::new(
            2,
            &z,
            vec![
                z.add(x.component(0), &z.one()).unwrap(),
                x.component(1).clone(),
                x.component(2).clone(),
            ],
        )
        .unwrap();
        let r = congruence_forward(&x, &bad, &model, n).unwrap();
        assert!(!r.precondition_ok());
        assert!(r.conclusion.is_empty());
    }

    #[test]
    fn kernel_lift_one_step() {
        // Zeta(3,1): c_inf = 1/2 attained by g = 1 - mu_3; x = (3g, 0)
        // lifts to y = (0, g, *) with F(y) = x.
        let ring = Ring::cyclotomic(3, 1).unwrap();
        let model = ideal_chain(&ring, 3, 3).unwrap();
        assert_eq!(model.cutoff(ChainIndex::Infinity).unwrap(), &rat(1, 2));
        let g = ring.cyclo_uniformizer().unwrap();
        let x0 = ring.int_mul(&BigInt::from(3), &g).unwrap();
        let x = WittVector::new(3, &ring, vec![x0, ring.zero()]).unwrap();
        let y = kernel_lift(&model, &x).unwrap();
        assert_eq!(y.len(), 3);
        assert!(y.component(0).is_zero());
        assert_eq!(y.component(1), &g);
        assert_eq!(y.frobenius().unwrap(), x);

        // Zero lifts to zero.
        let zero = WittVector::zero(3, &ring, 2).unwrap();
        let y0 = kernel_lift(&model, &zero).unwrap();
        assert!(y0.components().iter().all(|c| c.is_zero()));

        // A component outside p·I_∞ is rejected.
        let bad = WittVector::new(3, &ring, vec![ring.one(), ring.zero()]).unwrap();
        assert!(matches!(
            kernel_lift(&model, &bad),
            Err(WittError::Precondition(_))
        ));
    }
}
