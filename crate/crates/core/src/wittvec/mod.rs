//! Arithmetic in the truncated Witt rings W_{p^n}(R).
//!
//! A vector of length n+1 holds the components x_{p^0}..x_{p^n}, slot-indexed
//! (slot j is the x_{p^j} component) everywhere, including JSON. Ring
//! operations evaluate the universal polynomials in R; on p-torsion-free
//! rings with exact division by p an equivalent ghost-component fast path is
//! used instead (map to ghost components, operate there, invert with exact
//! divisions). The two paths agree exactly and the test suite compares them.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::ring::{parse_element, parse_ring_spec, Ring, RingElement};
use crate::universal::{
    frobenius_polys, neg_polys, product_polys, sum_polys, Series, SparsePoly,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector {
    p: u64,
    ring: Ring,
    components: Vec<RingElement>,
}

/// The image of a Witt vector under the ghost map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostVector {
    pub p: u64,
    pub ring: Ring,
    pub values: Vec<RingElement>,
}

impl WittVector {
    pub fn new(p: u64, ring: &Ring, components: Vec<RingElement>) -> Result<WittVector> {
        if !crate::ring::is_prime(p) {
            return Err(WittError::InvalidRequest(format!("{p} is not prime")));
        }
        if components.is_empty() {
            return Err(WittError::InvalidRequest(
                "Witt vectors have length >= 1".into(),
            ));
        }
        for c in &components {
            if c.ring() != ring {
                return Err(WittError::RingMismatch(format!(
                    "component {} lives in {}, vector in {}",
                    c,
                    c.ring().spec_string(),
                    ring.spec_string()
                )));
            }
        }
        Ok(WittVector {
            p,
            ring: ring.clone(),
            components,
        })
    }

    pub fn zero(p: u64, ring: &Ring, len: usize) -> Result<WittVector> {
        WittVector::new(p, ring, vec![ring.zero(); len])
    }

    pub fn one(p: u64, ring: &Ring, len: usize) -> Result<WittVector> {
        let mut comps = vec![ring.zero(); len];
        comps[0] = ring.one();
        WittVector::new(p, ring, comps)
    }

    /// Teichmuller lift (r, 0, ..., 0).
    pub fn teichmuller(p: u64, r: &RingElement, len: usize) -> Result<WittVector> {
        let ring = r.ring().clone();
        let mut comps = vec![ring.zero(); len];
        comps[0] = r.clone();
        WittVector::new(p, &ring, comps)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn component(&self, slot: usize) -> &RingElement {
        &self.components[slot]
    }

    pub fn components(&self) -> &[RingElement] {
        &self.components
    }

    fn check_compat(&self, other: &WittVector) -> Result<()> {
        if self.p != other.p || self.ring != other.ring || self.len() != other.len() {
            return Err(WittError::RingMismatch(format!(
                "incompatible Witt vectors: (p={}, {}, len {}) vs (p={}, {}, len {})",
                self.p,
                self.ring.spec_string(),
                self.len(),
                other.p,
                other.ring.spec_string(),
                other.len()
            )));
        }
        Ok(())
    }

    fn ghost_path_available(&self) -> bool {
        let caps = self.ring.capabilities(self.p);
        caps.is_p_torsion_free && caps.has_exact_p_division
    }

    /// Evaluate a universal polynomial at this vector's components (X series)
    /// and optionally a second vector's (Y series).
    fn eval_poly(&self, poly: &SparsePoly, other: Option<&WittVector>) -> RingElement {
        eval_poly_cached(
            &self.ring,
            poly,
            &self.components,
            other.map(|o| o.components.as_slice()),
        )
    }

    /// Ghost components w_0..w_n, computed directly from the formula.
    pub fn ghost(&self) -> GhostVector {
        let ring = &self.ring;
        let mut values = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let mut acc = ring.zero();
            let mut pj = BigInt::from(1);
            for j in 0..=i {
                let power = (self.p).pow((i - j) as u32);
                let t = ring.pow(&self.components[j], power).expect("same ring");
                let t = ring.int_mul(&pj, &t).expect("same ring");
                acc = ring.add(&acc, &t).expect("same ring");
                pj *= self.p;
            }
            values.push(acc);
        }
        GhostVector {
            p: self.p,
            ring: ring.clone(),
            values,
        }
    }

    /// Invert the ghost map; only valid on p-torsion-free rings with exact
    /// division, and only for value vectors that are actual ghost images.
    fn from_ghost(p: u64, ring: &Ring, values: &[RingElement]) -> Result<WittVector> {
        let mut comps: Vec<RingElement> = Vec::with_capacity(values.len());
        for i in 0..values.len() {
            let mut rhs = values[i].clone();
            let mut pj = BigInt::from(1);
            for (j, c) in comps.iter().enumerate().take(i) {
                let power = p.pow((i - j) as u32);
                let t = ring.pow(c, power)?;
                let t = ring.int_mul(&pj, &t)?;
                rhs = ring.sub(&rhs, &t)?;
                pj *= p;
            }
            for _ in 0..i {
                let div = ring.exact_div_p(&rhs, p).ok_or_else(|| {
                    WittError::Internal(
                        "ghost fast path hit an inexact division on a valid input".into(),
                    )
                })?;
                rhs = div.quotient;
            }
            comps.push(rhs);
        }
        WittVector::new(p, ring, comps)
    }

    fn binary_op_polys(&self, other: &WittVector, polys: &[std::sync::Arc<SparsePoly>]) -> WittVector {
        let comps: Vec<RingElement> = (0..self.len())
            .map(|i| self.eval_poly(&polys[i], Some(other)))
            .collect();
        WittVector {
            p: self.p,
            ring: self.ring.clone(),
            components: comps,
        }
    }

    /// Addition via the universal sum polynomials.
    pub fn add_via_polys(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        let polys = sum_polys(self.p, (self.len() - 1) as u32)?;
        Ok(self.binary_op_polys(other, &polys))
    }

    /// Multiplication via the universal product polynomials.
    pub fn mul_via_polys(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        let polys = product_polys(self.p, (self.len() - 1) as u32)?;
        Ok(self.binary_op_polys(other, &polys))
    }

    /// Negation via the universal negation polynomials.
    pub fn neg_via_polys(&self) -> Result<WittVector> {
        let polys = neg_polys(self.p, (self.len() - 1) as u32)?;
        let comps: Vec<RingElement> = (0..self.len())
            .map(|i| self.eval_poly(&polys[i], None))
            .collect();
        WittVector::new(self.p, &self.ring, comps)
    }

    /// Addition via ghost components (p-torsion-free rings only).
    pub fn add_via_ghost(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        let (ga, gb) = (self.ghost(), other.ghost());
        let values: Result<Vec<RingElement>> = ga
            .values
            .iter()
            .zip(gb.values.iter())
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        WittVector::from_ghost(self.p, &self.ring, &values?)
    }

    /// Multiplication via ghost components (p-torsion-free rings only).
    pub fn mul_via_ghost(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        let (ga, gb) = (self.ghost(), other.ghost());
        let values: Result<Vec<RingElement>> = ga
            .values
            .iter()
            .zip(gb.values.iter())
            .map(|(a, b)| self.ring.mul(a, b))
            .collect();
        WittVector::from_ghost(self.p, &self.ring, &values?)
    }

    /// Negation via ghost components (p-torsion-free rings only).
    pub fn neg_via_ghost(&self) -> Result<WittVector> {
        let ga = self.ghost();
        let values: Result<Vec<RingElement>> =
            ga.values.iter().map(|a| self.ring.neg(a)).collect();
        WittVector::from_ghost(self.p, &self.ring, &values?)
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        if self.ghost_path_available() {
            self.add_via_ghost(other)
        } else {
            self.add_via_polys(other)
        }
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        if self.ghost_path_available() {
            self.mul_via_ghost(other)
        } else {
            self.mul_via_polys(other)
        }
    }

    pub fn neg(&self) -> Result<WittVector> {
        if self.ghost_path_available() {
            self.neg_via_ghost()
        } else {
            self.neg_via_polys()
        }
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg()?)
    }

    /// Multiplication by an integer scalar, as repeated Witt addition via
    /// balanced doubling.
    pub fn int_scalar_mul(&self, k: &BigInt) -> Result<WittVector> {
        if k.is_negative() {
            return self.neg()?.int_scalar_mul(&-k);
        }
        let mut acc = WittVector::zero(self.p, &self.ring, self.len())?;
        let mut base = self.clone();
        let bits = k.bits();
        for bit in 0..bits {
            if k.bit(bit) {
                acc = acc.add(&base)?;
            }
            if bit + 1 < bits {
                base = base.add(&base)?;
            }
        }
        Ok(acc)
    }

    /// Frobenius: length n+1 -> n, satisfying w_i(F(x)) = w_{i+1}(x).
    pub fn frobenius(&self) -> Result<WittVector> {
        if self.len() < 2 {
            return Err(WittError::InvalidRequest(
                "frobenius needs length >= 2 (no target level on W_1)".into(),
            ));
        }
        if self.ghost_path_available() {
            let g = self.ghost();
            return WittVector::from_ghost(self.p, &self.ring, &g.values[1..]);
        }
        let polys = frobenius_polys(self.p, (self.len() - 1) as u32)?;
        let comps: Vec<RingElement> = (0..self.len() - 1)
            .map(|i| self.eval_poly(&polys[i], None))
            .collect();
        WittVector::new(self.p, &self.ring, comps)
    }

    /// Verschiebung: prepend a zero component.
    pub fn verschiebung(&self) -> WittVector {
        let mut comps = Vec::with_capacity(self.len() + 1);
        comps.push(self.ring.zero());
        comps.extend(self.components.iter().cloned());
        WittVector {
            p: self.p,
            ring: self.ring.clone(),
            components: comps,
        }
    }

    /// Forget trailing components.
    pub fn restrict(&self, new_len: usize) -> Result<WittVector> {
        if new_len < 1 || new_len > self.len() {
            return Err(WittError::InvalidRequest(format!(
                "cannot restrict length {} to {}",
                self.len(),
                new_len
            )));
        }
        WittVector::new(self.p, &self.ring, self.components[..new_len].to_vec())
    }

    /// The terms V^i([x_{p^i}]) whose Witt sum reconstructs the vector.
    pub fn v_decompose(&self) -> Vec<WittVector> {
        (0..self.len())
            .map(|i| {
                let mut comps = vec![self.ring.zero(); self.len()];
                comps[i] = self.components[i].clone();
                WittVector {
                    p: self.p,
                    ring: self.ring.clone(),
                    components: comps,
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> WittJson {
        WittJson {
            p: self.p,
            ring: self.ring.spec_string(),
            components: self
                .components
                .iter()
                .map(|c| self.ring.element_string(c))
                .collect(),
        }
    }

    pub fn from_json(json: &WittJson) -> Result<WittVector> {
        let ring = parse_ring_spec(&json.ring)?;
        let comps: Result<Vec<RingElement>> = json
            .components
            .iter()
            .map(|s| parse_element(&ring, s))
            .collect();
        WittVector::new(json.p, &ring, comps?)
    }
}

/// Evaluate a polynomial in X-series variables at the given components
/// (slot j reads comps[j]).
pub(crate) fn eval_poly_x(ring: &Ring, poly: &SparsePoly, comps: &[RingElement]) -> RingElement {
    eval_poly_cached(ring, poly, comps, None)
}

/// Term-by-term evaluation with per-variable power tables, so a power shared
/// by many monomials is computed once.
fn eval_poly_cached(
    ring: &Ring,
    poly: &SparsePoly,
    x: &[RingElement],
    y: Option<&[RingElement]>,
) -> RingElement {
    use std::collections::BTreeMap;
    // Highest exponent needed per variable.
    let mut max_exp: BTreeMap<(Series, u32), u32> = BTreeMap::new();
    for (_, mono) in poly.terms() {
        for (v, e) in mono.factors() {
            let entry = max_exp.entry((v.series, v.slot)).or_insert(0);
            *entry = (*entry).max(*e);
        }
    }
    let mut tables: BTreeMap<(Series, u32), Vec<RingElement>> = BTreeMap::new();
    for (&(series, slot), &top) in &max_exp {
        let base = match series {
            Series::X => &x[slot as usize],
            Series::Y => &y.expect("binary operation")[slot as usize],
        };
        let mut chain = Vec::with_capacity(top as usize + 1);
        chain.push(ring.one());
        for e in 1..=top {
            let next = ring
                .mul(&chain[(e - 1) as usize], base)
                .expect("same ring");
            chain.push(next);
        }
        tables.insert((series, slot), chain);
    }
    let mut acc = ring.zero();
    for (coeff, mono) in poly.terms() {
        let mut term = ring.from_int(coeff.clone());
        for (v, e) in mono.factors() {
            let powed = &tables[&(v.series, v.slot)][*e as usize];
            term = ring.mul(&term, powed).expect("same ring");
        }
        acc = ring.add(&acc, &term).expect("same ring");
    }
    acc
}

impl std::fmt::Display for WittVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ring.element_string(c))?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Display for GhostVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ring.element_string(c))?;
        }
        write!(f, ")")
    }
}

/// Wire form of a Witt vector.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WittJson {
    pub p: u64,
    pub ring: String,
    pub components: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn wz(p: u64, comps: &[i64]) -> WittVector {
        let ring = z();
        WittVector::new(
            p,
            &ring,
            comps.iter().map(|&c| ring.from_int(BigInt::from(c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn one_plus_one_in_w4() {
        // (1,0) + (1,0) = (2,-1): ghosts (1,1)+(1,1) = (2,2), and
        // 2 = 2^2 + 2*(-1).
        let a = wz(2, &[1, 0]);
        let sum = a.add(&a).unwrap();
        assert_eq!(sum, wz(2, &[2, -1]));
        // Both paths agree.
        assert_eq!(a.add_via_polys(&a).unwrap(), sum);
        assert_eq!(a.add_via_ghost(&a).unwrap(), sum);
    }

    #[test]
    fn additive_and_multiplicative_identities() {
        let x = wz(2, &[3, -1, 4]);
        let zero = WittVector::zero(2, &z(), 3).unwrap();
        let one = WittVector::one(2, &z(), 3).unwrap();
        assert_eq!(x.add(&zero).unwrap(), x);
        assert_eq!(one.mul(&x).unwrap(), x);
    }

    #[test]
    fn ghost_values() {
        let x = wz(2, &[2, -1]);
        let g = x.ghost();
        assert_eq!(g.values[0], z().from_int(BigInt::from(2)));
        assert_eq!(g.values[1], z().from_int(BigInt::from(2)));
        // Teichmuller ghost: (r, r^p, r^{p^2}, ...).
        let r = z().from_int(BigInt::from(3));
        let t = WittVector::teichmuller(2, &r, 3).unwrap();
        let gt = t.ghost();
        assert_eq!(gt.values[1], z().from_int(BigInt::from(9)));
        assert_eq!(gt.values[2], z().from_int(BigInt::from(81)));
        // Zero ghost.
        let zv = WittVector::zero(2, &z(), 3).unwrap();
        assert!(zv.ghost().values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn frobenius_of_teichmuller() {
        // F([r]) = [r^p] at every length.
        for len in 2..=4usize {
            let r = z().from_int(BigInt::from(3));
            let t = WittVector::teichmuller(2, &r, len).unwrap();
            let f = t.frobenius().unwrap();
            let expected =
                WittVector::teichmuller(2, &z().from_int(BigInt::from(9)), len - 1).unwrap();
            assert_eq!(f, expected);
        }
    }

    #[test]
    fn frobenius_kills_kernel_vector() {
        // ghost(2,-2,-6) = (2,0,0), so F maps it to zero.
        let x = wz(2, &[2, -2, -6]);
        assert_eq!(x.ghost().values[1], z().zero());
        assert_eq!(x.ghost().values[2], z().zero());
        let f = x.frobenius().unwrap();
        assert_eq!(f, WittVector::zero(2, &z(), 2).unwrap());
    }

    #[test]
    fn frobenius_needs_length_two() {
        let x = wz(2, &[5]);
        assert!(x.frobenius().is_err());
    }

    #[test]
    fn char_p_frobenius_is_componentwise_pth_power() {
        // GF(3)[T]/(T^3): F(x) = (x_0^3, x_1^3, ...).
        let ring = parse_ring_spec("GF(3)[T]/(T^3)").unwrap();
        let t = ring.generator().unwrap();
        let a = ring.add(&t, &ring.one()).unwrap();
        let b = ring.mul(&t, &t).unwrap();
        let x = WittVector::new(3, &ring, vec![a.clone(), b.clone(), t.clone()]).unwrap();
        let f = x.frobenius().unwrap();
        assert_eq!(f.component(0), &ring.pow(&a, 3).unwrap());
        assert_eq!(f.component(1), &ring.pow(&b, 3).unwrap());
    }

    #[test]
    fn verschiebung_and_fv_identity() {
        let one1 = WittVector::one(2, &z(), 1).unwrap();
        let v = one1.verschiebung();
        assert_eq!(v, wz(2, &[0, 1]));
        // F(V(x)) = p * x.
        let x = wz(3, &[2, 5]);
        let fv = x.verschiebung().frobenius().unwrap();
        let px = x.int_scalar_mul(&BigInt::from(3)).unwrap();
        assert_eq!(fv, px);
    }

    #[test]
    fn projection_formula() {
        // V(x * F(y)) = V(x) * y.
        let x = wz(2, &[3, 1]);
        let y = wz(2, &[2, -1, 5]);
        let fy = y.frobenius().unwrap();
        let lhs = x.mul(&fy).unwrap().verschiebung();
        let rhs = x.verschiebung().mul(&y).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let two = z().from_int(BigInt::from(2));
        let three = z().from_int(BigInt::from(3));
        let six = z().from_int(BigInt::from(6));
        let t2 = WittVector::teichmuller(2, &two, 2).unwrap();
        let t3 = WittVector::teichmuller(2, &three, 2).unwrap();
        let t6 = WittVector::teichmuller(2, &six, 2).unwrap();
        assert_eq!(t2.mul(&t3).unwrap(), t6);
    }

    #[test]
    fn v_decomposition_reconstructs() {
        let x = wz(2, &[3, -2, 7]);
        let parts = x.v_decompose();
        assert_eq!(parts.len(), 3);
        let mut acc = WittVector::zero(2, &z(), 3).unwrap();
        for part in &parts {
            acc = acc.add(part).unwrap();
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn restriction() {
        let x = wz(2, &[3, -2, 7]);
        assert_eq!(x.restrict(2).unwrap(), wz(2, &[3, -2]));
        assert!(x.restrict(4).is_err());
        assert!(x.restrict(0).is_err());
    }

    #[test]
    fn restriction_commutes_with_operations() {
        let x = wz(2, &[3, -2, 7]);
        let y = wz(2, &[-1, 4, 2]);
        let sum_then = x.add(&y).unwrap().restrict(2).unwrap();
        let then_sum = x.restrict(2).unwrap().add(&y.restrict(2).unwrap()).unwrap();
        assert_eq!(sum_then, then_sum);
        let f_then = x.frobenius().unwrap().restrict(1).unwrap();
        let then_f = x.restrict(2).unwrap().frobenius().unwrap();
        assert_eq!(f_then, then_f);
    }

    #[test]
    fn poly_and_ghost_paths_agree_on_modular_ring() {
        // Z/9 with p=3 is not 3-torsion-free: the public API must pick the
        // polynomial path and still satisfy ghost additivity.
        let ring = Ring::modular(num_bigint::BigUint::from(9u32)).unwrap();
        let a = WittVector::new(
            3,
            &ring,
            vec![ring.from_int(BigInt::from(4)), ring.from_int(BigInt::from(7))],
        )
        .unwrap();
        let b = WittVector::new(
            3,
            &ring,
            vec![ring.from_int(BigInt::from(5)), ring.from_int(BigInt::from(2))],
        )
        .unwrap();
        let sum = a.add(&b).unwrap();
        let (ga, gb, gs) = (a.ghost(), b.ghost(), sum.ghost());
        for i in 0..2 {
            let expect = ring.add(&ga.values[i], &gb.values[i]).unwrap();
            assert_eq!(gs.values[i], expect);
        }
    }

    #[test]
    fn json_round_trip() {
        let x = wz(2, &[3, -2, 7]);
        let json = x.to_json();
        let back = WittVector::from_json(&json).unwrap();
        assert_eq!(back, x);
        let s = serde_json::to_string(&json).unwrap();
        let parsed: WittJson = serde_json::from_str(&s).unwrap();
        assert_eq!(WittVector::from_json(&parsed).unwrap(), x);
    }
}
