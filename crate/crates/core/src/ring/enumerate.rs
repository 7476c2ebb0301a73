//! Enumeration of quotient representatives R/p^k R and of finite rings.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Result, WittError};

use super::{Ring, RingDescriptor, RingElement};

/// Odometer over coefficient vectors: all vectors of `digits` entries in
/// [0, base_count), emitted in lexicographic order (last digit fastest).
struct Odometer {
    digits: Vec<u64>,
    base_count: u64,
    len: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, base_count: u64) -> Odometer {
        Odometer {
            digits: vec![0; len],
            base_count,
            len,
            done: base_count == 0,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        let mut i = 0;
        loop {
            if i == self.len {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.base_count {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        if self.len == 0 {
            self.done = true;
        }
        Some(current)
    }
}

impl Ring {
    /// Cardinality of R/p^k R when finite.
    pub fn quotient_cardinality(&self, p: u64, k: u32) -> Option<BigUint> {
        let pk = BigUint::from(p).pow(k);
        match self.descriptor() {
            RingDescriptor::Integers => Some(pk),
            RingDescriptor::ModularIntegers { modulus } | RingDescriptor::PrimeField { prime: modulus } => {
                Some(pk.gcd(modulus))
            }
            RingDescriptor::PolynomialRing { base, .. } => {
                let b = Ring::from_descriptor((**base).clone());
                let per = b.quotient_cardinality(p, k)?;
                if per.is_one() {
                    Some(BigUint::one())
                } else {
                    None
                }
            }
            RingDescriptor::QuotientRing { base, modulus, .. } => {
                let b = Ring::from_descriptor((**base).clone());
                let per = b.quotient_cardinality(p, k)?;
                Some(per.pow((modulus.len() - 1) as u32))
            }
            RingDescriptor::CyclotomicLevel { p: p0, level } => {
                let d = super::phi_p_power(*p0, *level) as u32;
                Some(pk.pow(d))
            }
            RingDescriptor::CyclotomicTower { .. } => None,
        }
    }

    /// Representatives of R/p^k R, each residue class exactly once.
    pub fn enumerate_quotient(
        &self,
        p: u64,
        k: u32,
    ) -> Result<Box<dyn Iterator<Item = RingElement>>> {
        if self
            .quotient_cardinality(p, k)
            .is_none()
        {
            return Err(WittError::CapabilityMissing(format!(
                "{}: R/p^k R is infinite (p={p}, k={k})",
                self.spec_string()
            )));
        }
        let ring = self.clone();
        match self.descriptor() {
            RingDescriptor::Integers
            | RingDescriptor::ModularIntegers { .. }
            | RingDescriptor::PrimeField { .. } => {
                let n = self
                    .quotient_cardinality(p, k)
                    .unwrap()
                    .to_u64()
                    .ok_or_else(|| {
                        WittError::BudgetExhausted("quotient too large to stream".into())
                    })?;
                Ok(Box::new((0..n).map(move |v| ring.from_int(BigInt::from(v)))))
            }
            RingDescriptor::PolynomialRing { .. } => {
                // p invertible in the base: trivial quotient.
                Ok(Box::new(std::iter::once(ring.zero())))
            }
            RingDescriptor::QuotientRing { base, modulus, .. } => {
                let b = Ring::from_descriptor((**base).clone());
                let per = b
                    .quotient_cardinality(p, k)
                    .unwrap()
                    .to_u64()
                    .ok_or_else(|| {
                        WittError::BudgetExhausted("coefficient quotient too large".into())
                    })?;
                let deg = modulus.len() - 1;
                Ok(Box::new(Odometer::new(deg, per).map(move |digits| {
                    let coeffs: Vec<BigInt> = digits.into_iter().map(BigInt::from).collect();
                    ring.poly_element(coeffs).expect("valid poly coefficients")
                })))
            }
            RingDescriptor::CyclotomicLevel { p: p0, level } => {
                let d = super::phi_p_power(*p0, *level) as usize;
                let per = BigUint::from(p).pow(k).to_u64().ok_or_else(|| {
                    WittError::BudgetExhausted("coefficient quotient too large".into())
                })?;
                Ok(Box::new(Odometer::new(d, per).map(move |digits| {
                    let coeffs: Vec<BigInt> = digits.into_iter().map(BigInt::from).collect();
                    ring.poly_element(coeffs).expect("valid poly coefficients")
                })))
            }
            RingDescriptor::CyclotomicTower { .. } => unreachable!("rejected above"),
        }
    }

    /// All elements of a finite ring.
    pub fn enumerate_all(&self) -> Result<Box<dyn Iterator<Item = RingElement>>> {
        let ring = self.clone();
        match self.descriptor() {
            RingDescriptor::ModularIntegers { modulus } | RingDescriptor::PrimeField { prime: modulus } => {
                let n = modulus.to_u64().ok_or_else(|| {
                    WittError::BudgetExhausted("ring too large to enumerate".into())
                })?;
                Ok(Box::new((0..n).map(move |v| ring.from_int(BigInt::from(v)))))
            }
            RingDescriptor::QuotientRing { base, modulus, .. } => {
                let b = Ring::from_descriptor((**base).clone());
                let per = b
                    .cardinality()
                    .ok_or_else(|| {
                        WittError::CapabilityMissing(format!(
                            "{} is infinite",
                            self.spec_string()
                        ))
                    })?
                    .to_u64()
                    .ok_or_else(|| {
                        WittError::BudgetExhausted("ring too large to enumerate".into())
                    })?;
                let deg = modulus.len() - 1;
                Ok(Box::new(Odometer::new(deg, per).map(move |digits| {
                    let coeffs: Vec<BigInt> = digits.into_iter().map(BigInt::from).collect();
                    ring.poly_element(coeffs).expect("valid poly coefficients")
                })))
            }
            _ => Err(WittError::CapabilityMissing(format!(
                "{} is infinite",
                self.spec_string()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn integers_mod_four() {
        let z = Ring::integers();
        let reps: Vec<_> = z.enumerate_quotient(2, 2).unwrap().collect();
        assert_eq!(reps.len(), 4);
        assert_eq!(reps[3], z.from_int(BigInt::from(3)));
    }

    #[test]
    fn prime_field_mod_p() {
        let f3 = Ring::prime_field(BigUint::from(3u32)).unwrap();
        let reps: Vec<_> = f3.enumerate_quotient(3, 1).unwrap().collect();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn gaussian_integers_mod_two() {
        // Z[i]/2 has 4 classes: {0, 1, i, 1+i}.
        let zi = Ring::cyclotomic(2, 2).unwrap();
        let reps: BTreeSet<_> = zi.enumerate_quotient(2, 1).unwrap().collect();
        assert_eq!(reps.len(), 4);
        assert!(reps.contains(&zi.zero()));
        assert!(reps.contains(&zi.one()));
        assert!(reps.contains(&zi.generator().unwrap()));
    }

    #[test]
    fn each_class_appears_once() {
        let z9 = Ring::modular(BigUint::from(9u32)).unwrap();
        // R/3R in Z/9 has 3 classes.
        let reps: Vec<_> = z9.enumerate_quotient(3, 1).unwrap().collect();
        assert_eq!(reps.len(), 3);
        let set: BTreeSet<_> = reps.iter().collect();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn infinite_quotient_rejected() {
        let f3t = Ring::polynomial(&Ring::prime_field(BigUint::from(3u32)).unwrap(), "T").unwrap();
        assert!(f3t.enumerate_quotient(3, 1).is_err());
        let tower = Ring::cyclotomic_tower(3).unwrap();
        assert!(tower.enumerate_quotient(3, 1).is_err());
    }
}
