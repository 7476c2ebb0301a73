//! p-th roots modulo p.

use crate::error::{Result, WittError};

use super::{Repr, Ring, RingDescriptor, RingElement};

impl Ring {
    /// A value s with s^p = a (mod pR), if one exists.
    ///
    /// Rings that advertise `has_pth_root_mod_p` produce a root directly:
    /// - Z: a itself (a^p = a mod p),
    /// - GF(p): a itself,
    /// - the cyclotomic tower at its own prime: rewrite a at level n in the
    ///   basis mu_{p^n}^j and read the same coefficients at level n+1, since
    ///   (mu_{p^(n+1)}^j)^p = mu_{p^n}^j and x -> x^p is additive mod p.
    ///
    /// Other rings with finite R/pR fall back to exhaustive search over
    /// quotient representatives (complete: s^p mod pR depends only on
    /// s mod pR), subject to `budget` candidates.
    pub fn pth_root_mod_p(
        &self,
        a: &RingElement,
        p: u64,
        budget: u64,
    ) -> Result<Option<RingElement>> {
        self.check_element(a)?;
        if self.int_is_unit(&num_bigint::BigInt::from(p)) {
            // pR = R: everything is congruent to everything mod pR.
            return Ok(Some(self.zero()));
        }
        match self.descriptor() {
            RingDescriptor::Integers => Ok(Some(a.clone())),
            RingDescriptor::PrimeField { prime } if prime == &num_bigint::BigUint::from(p) => {
                Ok(Some(a.clone()))
            }
            RingDescriptor::CyclotomicTower { p: p0 } if *p0 == p => {
                let (level, coeffs) = match &a.repr {
                    Repr::Tower { level, coeffs } => (*level, coeffs.clone()),
                    _ => unreachable!(),
                };
                Ok(Some(self.tower_element(level + 1, coeffs)?))
            }
            _ => self.pth_root_by_search(a, p, budget),
        }
    }

    fn pth_root_by_search(
        &self,
        a: &RingElement,
        p: u64,
        budget: u64,
    ) -> Result<Option<RingElement>> {
        if self.quotient_cardinality(p, 1).is_none() {
            return Err(WittError::CapabilityMissing(format!(
                "{}: no p-th root rule and R/pR is infinite",
                self.spec_string()
            )));
        }
        let mut scanned = 0u64;
        for s in self.enumerate_quotient(p, 1)? {
            scanned += 1;
            if scanned > budget {
                return Err(WittError::BudgetExhausted(format!(
                    "p-th root search exceeded {budget} candidates"
                )));
            }
            let sp = self.pow(&s, p)?;
            let diff = self.sub(&sp, a)?;
            if self.in_p_multiple(&diff, p) {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};

    #[test]
    fn integers_use_fermat() {
        // 5^3 = 125 = 5 mod 3.
        let z = Ring::integers();
        let a = z.from_int(BigInt::from(5));
        let s = z.pth_root_mod_p(&a, 3, 100).unwrap().unwrap();
        assert_eq!(s, a);
        let cube = z.pow(&s, 3).unwrap();
        assert!(z.in_p_multiple(&z.sub(&cube, &a).unwrap(), 3));
    }

    #[test]
    fn tower_raises_the_level() {
        let t = Ring::cyclotomic_tower(3).unwrap();
        let mu3 = t.tower_root_of_unity(1).unwrap();
        let s = t.pth_root_mod_p(&mu3, 3, 0).unwrap().unwrap();
        assert_eq!(s, t.tower_root_of_unity(2).unwrap());
        // Certificate: s^3 - mu_3 in 3R.
        let cube = t.pow(&s, 3).unwrap();
        let diff = t.sub(&cube, &mu3).unwrap();
        assert!(t.in_p_multiple(&diff, 3));
    }

    #[test]
    fn nilpotent_quotient_has_no_root_of_t() {
        // GF(5)[T]/(T^2): s^5 = const for every s, so T has no 5th root.
        let f5 = Ring::prime_field(BigUint::from(5u32)).unwrap();
        let f5t = Ring::polynomial(&f5, "T").unwrap();
        let ring = Ring::quotient(&f5t, vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)])
            .unwrap();
        let t = ring.generator().unwrap();
        // Oracle: enumerate all 25 residues and check none is a root.
        let mut found = 0;
        for s in ring.enumerate_all().unwrap() {
            let sp = ring.pow(&s, 5).unwrap();
            if sp == t {
                found += 1;
            }
        }
        assert_eq!(found, 0);
        assert_eq!(ring.pth_root_mod_p(&t, 5, 1000).unwrap(), None);
    }

    #[test]
    fn search_budget_is_enforced() {
        let zi = Ring::cyclotomic(2, 2).unwrap();
        let err = zi.pth_root_mod_p(&zi.generator().unwrap(), 2, 1);
        assert!(matches!(err, Err(WittError::BudgetExhausted(_))));
    }
}
