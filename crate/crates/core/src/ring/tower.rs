//! Level bookkeeping for the cyclotomic tower.
//!
//! A tower element is stored as (level n, coefficients in the basis
//! mu_{p^n}^j). Raising the level sends exponent j to j * p^(m-n) because
//! mu_{p^n} = (mu_{p^m})^(p^(m-n)); an element drops to a lower level iff its
//! support lies on exponents divisible by p, and normalization drops levels
//! eagerly so that equality across levels is decidable.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Result, WittError};

use super::polyvec;
use super::scalar::ScalarBase;
use super::{cyclotomic_polynomial, Repr, Ring, RingDescriptor, RingElement};

/// Re-express coefficients at a higher tower level.
pub(crate) fn lift_coeffs(p: u64, coeffs: &[BigInt], from: u32, to: u32) -> Vec<BigInt> {
    debug_assert!(to >= from);
    if to == from || coeffs.is_empty() {
        return coeffs.to_vec();
    }
    let factor = (p as usize).pow(to - from);
    let mut out = vec![BigInt::zero(); (coeffs.len() - 1) * factor + 1];
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out[j * factor] = c.clone();
        }
    }
    out
}

/// Reduce mod Phi_{p^level} and drop to the minimal expressible level.
pub(crate) fn normalize(p: u64, level: u32, coeffs: Vec<BigInt>) -> (u32, Vec<BigInt>) {
    let base = ScalarBase::Int;
    let phi = cyclotomic_polynomial(p, level);
    let mut coeffs = polyvec::rem_monic(&base, coeffs, &phi);
    let mut level = level;
    'drop: while level > 1 {
        let step = p as usize;
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() && j % step != 0 {
                break 'drop;
            }
        }
        let mut lower = vec![BigInt::zero(); coeffs.len() / step + 1];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                lower[j / step] = c.clone();
            }
        }
        polyvec::trim(&mut lower);
        level -= 1;
        // The lowered vector already has degree < phi(p^level); no reduction
        // is needed, but run it for safety on adversarial inputs.
        let phi_lower = cyclotomic_polynomial(p, level);
        coeffs = polyvec::rem_monic(&base, lower, &phi_lower);
    }
    polyvec::trim(&mut coeffs);
    (level, coeffs)
}

pub(crate) fn make_tower_element(ring: &Ring, level: u32, coeffs: Vec<BigInt>) -> RingElement {
    let p = match ring.descriptor() {
        RingDescriptor::CyclotomicTower { p } => *p,
        _ => unreachable!("tower element in non-tower ring"),
    };
    let (level, coeffs) = normalize(p, level.max(1), coeffs);
    RingElement {
        ring: ring.clone(),
        repr: Repr::Tower { level, coeffs },
    }
}

impl Ring {
    /// The primitive p^level-th root of unity as a tower element.
    pub fn tower_root_of_unity(&self, level: u32) -> Result<RingElement> {
        match self.descriptor() {
            RingDescriptor::CyclotomicTower { .. } => {
                if level < 1 {
                    return Err(WittError::InvalidRequest("tower level must be >= 1".into()));
                }
                let mut coeffs = vec![BigInt::zero(); 2];
                coeffs[1] = BigInt::from(1);
                Ok(make_tower_element(self, level, coeffs))
            }
            _ => Err(WittError::CapabilityMissing(format!(
                "{} is not a cyclotomic tower",
                self.spec_string()
            ))),
        }
    }

    /// Rewrite a tower element at a target level m >= its stored level.
    ///
    /// The result is returned un-normalized in value terms: it equals the
    /// input as a ring element, so normalization maps it straight back. The
    /// coefficient vector read at level m is what callers want (e.g. the
    /// p-th root rule reads a level-n vector at level n+1).
    pub fn embed_tower(&self, a: &RingElement, target_level: u32) -> Result<Vec<BigInt>> {
        self.check_element(a)?;
        match (&a.repr, self.descriptor()) {
            (Repr::Tower { level, coeffs }, RingDescriptor::CyclotomicTower { p }) => {
                if target_level < *level {
                    return Err(WittError::InvalidRequest(format!(
                        "cannot embed level {level} element at lower level {target_level}"
                    )));
                }
                Ok(lift_coeffs(*p, coeffs, *level, target_level))
            }
            _ => Err(WittError::CapabilityMissing(
                "embed_tower requires a cyclotomic tower element".into(),
            )),
        }
    }

    /// Stored (minimal) level of a tower element.
    pub fn tower_level(&self, a: &RingElement) -> Result<u32> {
        self.check_element(a)?;
        match &a.repr {
            Repr::Tower { level, .. } => Ok(*level),
            _ => Err(WittError::CapabilityMissing(
                "not a tower element".into(),
            )),
        }
    }

    /// Build a tower element from coefficients at a stated level.
    pub fn tower_element(&self, level: u32, coeffs: Vec<BigInt>) -> Result<RingElement> {
        match self.descriptor() {
            RingDescriptor::CyclotomicTower { .. } => {
                if level < 1 {
                    return Err(WittError::InvalidRequest("tower level must be >= 1".into()));
                }
                Ok(make_tower_element(self, level, coeffs))
            }
            _ => Err(WittError::CapabilityMissing(format!(
                "{} is not a cyclotomic tower",
                self.spec_string()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn level_normalization_drops_embedded_elements() {
        let tower = Ring::cyclotomic_tower(3).unwrap();
        let mu3 = tower.tower_root_of_unity(1).unwrap();
        // mu_3 written at level 2 is mu_9^3; normalization brings it back.
        let lifted = tower.embed_tower(&mu3, 2).unwrap();
        assert_eq!(lifted.len(), 4);
        assert!(lifted[3].is_one());
        let back = tower.tower_element(2, lifted).unwrap();
        assert_eq!(back, mu3);
        assert_eq!(tower.tower_level(&back).unwrap(), 1);
    }

    #[test]
    fn integers_sit_at_level_one() {
        let tower = Ring::cyclotomic_tower(5).unwrap();
        let five = tower.tower_element(3, vec![BigInt::from(5)]).unwrap();
        assert_eq!(tower.tower_level(&five).unwrap(), 1);
    }
}
