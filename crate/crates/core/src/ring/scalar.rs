//! Scalar coefficient bases (Z or Z/m) backing polynomial representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Coefficient domain for polynomial-backed rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ScalarBase {
    Int,
    /// Z/m, canonical representative in [0, m).
    Mod(BigInt),
}

impl ScalarBase {
    pub fn canon(&self, v: BigInt) -> BigInt {
        match self {
            ScalarBase::Int => v,
            ScalarBase::Mod(m) => {
                let r = v.mod_floor(m);
                debug_assert!(!r.is_negative());
                r
            }
        }
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.canon(a + b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.canon(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.canon(-a)
    }

    pub fn is_zero_val(&self, a: &BigInt) -> bool {
        match self {
            ScalarBase::Int => a.is_zero(),
            ScalarBase::Mod(m) => a.mod_floor(m).is_zero(),
        }
    }
}
