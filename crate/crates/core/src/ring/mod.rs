//! Exact commutative rings with canonical element forms.
//!
//! A [`Ring`] is a cheap handle on a [`RingDescriptor`]; two rings are
//! interchangeable iff their descriptors are structurally equal. Elements
//! are always stored in canonical form, so equality of canonical forms is
//! ring equality:
//!
//! - modular integers keep the least nonnegative residue,
//! - polynomial quotients keep the reduced remainder with coefficients
//!   canonicalized in the base ring,
//! - cyclotomic tower elements are level-normalized: an element is stored at
//!   the minimal level at which it is expressible.

mod arith;
mod display;
mod enumerate;
mod parse;
mod roots;
mod scalar;
mod tower;
mod valuation;

pub(crate) mod polyvec;

pub use parse::{parse_element, parse_ring_spec};
pub use valuation::Valuation;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Result, WittError};
pub(crate) use scalar::ScalarBase;

/// Structural description of a supported ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    /// The ring of integers Z.
    Integers,
    /// Z/mZ for m >= 2 (m not necessarily prime).
    ModularIntegers { modulus: BigUint },
    /// The prime field GF(q).
    PrimeField { prime: BigUint },
    /// Univariate polynomials over a scalar base ring.
    PolynomialRing { base: Box<RingDescriptor>, var: String },
    /// base[var]/(modulus) for a monic modulus of degree >= 1.
    /// Coefficients are listed by ascending degree and canonical in the base.
    QuotientRing {
        base: Box<RingDescriptor>,
        var: String,
        modulus: Vec<BigInt>,
    },
    /// Z[mu] for mu a primitive p^level-th root of unity, realized as
    /// Z[T]/(Phi_{p^level}) with Phi_{p^n}(T) = sum_{i<p} T^{i p^{n-1}}.
    CyclotomicLevel { p: u64, level: u32 },
    /// The union of all Z[mu_{p^n}]; elements carry their own level.
    CyclotomicTower { p: u64 },
}

/// Canonical representation of a ring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Repr {
    /// Integers / ModularIntegers / PrimeField: a canonical integer.
    Int(BigInt),
    /// Polynomial-backed rings: dense coefficients by ascending degree,
    /// trailing zeros trimmed, each coefficient canonical in the scalar base.
    Poly(Vec<BigInt>),
    /// Tower element at its minimal level, coefficients as in `Poly`
    /// relative to Phi_{p^level}.
    Tower { level: u32, coeffs: Vec<BigInt> },
}

/// Shared handle on a ring descriptor.
#[derive(Clone, PartialOrd, Ord)]
pub struct Ring {
    inner: Arc<RingDescriptor>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.spec_string())
    }
}

/// An element of a [`Ring`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub(crate) ring: Ring,
    pub(crate) repr: Repr,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(v) => v.is_zero(),
            Repr::Poly(c) => c.is_empty(),
            Repr::Tower { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }
}

/// Result of an exact division by p; `unique` is false when the ring has
/// p-torsion and other solutions exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDivision {
    pub quotient: RingElement,
    pub unique: bool,
}

/// Shape of the attainable valuation group, normalized so v(p) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueGroup {
    /// Values in Z * (1/denom).
    Lattice { denom: u64 },
    /// Dense p-divisible group (the cyclotomic tower).
    PDivisible,
}

/// Capability flags for a ring relative to a fixed prime p.
///
/// Flags are sound: an advertised capability's operation never fails on
/// valid input from that ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCapabilities {
    pub is_finite: bool,
    pub is_p_torsion_free: bool,
    pub has_exact_p_division: bool,
    /// A p-th root mod p can always be produced (not merely searched for).
    pub has_pth_root_mod_p: bool,
    pub has_valuation: bool,
    pub value_group: Option<ValueGroup>,
    /// R/p^k R is finite and enumerable for every k >= 1.
    pub can_enumerate_quotient: bool,
}

impl Ring {
    pub(crate) fn from_descriptor(d: RingDescriptor) -> Ring {
        Ring { inner: Arc::new(d) }
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.inner
    }

    pub fn integers() -> Ring {
        Ring::from_descriptor(RingDescriptor::Integers)
    }

    pub fn modular(modulus: BigUint) -> Result<Ring> {
        if modulus < BigUint::from(2u32) {
            return Err(WittError::InvalidRequest(format!(
                "modulus must be >= 2, got {modulus}"
            )));
        }
        Ok(Ring::from_descriptor(RingDescriptor::ModularIntegers {
            modulus,
        }))
    }

    pub fn prime_field(q: BigUint) -> Result<Ring> {
        if !is_prime_biguint(&q) {
            return Err(WittError::InvalidRequest(format!(
                "GF({q}): {q} is not prime"
            )));
        }
        Ok(Ring::from_descriptor(RingDescriptor::PrimeField { prime: q }))
    }

    pub fn polynomial(base: &Ring, var: &str) -> Result<Ring> {
        base.require_scalar("polynomial ring base")?;
        check_var(var)?;
        Ok(Ring::from_descriptor(RingDescriptor::PolynomialRing {
            base: Box::new(base.descriptor().clone()),
            var: var.to_string(),
        }))
    }

    /// Quotient of a polynomial ring by a monic modulus of degree >= 1
    /// (ascending coefficients, canonicalized in the coefficient base).
    pub fn quotient(poly_ring: &Ring, modulus: Vec<BigInt>) -> Result<Ring> {
        let (base, var) = match poly_ring.descriptor() {
            RingDescriptor::PolynomialRing { base, var } => (base.clone(), var.clone()),
            _ => {
                return Err(WittError::InvalidRequest(format!(
                    "quotient base must be a polynomial ring, got {}",
                    poly_ring.spec_string()
                )))
            }
        };
        let sb = poly_ring.coeff_base().expect("polynomial ring has scalar base");
        let mut m: Vec<BigInt> = modulus.into_iter().map(|c| sb.canon(c)).collect();
        polyvec::trim(&mut m);
        if m.len() < 2 {
            return Err(WittError::InvalidRequest(
                "quotient modulus must have degree >= 1".into(),
            ));
        }
        if !m.last().unwrap().is_one() {
            return Err(WittError::InvalidRequest(
                "quotient modulus must be monic".into(),
            ));
        }
        Ok(Ring::from_descriptor(RingDescriptor::QuotientRing {
            base,
            var,
            modulus: m,
        }))
    }

    pub fn cyclotomic(p: u64, level: u32) -> Result<Ring> {
        if !is_prime_u64(p) {
            return Err(WittError::InvalidRequest(format!("{p} is not prime")));
        }
        if level < 1 {
            return Err(WittError::InvalidRequest(
                "cyclotomic level must be >= 1".into(),
            ));
        }
        check_cyclotomic_size(p, level)?;
        Ok(Ring::from_descriptor(RingDescriptor::CyclotomicLevel {
            p,
            level,
        }))
    }

    pub fn cyclotomic_tower(p: u64) -> Result<Ring> {
        if !is_prime_u64(p) {
            return Err(WittError::InvalidRequest(format!("{p} is not prime")));
        }
        Ok(Ring::from_descriptor(RingDescriptor::CyclotomicTower { p }))
    }

    fn require_scalar(&self, what: &str) -> Result<()> {
        if self.scalar_base().is_none() {
            return Err(WittError::InvalidRequest(format!(
                "{what} must be Z, Z/m, or GF(q), got {}",
                self.spec_string()
            )));
        }
        Ok(())
    }

    /// Scalar coefficient base for this ring if it is Z, Z/m, or GF(q).
    pub(crate) fn scalar_base(&self) -> Option<ScalarBase> {
        match self.descriptor() {
            RingDescriptor::Integers => Some(ScalarBase::Int),
            RingDescriptor::ModularIntegers { modulus } => Some(ScalarBase::Mod(
                BigInt::from(modulus.clone()),
            )),
            RingDescriptor::PrimeField { prime } => {
                Some(ScalarBase::Mod(BigInt::from(prime.clone())))
            }
            _ => None,
        }
    }

    /// Scalar base of the coefficients for polynomial-backed rings.
    pub(crate) fn coeff_base(&self) -> Option<ScalarBase> {
        match self.descriptor() {
            RingDescriptor::PolynomialRing { base, .. }
            | RingDescriptor::QuotientRing { base, .. } => {
                Ring::from_descriptor((**base).clone()).scalar_base()
            }
            RingDescriptor::CyclotomicLevel { .. } | RingDescriptor::CyclotomicTower { .. } => {
                Some(ScalarBase::Int)
            }
            _ => None,
        }
    }

    /// Modulus polynomial for quotient-type rings (ascending degree, monic).
    pub(crate) fn modulus_poly(&self) -> Option<Vec<BigInt>> {
        match self.descriptor() {
            RingDescriptor::QuotientRing { modulus, .. } => Some(modulus.clone()),
            RingDescriptor::CyclotomicLevel { p, level } => {
                Some(cyclotomic_polynomial(*p, *level))
            }
            _ => None,
        }
    }

    /// Characteristic of the ring; zero for characteristic 0.
    pub fn characteristic(&self) -> BigUint {
        match self.descriptor() {
            RingDescriptor::Integers
            | RingDescriptor::CyclotomicLevel { .. }
            | RingDescriptor::CyclotomicTower { .. } => BigUint::zero(),
            RingDescriptor::ModularIntegers { modulus } => modulus.clone(),
            RingDescriptor::PrimeField { prime } => prime.clone(),
            RingDescriptor::PolynomialRing { base, .. }
            | RingDescriptor::QuotientRing { base, .. } => {
                Ring::from_descriptor((**base).clone()).characteristic()
            }
        }
    }

    /// Number of elements, when finite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self.descriptor() {
            RingDescriptor::Integers
            | RingDescriptor::CyclotomicLevel { .. }
            | RingDescriptor::CyclotomicTower { .. }
            | RingDescriptor::PolynomialRing { .. } => None,
            RingDescriptor::ModularIntegers { modulus } => Some(modulus.clone()),
            RingDescriptor::PrimeField { prime } => Some(prime.clone()),
            RingDescriptor::QuotientRing { base, modulus, .. } => {
                let b = Ring::from_descriptor((**base).clone()).cardinality()?;
                Some(b.pow((modulus.len() - 1) as u32))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// Capability flags relative to the prime p.
    pub fn capabilities(&self, p: u64) -> RingCapabilities {
        let char_ = self.characteristic();
        let p_big = BigUint::from(p);
        let char_is_p_multiple = !char_.is_zero() && (&char_ % &p_big).is_zero();
        let p_invertible = self.int_is_unit(&BigInt::from(p));
        match self.descriptor() {
            RingDescriptor::Integers => RingCapabilities {
                is_finite: false,
                is_p_torsion_free: true,
                has_exact_p_division: true,
                has_pth_root_mod_p: true,
                has_valuation: true,
                value_group: Some(ValueGroup::Lattice { denom: 1 }),
                can_enumerate_quotient: true,
            },
            RingDescriptor::ModularIntegers { .. } | RingDescriptor::PrimeField { .. } => {
                RingCapabilities {
                    is_finite: true,
                    is_p_torsion_free: !char_is_p_multiple,
                    has_exact_p_division: true,
                    has_pth_root_mod_p: self.is_finite(),
                    has_valuation: false,
                    value_group: None,
                    can_enumerate_quotient: true,
                }
            }
            RingDescriptor::PolynomialRing { .. } => RingCapabilities {
                is_finite: false,
                is_p_torsion_free: !char_is_p_multiple,
                has_exact_p_division: true,
                has_pth_root_mod_p: false,
                has_valuation: false,
                value_group: None,
                // R/p^k R = R is infinite in characteristic p; otherwise p is
                // invertible in the base so the quotient is trivial.
                can_enumerate_quotient: !char_is_p_multiple && p_invertible,
            },
            RingDescriptor::QuotientRing { .. } => RingCapabilities {
                is_finite: self.is_finite(),
                is_p_torsion_free: !char_is_p_multiple,
                has_exact_p_division: true,
                has_pth_root_mod_p: false,
                has_valuation: false,
                value_group: None,
                can_enumerate_quotient: true,
            },
            RingDescriptor::CyclotomicLevel { p: p0, level } => {
                let matches_p = *p0 == p;
                let denom = if matches_p {
                    Some(phi_p_power(*p0, *level))
                } else {
                    None
                };
                RingCapabilities {
                    is_finite: false,
                    is_p_torsion_free: true,
                    has_exact_p_division: true,
                    has_pth_root_mod_p: false,
                    has_valuation: matches_p,
                    value_group: denom.map(|d| ValueGroup::Lattice { denom: d }),
                    can_enumerate_quotient: true,
                }
            }
            RingDescriptor::CyclotomicTower { p: p0 } => {
                let matches_p = *p0 == p;
                RingCapabilities {
                    is_finite: false,
                    is_p_torsion_free: true,
                    has_exact_p_division: true,
                    has_pth_root_mod_p: matches_p,
                    has_valuation: matches_p,
                    value_group: if matches_p {
                        Some(ValueGroup::PDivisible)
                    } else {
                        None
                    },
                    can_enumerate_quotient: false,
                }
            }
        }
    }

    /// True when the given integer is a unit of the ring.
    pub(crate) fn int_is_unit(&self, k: &BigInt) -> bool {
        use num_integer::Integer;
        match self.descriptor() {
            RingDescriptor::Integers => k.magnitude().is_one(),
            RingDescriptor::ModularIntegers { modulus } | RingDescriptor::PrimeField { prime: modulus } => {
                let m = BigInt::from(modulus.clone());
                k.gcd(&m).is_one()
            }
            RingDescriptor::PolynomialRing { base, .. }
            | RingDescriptor::QuotientRing { base, .. } => {
                // Integers embedded in a free module over the base: a unit of
                // the base stays a unit; for quotient rings over Z this is
                // conservative (it never claims a false unit).
                Ring::from_descriptor((**base).clone()).int_is_unit(k)
            }
            RingDescriptor::CyclotomicLevel { .. } | RingDescriptor::CyclotomicTower { .. } => {
                k.magnitude().is_one()
            }
        }
    }
}

fn check_var(var: &str) -> Result<()> {
    if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(WittError::InvalidRequest(format!(
            "invalid variable name {var:?}"
        )));
    }
    Ok(())
}

/// Degree of Phi_{p^level}, i.e. p^(level-1) * (p-1), guarded against overflow.
pub(crate) fn phi_p_power(p: u64, level: u32) -> u64 {
    p.pow(level - 1) * (p - 1)
}

fn check_cyclotomic_size(p: u64, level: u32) -> Result<()> {
    let mut deg: u128 = (p - 1) as u128;
    for _ in 1..level {
        deg = deg.saturating_mul(p as u128);
        if deg > 1 << 20 {
            return Err(WittError::InvalidRequest(format!(
                "cyclotomic level too large: Phi_{{{p}^{level}}} has excessive degree"
            )));
        }
    }
    Ok(())
}

/// Phi_{p^n}(T) = sum_{i=0}^{p-1} T^{i p^(n-1)}, ascending coefficients.
pub(crate) fn cyclotomic_polynomial(p: u64, level: u32) -> Vec<BigInt> {
    let step = p.pow(level - 1) as usize;
    let deg = step * (p as usize - 1);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for i in 0..p as usize {
        coeffs[i * step] = BigInt::one();
    }
    coeffs
}

/// Deterministic primality test for u64 values.
pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul_u64(acc, base, m);
        }
        base = mod_mul_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_biguint(n: &BigUint) -> bool {
    match u64::try_from(n) {
        Ok(v) => is_prime_u64(v),
        // Rings with moduli beyond u64 are not constructed by the CLI; reject.
        Err(_) => false,
    }
}
