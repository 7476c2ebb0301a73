//! Exact p-adic valuations, normalized so v(p) = 1.
//!
//! For cyclotomic integers the valuation is computed through the field norm
//! (determinant of the multiplication matrix on the power basis): p is
//! totally ramified in Z[mu_{p^n}], so every conjugate of a has the same
//! valuation and v(a) = v_p(N(a)) / phi(p^n), an exact rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, WittError};

use super::polyvec;
use super::scalar::ScalarBase;
use super::{cyclotomic_polynomial, phi_p_power, Repr, Ring, RingDescriptor, RingElement};

/// A valuation value: a rational, or +infinity (only for 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// v >= bound (infinity exceeds everything).
    pub fn at_least(&self, bound: &BigRational) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v >= bound,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Infinite => write!(f, "+inf"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl std::ops::Add for &Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

pub(crate) fn int_val_p(v: &BigInt, p: u64) -> Option<u64> {
    if v.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = v.abs();
    let mut count = 0u64;
    while (&n % &p).is_zero() {
        n /= &p;
        count += 1;
    }
    Some(count)
}

impl Ring {
    /// p-adic valuation normalized to v(p) = 1; +infinity iff a = 0.
    pub fn valuation(&self, a: &RingElement, p: u64) -> Result<Valuation> {
        self.check_element(a)?;
        if !self.capabilities(p).has_valuation {
            return Err(WittError::CapabilityMissing(format!(
                "{} has no valuation for p={p}",
                self.spec_string()
            )));
        }
        if a.is_zero() {
            return Ok(Valuation::Infinite);
        }
        match (self.descriptor(), &a.repr) {
            (RingDescriptor::Integers, Repr::Int(v)) => {
                let k = int_val_p(v, p).expect("nonzero");
                Ok(Valuation::Finite(BigRational::from(BigInt::from(k))))
            }
            (RingDescriptor::CyclotomicLevel { p: p0, level }, Repr::Poly(coeffs)) => {
                debug_assert_eq!(*p0, p);
                Ok(cyclo_valuation(p, *level, coeffs))
            }
            (RingDescriptor::CyclotomicTower { p: p0 }, Repr::Tower { level, coeffs }) => {
                debug_assert_eq!(*p0, p);
                Ok(cyclo_valuation(p, *level, coeffs))
            }
            _ => unreachable!("capability check covers the remaining shapes"),
        }
    }
}

fn cyclo_valuation(p: u64, level: u32, coeffs: &[BigInt]) -> Valuation {
    let d = phi_p_power(p, level);
    let norm = cyclo_norm(p, level, coeffs);
    debug_assert!(!norm.is_zero(), "norm of a nonzero cyclotomic element");
    let k = int_val_p(&norm, p).expect("nonzero norm");
    Valuation::Finite(BigRational::new(BigInt::from(k), BigInt::from(d)))
}

/// Field norm of an element of Z[T]/(Phi_{p^level}): the determinant of the
/// multiplication-by-a matrix on the power basis.
pub(crate) fn cyclo_norm(p: u64, level: u32, coeffs: &[BigInt]) -> BigInt {
    let phi = cyclotomic_polynomial(p, level);
    let d = phi.len() - 1;
    let base = ScalarBase::Int;
    // Column j = coefficients of a * T^j mod Phi.
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut cur = coeffs.to_vec();
    for _ in 0..d {
        let mut col = cur.clone();
        col.resize(d, BigInt::zero());
        cols.push(col);
        // multiply by T
        let mut next = vec![BigInt::zero()];
        next.extend(cur.iter().cloned());
        cur = polyvec::rem_monic(&base, next, &phi);
    }
    let matrix: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    det_bareiss(matrix)
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match pivot {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

impl Ring {
    /// The uniformizer 1 - mu of a cyclotomic level (valuation 1/phi(p^n)).
    pub fn cyclo_uniformizer(&self) -> Result<RingElement> {
        match self.descriptor() {
            RingDescriptor::CyclotomicLevel { .. } => {
                let mu = self.generator()?;
                self.sub(&self.one(), &mu)
            }
            _ => Err(WittError::CapabilityMissing(
                "uniformizer only defined for cyclotomic levels".into(),
            )),
        }
    }

    /// Exact division by the uniformizer 1 - mu, or None when a is not a
    /// multiple. Uses (1 - T) q(T) + p = Phi(T), i.e. (1-T)^{-1} = -q/p.
    pub(crate) fn divide_by_uniformizer(&self, a: &RingElement) -> Result<Option<RingElement>> {
        let (p, level) = match self.descriptor() {
            RingDescriptor::CyclotomicLevel { p, level } => (*p, *level),
            _ => {
                return Err(WittError::CapabilityMissing(
                    "uniformizer division only for cyclotomic levels".into(),
                ))
            }
        };
        let coeffs = match &a.repr {
            Repr::Poly(c) => c,
            _ => unreachable!(),
        };
        if coeffs.is_empty() {
            return Ok(Some(self.zero()));
        }
        let phi = cyclotomic_polynomial(p, level);
        let (q, r) = polyvec::div_by_one_minus_t(&phi);
        debug_assert_eq!(r, BigInt::from(p));
        let neg_q: Vec<BigInt> = q.iter().map(|c| -c).collect();
        let base = ScalarBase::Int;
        let prod = polyvec::mul_mod(&base, coeffs, &neg_q, Some(&phi));
        let pz = BigInt::from(p);
        let mut out = Vec::with_capacity(prod.len());
        for c in &prod {
            if (c % &pz).is_zero() {
                out.push(c / &pz);
            } else {
                return Ok(None);
            }
        }
        Ok(Some(self.poly_element(out)?))
    }

    /// First `count` digits of a in the uniformizer-adic expansion:
    /// a = sum digits[i] * (1-mu)^i (mod (1-mu)^count), digits in [0, p).
    /// This is the canonical form of a modulo (1-mu)^count.
    pub(crate) fn uniformizer_digits(&self, a: &RingElement, count: usize) -> Result<Vec<u64>> {
        let p = match self.descriptor() {
            RingDescriptor::CyclotomicLevel { p, .. } => *p,
            _ => {
                return Err(WittError::CapabilityMissing(
                    "uniformizer digits only for cyclotomic levels".into(),
                ))
            }
        };
        let mut digits = Vec::with_capacity(count);
        let mut cur = a.clone();
        for _ in 0..count {
            let coeffs = match &cur.repr {
                Repr::Poly(c) => c.clone(),
                _ => unreachable!(),
            };
            // Residue map R -> R/(1-mu) = F_p sends mu to 1, i.e. evaluate at 1.
            let digit = num_integer::Integer::mod_floor(
                &polyvec::eval_int(&coeffs, &BigInt::one()),
                &BigInt::from(p),
            );
            let digit_u = u64::try_from(&digit).expect("digit in [0,p)");
            digits.push(digit_u);
            let adjusted = self.sub(&cur, &self.from_int(digit))?;
            cur = self
                .divide_by_uniformizer(&adjusted)?
                .ok_or_else(|| WittError::Internal("digit subtraction not divisible".into()))?;
        }
        Ok(digits)
    }
}
