//! Ring arithmetic, exact division by p, and general exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, WittError};

use super::polyvec;
use super::scalar::ScalarBase;
use super::tower::{lift_coeffs, make_tower_element};
use super::{PDivision, Repr, Ring, RingDescriptor, RingElement};

impl Ring {
    pub(crate) fn check_element(&self, a: &RingElement) -> Result<()> {
        if &a.ring != self {
            return Err(WittError::RingMismatch(format!(
                "element of {} used in {}",
                a.ring.spec_string(),
                self.spec_string()
            )));
        }
        Ok(())
    }

    fn check_pair(&self, a: &RingElement, b: &RingElement) -> Result<()> {
        self.check_element(a)?;
        self.check_element(b)
    }

    pub fn zero(&self) -> RingElement {
        match self.descriptor() {
            RingDescriptor::Integers
            | RingDescriptor::ModularIntegers { .. }
            | RingDescriptor::PrimeField { .. } => RingElement {
                ring: self.clone(),
                repr: Repr::Int(BigInt::zero()),
            },
            RingDescriptor::CyclotomicTower { .. } => RingElement {
                ring: self.clone(),
                repr: Repr::Tower {
                    level: 1,
                    coeffs: Vec::new(),
                },
            },
            _ => RingElement {
                ring: self.clone(),
                repr: Repr::Poly(Vec::new()),
            },
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(BigInt::one())
    }

    /// Image of an integer under the canonical map Z -> R.
    pub fn from_int(&self, v: BigInt) -> RingElement {
        match self.descriptor() {
            RingDescriptor::Integers
            | RingDescriptor::ModularIntegers { .. }
            | RingDescriptor::PrimeField { .. } => {
                let sb = self.scalar_base().expect("scalar ring");
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Int(sb.canon(v)),
                }
            }
            RingDescriptor::CyclotomicTower { .. } => make_tower_element(self, 1, vec![v]),
            _ => self.poly_from_coeffs(vec![v]),
        }
    }

    /// Element of a polynomial-backed ring from ascending coefficients.
    pub fn poly_element(&self, coeffs: Vec<BigInt>) -> Result<RingElement> {
        if self.coeff_base().is_none() || matches!(self.descriptor(), RingDescriptor::CyclotomicTower { .. }) {
            return Err(WittError::InvalidRequest(format!(
                "{} does not take polynomial coefficient vectors",
                self.spec_string()
            )));
        }
        Ok(self.poly_from_coeffs(coeffs))
    }

    fn poly_from_coeffs(&self, coeffs: Vec<BigInt>) -> RingElement {
        let base = self.coeff_base().expect("polynomial-backed ring");
        let mut c = polyvec::canon(&base, coeffs);
        if let Some(m) = self.modulus_poly() {
            c = polyvec::rem_monic(&base, c, &m);
        }
        RingElement {
            ring: self.clone(),
            repr: Repr::Poly(c),
        }
    }

    /// The generator of a polynomial-backed ring (the class of the variable);
    /// for cyclotomic levels this is the chosen primitive root of unity.
    pub fn generator(&self) -> Result<RingElement> {
        match self.descriptor() {
            RingDescriptor::PolynomialRing { .. }
            | RingDescriptor::QuotientRing { .. }
            | RingDescriptor::CyclotomicLevel { .. } => {
                Ok(self.poly_from_coeffs(vec![BigInt::zero(), BigInt::one()]))
            }
            RingDescriptor::CyclotomicTower { .. } => Err(WittError::InvalidRequest(
                "tower has no single generator; use tower_root_of_unity(level)".into(),
            )),
            _ => Err(WittError::InvalidRequest(format!(
                "{} has no polynomial generator",
                self.spec_string()
            ))),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check_pair(a, b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check_pair(a, b)?;
        Ok(self.add_raw(a, &self.neg_raw(b)))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check_pair(a, b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement> {
        self.check_element(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn pow(&self, a: &RingElement, mut k: u64) -> Result<RingElement> {
        self.check_element(a)?;
        let mut acc = self.one();
        let mut sq = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul_raw(&sq, &sq);
            }
        }
        Ok(acc)
    }

    pub(crate) fn add_raw(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&a.repr, &b.repr) {
            (Repr::Int(x), Repr::Int(y)) => {
                let sb = self.scalar_base().expect("scalar ring");
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Int(sb.add(x, y)),
                }
            }
            (Repr::Poly(x), Repr::Poly(y)) => {
                let base = self.coeff_base().expect("poly ring");
                // Canonical inputs stay reduced under addition.
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Poly(polyvec::add(&base, x, y)),
                }
            }
            (
                Repr::Tower {
                    level: la,
                    coeffs: ca,
                },
                Repr::Tower {
                    level: lb,
                    coeffs: cb,
                },
            ) => {
                let p = self.tower_prime();
                let lvl = (*la).max(*lb);
                let xa = lift_coeffs(p, ca, *la, lvl);
                let xb = lift_coeffs(p, cb, *lb, lvl);
                make_tower_element(self, lvl, polyvec::add(&ScalarBase::Int, &xa, &xb))
            }
            _ => unreachable!("mismatched canonical representations"),
        }
    }

    pub(crate) fn neg_raw(&self, a: &RingElement) -> RingElement {
        match &a.repr {
            Repr::Int(x) => {
                let sb = self.scalar_base().expect("scalar ring");
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Int(sb.neg(x)),
                }
            }
            Repr::Poly(x) => {
                let base = self.coeff_base().expect("poly ring");
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Poly(polyvec::neg(&base, x)),
                }
            }
            Repr::Tower { level, coeffs } => {
                let neg = polyvec::neg(&ScalarBase::Int, coeffs);
                make_tower_element(self, *level, neg)
            }
        }
    }

    pub(crate) fn mul_raw(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&a.repr, &b.repr) {
            (Repr::Int(x), Repr::Int(y)) => {
                let sb = self.scalar_base().expect("scalar ring");
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Int(sb.mul(x, y)),
                }
            }
            (Repr::Poly(x), Repr::Poly(y)) => {
                let base = self.coeff_base().expect("poly ring");
                let m = self.modulus_poly();
                RingElement {
                    ring: self.clone(),
                    repr: Repr::Poly(polyvec::mul_mod(&base, x, y, m.as_deref())),
                }
            }
            (
                Repr::Tower {
                    level: la,
                    coeffs: ca,
                },
                Repr::Tower {
                    level: lb,
                    coeffs: cb,
                },
            ) => {
                let p = self.tower_prime();
                let lvl = (*la).max(*lb);
                let xa = lift_coeffs(p, ca, *la, lvl);
                let xb = lift_coeffs(p, cb, *lb, lvl);
                let phi = super::cyclotomic_polynomial(p, lvl);
                let prod = polyvec::mul_mod(&ScalarBase::Int, &xa, &xb, Some(&phi));
                make_tower_element(self, lvl, prod)
            }
            _ => unreachable!("mismatched canonical representations"),
        }
    }

    pub(crate) fn tower_prime(&self) -> u64 {
        match self.descriptor() {
            RingDescriptor::CyclotomicTower { p } => *p,
            _ => unreachable!("not a tower"),
        }
    }

    /// Multiply by an integer (repeated canonical-map arithmetic).
    pub fn int_mul(&self, k: &BigInt, a: &RingElement) -> Result<RingElement> {
        self.check_element(a)?;
        Ok(self.mul_raw(&self.from_int(k.clone()), a))
    }

    /// A small representative of the class of a modulo mR, for rings whose
    /// canonical form has integer coordinates: reduce every coordinate into
    /// [0, m). Rings with modular coordinates are returned unchanged.
    ///
    /// Solvers use this to keep oracle outputs small: replacing a value by
    /// another representative of its class mod p^2 R never disturbs the
    /// congruences the constructions rely on.
    pub fn reduce_int_coeffs_mod(&self, a: &RingElement, m: &BigInt) -> RingElement {
        debug_assert!(self.check_element(a).is_ok());
        match (&a.repr, self.coeff_base().or_else(|| self.scalar_base())) {
            (Repr::Int(v), Some(ScalarBase::Int)) => self.from_int(v.mod_floor(m)),
            (Repr::Poly(coeffs), Some(ScalarBase::Int)) => {
                let reduced: Vec<BigInt> = coeffs.iter().map(|c| c.mod_floor(m)).collect();
                self.poly_from_coeffs(reduced)
            }
            (Repr::Tower { level, coeffs }, _) => {
                let reduced: Vec<BigInt> = coeffs.iter().map(|c| c.mod_floor(m)).collect();
                make_tower_element(self, *level, reduced)
            }
            _ => a.clone(),
        }
    }

    /// Exact division by p: a value `t` with p*t = a when a lies in pR.
    ///
    /// Absence is a value, not an error. On rings with p-torsion the
    /// solution is not unique; the minimal canonical solution is returned
    /// with `unique: false`.
    pub fn exact_div_p(&self, a: &RingElement, p: u64) -> Option<PDivision> {
        debug_assert!(self.check_element(a).is_ok());
        let pz = BigInt::from(p);
        match &a.repr {
            Repr::Int(v) => match self.descriptor() {
                RingDescriptor::Integers => {
                    if (v % &pz).is_zero() {
                        Some(PDivision {
                            quotient: RingElement {
                                ring: self.clone(),
                                repr: Repr::Int(v / &pz),
                            },
                            unique: true,
                        })
                    } else {
                        None
                    }
                }
                RingDescriptor::ModularIntegers { .. } | RingDescriptor::PrimeField { .. } => {
                    let m = match self.scalar_base().expect("scalar") {
                        ScalarBase::Mod(m) => m,
                        ScalarBase::Int => unreachable!(),
                    };
                    let (t, unique) = solve_linear_mod(&pz, v, &m)?;
                    Some(PDivision {
                        quotient: RingElement {
                            ring: self.clone(),
                            repr: Repr::Int(t),
                        },
                        unique,
                    })
                }
                _ => unreachable!(),
            },
            Repr::Poly(coeffs) => {
                let base = self.coeff_base().expect("poly ring");
                let mut out = Vec::with_capacity(coeffs.len());
                let mut unique = true;
                for c in coeffs {
                    match &base {
                        ScalarBase::Int => {
                            if (c % &pz).is_zero() {
                                out.push(c / &pz);
                            } else {
                                return None;
                            }
                        }
                        ScalarBase::Mod(m) => {
                            let (t, u) = solve_linear_mod(&pz, c, m)?;
                            unique &= u;
                            out.push(t);
                        }
                    }
                }
                // p-torsion bases can have pR-members with non-divisible
                // canonical coefficients only when gcd(p, m) divides them,
                // which solve_linear_mod already decided. Trailing zeros of
                // the quotient are trimmed by construction below.
                let mut out = out;
                polyvec::trim(&mut out);
                Some(PDivision {
                    quotient: RingElement {
                        ring: self.clone(),
                        repr: Repr::Poly(out),
                    },
                    unique,
                })
            }
            Repr::Tower { level, coeffs } => {
                let mut out = Vec::with_capacity(coeffs.len());
                for c in coeffs {
                    if (c % &pz).is_zero() {
                        out.push(c / &pz);
                    } else {
                        return None;
                    }
                }
                Some(PDivision {
                    quotient: make_tower_element(self, *level, out),
                    unique: true,
                })
            }
        }
    }

    /// Whether a lies in pR.
    pub fn in_p_multiple(&self, a: &RingElement, p: u64) -> bool {
        self.exact_div_p(a, p).is_some()
    }

    /// Exact division a/b within the ring where supported.
    ///
    /// Returns `Ok(None)` when a is certified not to be a multiple of b,
    /// `Err(CapabilityMissing)` when the ring/divisor pair has no decision
    /// procedure here. Every returned quotient is re-verified.
    pub fn divide_exact(&self, a: &RingElement, b: &RingElement) -> Result<Option<RingElement>> {
        self.check_pair(a, b)?;
        if b.is_zero() {
            return Ok(if a.is_zero() { Some(self.zero()) } else { None });
        }
        let candidate: Option<RingElement> = match self.descriptor() {
            RingDescriptor::Integers => {
                let (x, y) = match (&a.repr, &b.repr) {
                    (Repr::Int(x), Repr::Int(y)) => (x, y),
                    _ => unreachable!(),
                };
                if (x % y).is_zero() {
                    Some(self.from_int(x / y))
                } else {
                    None
                }
            }
            RingDescriptor::ModularIntegers { .. } | RingDescriptor::PrimeField { .. } => {
                let m = match self.scalar_base().expect("scalar") {
                    ScalarBase::Mod(m) => m,
                    ScalarBase::Int => unreachable!(),
                };
                let (x, y) = match (&a.repr, &b.repr) {
                    (Repr::Int(x), Repr::Int(y)) => (x, y),
                    _ => unreachable!(),
                };
                solve_linear_mod(y, x, &m).map(|(t, _)| self.from_int(t))
            }
            RingDescriptor::PolynomialRing { .. } => {
                let (x, y) = match (&a.repr, &b.repr) {
                    (Repr::Poly(x), Repr::Poly(y)) => (x, y),
                    _ => unreachable!(),
                };
                match self.coeff_base().expect("poly") {
                    ScalarBase::Mod(m) if super::is_prime_biguint(m.magnitude()) => {
                        field_poly_divide(x, y, &m).map(|q| self.poly_from_coeffs(q))
                    }
                    ScalarBase::Int => rational_poly_divide(x, y)
                        .map(|q| self.poly_from_coeffs(q)),
                    _ => {
                        return Err(WittError::CapabilityMissing(
                            "exact division unsupported over this coefficient base".into(),
                        ))
                    }
                }
            }
            RingDescriptor::CyclotomicLevel { .. } | RingDescriptor::QuotientRing { .. } => {
                let modulus = self.modulus_poly().expect("quotient modulus");
                let (x, y) = match (&a.repr, &b.repr) {
                    (Repr::Poly(x), Repr::Poly(y)) => (x.clone(), y.clone()),
                    _ => unreachable!(),
                };
                match self.coeff_base().expect("poly") {
                    ScalarBase::Int => divide_mod_int_quotient(&x, &y, &modulus)?
                        .map(|q| self.poly_from_coeffs(q)),
                    ScalarBase::Mod(_) => {
                        // Finite quotient ring: decide by scanning when small.
                        return self.divide_exact_by_scan(a, b, 1 << 16);
                    }
                }
            }
            RingDescriptor::CyclotomicTower { p } => {
                let (la, ca, lb, cb) = match (&a.repr, &b.repr) {
                    (
                        Repr::Tower { level: la, coeffs: ca },
                        Repr::Tower { level: lb, coeffs: cb },
                    ) => (*la, ca, *lb, cb),
                    _ => unreachable!(),
                };
                let lvl = la.max(lb);
                let xa = lift_coeffs(*p, ca, la, lvl);
                let xb = lift_coeffs(*p, cb, lb, lvl);
                let phi = super::cyclotomic_polynomial(*p, lvl);
                divide_mod_int_quotient(&xa, &xb, &phi)?
                    .map(|q| make_tower_element(self, lvl, q))
            }
        };
        match candidate {
            Some(q) => {
                if self.mul_raw(&q, b) == *a {
                    Ok(Some(q))
                } else {
                    Err(WittError::Internal(
                        "divide_exact produced a non-solution".into(),
                    ))
                }
            }
            None => Ok(None),
        }
    }

    fn divide_exact_by_scan(
        &self,
        a: &RingElement,
        b: &RingElement,
        budget: u64,
    ) -> Result<Option<RingElement>> {
        let card = self.cardinality().ok_or_else(|| {
            WittError::CapabilityMissing("exact division by scan needs a finite ring".into())
        })?;
        if card > budget.into() {
            return Err(WittError::BudgetExhausted(format!(
                "ring of size {card} too large for division scan"
            )));
        }
        for x in self.enumerate_all()? {
            if self.mul_raw(&x, b) == *a {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Minimal nonnegative t with b*t = a (mod m), plus a uniqueness flag.
fn solve_linear_mod(b: &BigInt, a: &BigInt, m: &BigInt) -> Option<(BigInt, bool)> {
    let g = b.gcd(m);
    if !(a % &g).is_zero() {
        return None;
    }
    let m1 = m / &g;
    let b1 = (b / &g).mod_floor(&m1);
    let a1 = (a / &g).mod_floor(&m1);
    let t = if m1.is_one() {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&b1, &m1)?;
        (a1 * inv).mod_floor(&m1)
    };
    Some((t, g.is_one()))
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Exact division of polynomials over GF(q); None if the remainder is nonzero.
fn field_poly_divide(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    let base = ScalarBase::Mod(m.clone());
    let mut rem: Vec<BigInt> = a.to_vec();
    polyvec::trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b.last().unwrap(), m)?;
    let mut q = vec![BigInt::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = base.mul(&rem[k], &lead_inv);
        let shift = k - db;
        q[shift] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            let v = &rem[shift + i] - &c * bi;
            rem[shift + i] = base.canon(v);
        }
        rem.truncate(k);
        polyvec::trim(&mut rem);
    }
    if rem.is_empty() {
        polyvec::trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Exact division in Z[T] via rational long division plus integrality check.
fn rational_poly_divide(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() || a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem: Vec<BigRational> = a.iter().map(|c| BigRational::from(c.clone())).collect();
    let bl: Vec<BigRational> = b.iter().map(|c| BigRational::from(c.clone())).collect();
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); a.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = &rem[k] / &bl[db];
        let shift = k - db;
        q[shift] = c.clone();
        for (i, bi) in bl.iter().enumerate() {
            let v = &rem[shift + i] - &c * bi;
            rem[shift + i] = v;
        }
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() > shift + db {
            // leading term did not cancel; cannot happen with exact arithmetic
            return None;
        }
    }
    if !rem.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(q.len());
    for c in q {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    polyvec::trim(&mut out);
    Some(out)
}

/// Exact division in Z[T]/(modulus): multiply by the rational inverse of the
/// divisor mod the modulus, then check integrality of the result.
fn divide_mod_int_quotient(
    a: &[BigInt],
    b: &[BigInt],
    modulus: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    let inv = match rational_inverse_mod(b, modulus) {
        Some(inv) => inv,
        None => {
            return Err(WittError::CapabilityMissing(
                "divisor is a zero divisor modulo the ring modulus".into(),
            ))
        }
    };
    let al: Vec<BigRational> = a.iter().map(|c| BigRational::from(c.clone())).collect();
    let ml: Vec<BigRational> = modulus.iter().map(|c| BigRational::from(c.clone())).collect();
    let prod = rat_mul_mod(&al, &inv, &ml);
    let mut out = Vec::with_capacity(prod.len());
    for c in prod {
        if !c.denom().is_one() {
            return Ok(None);
        }
        out.push(c.numer().clone());
    }
    polyvec::trim(&mut out);
    Ok(Some(out))
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_rem(mut a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let k = a.len() - 1;
        let c = &a[k] / &m[dm];
        if !c.is_zero() {
            let shift = k - dm;
            for (i, mi) in m.iter().enumerate() {
                let v = &a[shift + i] - &c * mi;
                a[shift + i] = v;
            }
        }
        a.truncate(k);
        rat_trim(&mut a);
    }
    a
}

fn rat_mul_mod(a: &[BigRational], b: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    rat_rem(rat_mul(a, b), m)
}

/// Inverse of b in Q[T]/(modulus) via extended Euclid; None when the gcd is
/// a nonconstant polynomial (zero divisor).
fn rational_inverse_mod(b: &[BigInt], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut r0: Vec<BigRational> = modulus.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut r1: Vec<BigRational> = b.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_divmod(&r0, &r1);
        let qs = rat_mul(&q, &s1);
        let s_new = rat_sub(&s0, &qs);
        r0 = std::mem::take(&mut r1);
        r1 = r;
        s0 = std::mem::take(&mut s1);
        s1 = s_new;
    }
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    let ml: Vec<BigRational> = modulus.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut inv: Vec<BigRational> = s0.into_iter().map(|c| c / &g).collect();
    inv = rat_rem(inv, &ml);
    Some(inv)
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x - y);
    }
    rat_trim(&mut out);
    out
}

fn rat_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = &rem[k] / &b[db];
        let shift = k - db;
        q[shift] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            let v = &rem[shift + i] - &c * bi;
            rem[shift + i] = v;
        }
        rem.truncate(k);
        rat_trim(&mut rem);
    }
    rat_trim(&mut q);
    (q, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn modular_addition() {
        // 2 + 3 = 1 in Z/4.
        let z4 = Ring::modular(BigUint::from(4u32)).unwrap();
        let r = z4.add(&z4.from_int(int(2)), &z4.from_int(int(3))).unwrap();
        assert_eq!(r, z4.from_int(int(1)));
    }

    #[test]
    fn cyclotomic_relation() {
        // mu_3 + mu_3^2 = -1 since Phi_3(mu_3) = 0.
        let r = Ring::cyclotomic(3, 1).unwrap();
        let mu = r.generator().unwrap();
        let mu2 = r.pow(&mu, 2).unwrap();
        let s = r.add(&mu, &mu2).unwrap();
        assert_eq!(s, r.from_int(int(-1)));
    }

    #[test]
    fn integer_pow() {
        let z = Ring::integers();
        assert_eq!(z.pow(&z.from_int(int(7)), 2).unwrap(), z.from_int(int(49)));
        assert_eq!(z.pow(&z.from_int(int(7)), 0).unwrap(), z.one());
    }

    #[test]
    fn exact_div_p_integers() {
        let z = Ring::integers();
        let d = z.exact_div_p(&z.from_int(int(-42)), 2).unwrap();
        assert_eq!(d.quotient, z.from_int(int(-21)));
        assert!(d.unique);
        assert!(z.exact_div_p(&z.from_int(int(3)), 2).is_none());
    }

    #[test]
    fn exact_div_p_mod8_is_nonunique() {
        // 2t = 6 mod 8 has solutions {3, 7}; minimal is 3.
        let z8 = Ring::modular(BigUint::from(8u32)).unwrap();
        let d = z8.exact_div_p(&z8.from_int(int(6)), 2).unwrap();
        assert_eq!(d.quotient, z8.from_int(int(3)));
        assert!(!d.unique);
        // Cross-check by enumeration.
        let sols: Vec<i64> = (0..8)
            .filter(|t| (2 * t) % 8 == 6)
            .collect();
        assert_eq!(sols, vec![3, 7]);
    }

    #[test]
    fn divide_exact_cyclotomic() {
        // (1 - mu_9)^2 / (1 - mu_9) = 1 - mu_9.
        let r = Ring::cyclotomic(3, 2).unwrap();
        let mu = r.generator().unwrap();
        let u = r.sub(&r.one(), &mu).unwrap();
        let u2 = r.mul(&u, &u).unwrap();
        let q = r.divide_exact(&u2, &u).unwrap().unwrap();
        assert_eq!(q, u);
        // 1 / (1 - mu_9) is not integral.
        assert_eq!(r.divide_exact(&r.one(), &u).unwrap(), None);
    }

    #[test]
    fn divide_exact_tower_levels() {
        let t = Ring::cyclotomic_tower(3).unwrap();
        let mu9 = t.tower_root_of_unity(2).unwrap();
        let mu3 = t.tower_root_of_unity(1).unwrap();
        let prod = t.mul(&mu9, &mu3).unwrap();
        assert_eq!(t.divide_exact(&prod, &mu3).unwrap().unwrap(), mu9);
    }

    #[test]
    fn tower_mixed_level_arithmetic() {
        let t = Ring::cyclotomic_tower(3).unwrap();
        let mu9 = t.tower_root_of_unity(2).unwrap();
        // mu_9^3 = mu_3 normalizes down to level 1.
        let cubed = t.pow(&mu9, 3).unwrap();
        assert_eq!(cubed, t.tower_root_of_unity(1).unwrap());
        // mu_9^9 = 1.
        assert_eq!(t.pow(&mu9, 9).unwrap(), t.one());
    }
}
