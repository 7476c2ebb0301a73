//! Sparse multivariate polynomials over Z in the Witt component variables.
//!
//! Variables come in two series, X and Y, indexed by slot: the slot-j
//! variable stands for the component x_{p^j} (resp. y_{p^j}). Slot j carries
//! weight p^j; the universal polynomials are homogeneous for this weighting.
//!
//! Terms are kept sorted in a fixed monomial order (lexicographic on the
//! factor lists, factors ordered by (series, slot) and compared by exponent
//! on ties), with no zero coefficients and no duplicate monomials, so equal
//! polynomials have identical term lists and serialization is bit-exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    X,
    Y,
}

impl Series {
    pub fn tag(self) -> &'static str {
        match self {
            Series::X => "X",
            Series::Y => "Y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WittVariable {
    pub series: Series,
    pub slot: u32,
}

impl WittVariable {
    pub fn x(slot: u32) -> WittVariable {
        WittVariable { series: Series::X, slot }
    }

    pub fn y(slot: u32) -> WittVariable {
        WittVariable { series: Series::Y, slot }
    }

    /// Weight of this variable: p^slot.
    pub fn weight(&self, p: u64) -> u128 {
        (p as u128).pow(self.slot)
    }
}

impl fmt::Display for WittVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.series {
            Series::X => "x",
            Series::Y => "y",
        };
        write!(f, "{tag}_{}", self.slot)
    }
}

/// Product of variable powers; factors sorted by variable, exponents > 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(WittVariable, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn variable(v: WittVariable) -> Monomial {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn from_factors(mut factors: Vec<(WittVariable, u32)>) -> Monomial {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by_key(|(v, _)| *v);
        // merge duplicates
        let mut merged: Vec<(WittVariable, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            if let Some(last) = merged.last_mut() {
                if last.0 == v {
                    last.1 += e;
                    continue;
                }
            }
            merged.push((v, e));
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(WittVariable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, v: WittVariable) -> u32 {
        self.factors
            .iter()
            .find(|(w, _)| *w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    factors.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(v, e)| (*v, e * k)).collect(),
        }
    }

    /// Total weight under slot-j variables weighing p^j (both series).
    pub fn weighted_degree(&self, p: u64) -> u128 {
        self.factors
            .iter()
            .map(|(v, e)| v.weight(p) * (*e as u128))
            .sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    /// Sorted by monomial, no zero coefficients.
    terms: Vec<(BigInt, Monomial)>,
}

impl SparsePoly {
    pub fn zero() -> SparsePoly {
        SparsePoly::default()
    }

    pub fn constant(c: BigInt) -> SparsePoly {
        if c.is_zero() {
            SparsePoly::zero()
        } else {
            SparsePoly {
                terms: vec![(c, Monomial::one())],
            }
        }
    }

    pub fn one() -> SparsePoly {
        SparsePoly::constant(BigInt::one())
    }

    pub fn variable(v: WittVariable) -> SparsePoly {
        SparsePoly {
            terms: vec![(BigInt::one(), Monomial::variable(v))],
        }
    }

    pub fn from_terms(terms: Vec<(BigInt, Monomial)>) -> SparsePoly {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(m).or_insert_with(BigInt::zero);
            *entry += c;
        }
        SparsePoly {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (c, m))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(BigInt, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> BigInt {
        match self
            .terms
            .binary_search_by(|(_, tm)| tm.cmp(m))
        {
            Ok(idx) => self.terms[idx].0.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out: Vec<(BigInt, Monomial)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ca, ma) = &self.terms[i];
            let (cb, mb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((ca.clone(), ma.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((cb.clone(), mb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((c, ma.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        SparsePoly { terms: out }
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero();
        }
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        SparsePoly {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (c, m))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, k: &BigInt) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(c, m)| (c * k, m.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> SparsePoly {
        if k == 0 {
            return SparsePoly::one();
        }
        // Single-term polynomials have closed-form powers.
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return SparsePoly {
                terms: vec![(c.pow(k as u32), m.pow(k as u32))],
            };
        }
        let mut acc = SparsePoly::one();
        let mut sq = self.clone();
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        acc
    }

    /// Divide every coefficient by k, demanding exactness.
    pub fn div_exact_int(&self, k: &BigInt, context: &str) -> Result<SparsePoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(WittError::InexactDivision(format!(
                    "coefficient {c} of {m} is not divisible by {k} ({context})"
                )));
            }
            terms.push((q, m.clone()));
        }
        Ok(SparsePoly { terms })
    }

    /// Replace every variable by a polynomial.
    pub fn substitute(&self, assign: &dyn Fn(WittVariable) -> SparsePoly) -> SparsePoly {
        let mut acc = SparsePoly::zero();
        for (c, m) in &self.terms {
            let mut term = SparsePoly::constant(c.clone());
            for (v, e) in m.factors() {
                let sub = assign(*v).pow(*e as u64);
                term = term.mul(&sub);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Reduce every coefficient modulo m (to the least nonnegative residue),
    /// dropping terms that vanish.
    pub fn map_coeffs_mod(&self, m: &BigInt) -> SparsePoly {
        SparsePoly::from_terms(
            self.terms
                .iter()
                .map(|(c, mo)| (c.mod_floor(m), mo.clone()))
                .collect(),
        )
    }

    /// All terms homogeneous of the given weight for the prime p.
    pub fn is_homogeneous(&self, p: u64, weight: u128) -> bool {
        self.terms.iter().all(|(_, m)| m.weighted_degree(p) == weight)
    }

    /// Largest slot appearing (either series), if any term is non-constant.
    pub fn max_slot(&self) -> Option<u32> {
        self.terms
            .iter()
            .flat_map(|(_, m)| m.factors().iter().map(|(v, _)| v.slot))
            .max()
    }

    pub fn uses_variable(&self, v: WittVariable) -> bool {
        self.terms.iter().any(|(_, m)| m.exponent_of(v) > 0)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, m)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Wire form of a polynomial family member; field order is the emitted
/// key order and must stay stable.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub p: u64,
    pub kind: String,
    pub level: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<(String, u32, u32)>,
}

impl PolyJson {
    pub fn encode(p: u64, kind: &str, level: u32, poly: &SparsePoly) -> PolyJson {
        PolyJson {
            p,
            kind: kind.to_string(),
            level,
            terms: poly
                .terms()
                .iter()
                .map(|(c, m)| TermJson {
                    coeff: c.to_string(),
                    monomial: m
                        .factors()
                        .iter()
                        .map(|(v, e)| (v.series.tag().to_string(), v.slot, *e))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<SparsePoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coeff: BigInt = t.coeff.parse().map_err(|_| WittError::Parse {
                offset: 0,
                msg: format!("bad coefficient {:?}", t.coeff),
            })?;
            let mut factors = Vec::with_capacity(t.monomial.len());
            for (series, slot, exp) in &t.monomial {
                let series = match series.as_str() {
                    "X" => Series::X,
                    "Y" => Series::Y,
                    other => {
                        return Err(WittError::Parse {
                            offset: 0,
                            msg: format!("bad series tag {other:?}"),
                        })
                    }
                };
                factors.push((WittVariable { series, slot: *slot }, *exp));
            }
            terms.push((coeff, Monomial::from_factors(factors)));
        }
        Ok(SparsePoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(slot: u32) -> SparsePoly {
        SparsePoly::variable(WittVariable::x(slot))
    }

    fn y(slot: u32) -> SparsePoly {
        SparsePoly::variable(WittVariable::y(slot))
    }

    #[test]
    fn arithmetic_and_canonical_order() {
        // x_0^2 + 2 x_1 printed and ordered deterministically.
        let p = x(0).pow(2).add(&x(1).mul_scalar(&BigInt::from(2)));
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.to_string(), "x_0^2 + 2*x_1");
        // (x_0 + y_0)^2 = x_0^2 + 2 x_0 y_0 + y_0^2.
        let s = x(0).add(&y(0)).pow(2);
        assert_eq!(s.term_count(), 3);
        assert_eq!(
            s.coefficient_of(&Monomial::from_factors(vec![
                (WittVariable::x(0), 1),
                (WittVariable::y(0), 1)
            ])),
            BigInt::from(2)
        );
    }

    #[test]
    fn coefficient_of_missing_is_zero() {
        let p = x(0).pow(2).add(&x(1).mul_scalar(&BigInt::from(2)));
        assert_eq!(
            p.coefficient_of(&Monomial::variable(WittVariable::y(0))),
            BigInt::zero()
        );
        assert_eq!(
            SparsePoly::zero().coefficient_of(&Monomial::one()),
            BigInt::zero()
        );
    }

    #[test]
    fn exact_division_errors_on_odd_coefficient() {
        let p = x(0).mul_scalar(&BigInt::from(4)).add(&x(1).mul_scalar(&BigInt::from(3)));
        assert!(p.div_exact_int(&BigInt::from(2), "test").is_err());
        let q = x(0).mul_scalar(&BigInt::from(4));
        assert_eq!(
            q.div_exact_int(&BigInt::from(2), "test").unwrap(),
            x(0).mul_scalar(&BigInt::from(2))
        );
    }

    #[test]
    fn weighted_degrees() {
        // p=2: x_1 y_1 has weight 4; x_0^2 y_1 has weight 4.
        let m = Monomial::from_factors(vec![(WittVariable::x(1), 1), (WittVariable::y(1), 1)]);
        assert_eq!(m.weighted_degree(2), 4);
        let s = x(0).pow(2).mul(&y(1));
        assert!(s.is_homogeneous(2, 4));
    }

    #[test]
    fn substitution() {
        // Substitute x_1 -> x_0^2 in x_1 + 1.
        let p = x(1).add(&SparsePoly::one());
        let out = p.substitute(&|v| {
            if v == WittVariable::x(1) {
                x(0).pow(2)
            } else {
                SparsePoly::variable(v)
            }
        });
        assert_eq!(out, x(0).pow(2).add(&SparsePoly::one()));
    }

    #[test]
    fn json_round_trip_preserves_order() {
        let p = x(1).add(&y(1)).sub(&x(0).mul(&y(0)));
        let json = PolyJson::encode(2, "sum", 1, &p);
        let s1 = serde_json::to_string(&json).unwrap();
        let decoded = json.decode().unwrap();
        assert_eq!(decoded, p);
        let s2 = serde_json::to_string(&PolyJson::encode(2, "sum", 1, &decoded)).unwrap();
        assert_eq!(s1, s2);
    }
}
