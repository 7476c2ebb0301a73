//! Structural checks on the correction polynomials f_{p^i}.
//!
//! The checked facts, for F_i = x_i^p + p x_{i+1} + p f_{p^i}(x_0..x_i):
//!
//! - the coefficient of x_0^(p^(i+1)) in f_{p^i} vanishes for i >= 1,
//! - the coefficient of x_1^(p^i) in f_{p^i} is divisible by p for i >= 2,
//! - the coefficient of x_1^p in f_p is -p^(p-2) mod p,
//! - for p = 2 and i >= 2, f_{2^i} lies in the ideal
//!   (2, x_0, x_1^2 - x_2, x_3, ..., x_i). The quotient by that ideal is the
//!   polynomial ring GF(2)[x_1], so substituting x_0 -> 0, x_2 -> x_1^2,
//!   x_j -> 0 (j >= 3) and reducing coefficients mod 2 decides membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;

use super::families::correction_poly;
use super::poly::{Monomial, SparsePoly, WittVariable};

/// Exact coefficient of a monomial (0 when absent).
pub fn coefficient_of(poly: &SparsePoly, monomial: &Monomial) -> BigInt {
    poly.coefficient_of(monomial)
}

/// True when every term has the given weighted degree for the prime p.
pub fn weighted_degree_check(poly: &SparsePoly, p: u64, expected: u128) -> bool {
    poly.is_homogeneous(p, expected)
}

#[derive(Debug, Clone)]
pub struct CorrectionCheck {
    pub level: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CorrectionReport {
    pub p: u64,
    pub max_level: u32,
    pub checks: Vec<CorrectionCheck>,
}

impl CorrectionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CorrectionCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Run all applicable coefficient checks on f_{p^i} for i <= max_level.
pub fn correction_report(p: u64, max_level: u32) -> Result<CorrectionReport> {
    let mut checks = Vec::new();
    let pz = BigInt::from(p);

    for i in 1..=max_level {
        let f = correction_poly(p, i)?;

        // Coefficient of x_0^(p^(i+1)) vanishes.
        let exp = (p as u32).pow(i + 1);
        let mono = Monomial::from_factors(vec![(WittVariable::x(0), exp)]);
        let c = f.coefficient_of(&mono);
        checks.push(CorrectionCheck {
            level: i,
            name: "pure-first-component-power-vanishes",
            passed: c.is_zero(),
            detail: format!("coefficient of x_0^{exp} in f at level {i} is {c}"),
        });

        if i >= 2 {
            // Coefficient of x_1^(p^i) divisible by p.
            let exp = (p as u32).pow(i);
            let mono = Monomial::from_factors(vec![(WittVariable::x(1), exp)]);
            let c = f.coefficient_of(&mono);
            let passed = c.mod_floor(&pz).is_zero();
            checks.push(CorrectionCheck {
                level: i,
                name: "slot-one-top-power-divisible",
                passed,
                detail: format!("coefficient of x_1^{exp} in f at level {i} is {c}"),
            });
        }

        if i == 1 {
            // Coefficient of x_1^p in f_p is -p^(p-2) mod p.
            let mono = Monomial::from_factors(vec![(WittVariable::x(1), p as u32)]);
            let c = f.coefficient_of(&mono);
            let expected = -pz.pow((p - 2) as u32);
            let passed = (&c - &expected).mod_floor(&pz).is_zero();
            checks.push(CorrectionCheck {
                level: i,
                name: "slot-one-pth-power-congruence",
                passed,
                detail: format!(
                    "coefficient of x_1^{p} in f at level 1 is {c}, expected {expected} mod {p}"
                ),
            });
        }

        if p == 2 && i >= 2 {
            // Ideal membership by quotient substitution.
            let reduced = f
                .substitute(&|v| {
                    debug_assert_eq!(v.series, super::poly::Series::X);
                    match v.slot {
                        0 => SparsePoly::zero(),
                        1 => SparsePoly::variable(v),
                        2 => SparsePoly::variable(WittVariable::x(1)).pow(2),
                        _ => SparsePoly::zero(),
                    }
                })
                .map_coeffs_mod(&BigInt::from(2));
            checks.push(CorrectionCheck {
                level: i,
                name: "two-adic-ideal-membership",
                passed: reduced.is_zero(),
                detail: format!(
                    "f at level {i} reduces to {} in GF(2)[x_1]",
                    reduced
                ),
            });
        }
    }

    Ok(CorrectionReport { p, max_level, checks })
}
