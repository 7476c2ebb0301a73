//! The universal polynomial families, computed by inverting the ghost map.
//!
//! The slot-i ghost polynomial is w_i = sum_{j<=i} p^j x_j^(p^(i-j)), where
//! x_j is the slot-j component variable. Given target ghost values g_0..g_n
//! (polynomials over Z), the components c_0..c_n with w_i(c) = g_i are
//! recovered by the triangular recursion
//! `c_i = (g_i - sum_{j<i} p^j c_j^(p^(i-j))) / p^i`,
//! and every division must be exact over Z: integrality is the correctness
//! witness. The sum, product, negation, and Frobenius families come from the
//! targets w(X)+w(Y), w(X)w(Y), -w(X), and the shifted w_{i+1}(X).
//!
//! Families are memoized per (p, family) with concurrent readers and
//! serialized insertion.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::error::{Result, WittError};

use super::poly::{Series, SparsePoly, WittVariable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Sum,
    Product,
    Neg,
    Frobenius,
    /// The correction polynomials f_{p^i} with
    /// F_i = x_i^p + p x_{i+1} + p f_{p^i}(x_0..x_i).
    Correction,
}

impl FamilyKind {
    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::Sum => "sum",
            FamilyKind::Product => "product",
            FamilyKind::Neg => "neg",
            FamilyKind::Frobenius => "frobenius",
            FamilyKind::Correction => "f",
        }
    }

    pub fn from_tag(tag: &str) -> Option<FamilyKind> {
        Some(match tag {
            "sum" => FamilyKind::Sum,
            "product" => FamilyKind::Product,
            "neg" => FamilyKind::Neg,
            "frobenius" => FamilyKind::Frobenius,
            "f" => FamilyKind::Correction,
            _ => return None,
        })
    }
}

/// Default level ceiling per prime; term counts grow super-exponentially
/// with the level, and these defaults keep full verification runs fast.
pub fn default_level_cap(p: u64) -> u32 {
    match p {
        2 => 5,
        3 => 3,
        5 => 2,
        _ => 2,
    }
}

/// The ghost polynomial w_i in the given variable series.
pub fn ghost_poly_series(p: u64, i: u32, series: Series) -> SparsePoly {
    let mut acc = SparsePoly::zero();
    let mut pj = BigInt::one();
    for j in 0..=i {
        let v = WittVariable { series, slot: j };
        let power = (p as u64).pow(i - j);
        let term = SparsePoly::variable(v).pow(power).mul_scalar(&pj);
        acc = acc.add(&term);
        pj *= p;
    }
    acc
}

/// The ghost polynomial w_i in X variables.
pub fn ghost_poly(p: u64, i: u32) -> SparsePoly {
    ghost_poly_series(p, i, Series::X)
}

/// One step of ghost-map inversion: recover c_i from the target g_i and the
/// previously recovered components.
fn ghost_solve_step(p: u64, i: usize, g_i: &SparsePoly, prev: &[Arc<SparsePoly>]) -> Result<SparsePoly> {
    let mut rhs = g_i.clone();
    let mut pj = BigInt::one();
    for (j, c) in prev.iter().enumerate().take(i) {
        let power = (p as u64).pow((i - j) as u32);
        rhs = rhs.sub(&c.pow(power).mul_scalar(&pj));
        pj *= p;
    }
    let denom = BigInt::from(p).pow(i as u32);
    rhs.div_exact_int(&denom, &format!("ghost inversion at level {i}"))
}

/// Invert the ghost map for an arbitrary target family. Fails with an
/// inexact-division error when the targets are not the ghost components of
/// any integral operation.
pub fn ghost_solve(p: u64, targets: &[SparsePoly]) -> Result<Vec<SparsePoly>> {
    let mut out: Vec<Arc<SparsePoly>> = Vec::with_capacity(targets.len());
    for (i, g) in targets.iter().enumerate() {
        let c = ghost_solve_step(p, i, g, &out)?;
        out.push(Arc::new(c));
    }
    Ok(out.into_iter().map(|c| Arc::try_unwrap(c).unwrap_or_else(|a| (*a).clone())).collect())
}

static CACHE: Lazy<RwLock<HashMap<(u64, FamilyKind), Vec<Arc<SparsePoly>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn family_target(p: u64, kind: FamilyKind, i: u32) -> SparsePoly {
    match kind {
        FamilyKind::Sum => ghost_poly_series(p, i, Series::X).add(&ghost_poly_series(p, i, Series::Y)),
        FamilyKind::Product => {
            ghost_poly_series(p, i, Series::X).mul(&ghost_poly_series(p, i, Series::Y))
        }
        FamilyKind::Neg => ghost_poly_series(p, i, Series::X).neg(),
        FamilyKind::Frobenius => ghost_poly_series(p, i + 1, Series::X),
        FamilyKind::Correction => unreachable!("correction family is derived, not solved"),
    }
}

fn internal(e: WittError, what: &str) -> WittError {
    WittError::Internal(format!("{what}: {e}"))
}

/// Structural self-checks on a freshly computed family member.
fn check_member(p: u64, kind: FamilyKind, i: u32, c: &SparsePoly) -> Result<()> {
    let pw = |e: u32| (p as u128).pow(e);
    let ok = match kind {
        FamilyKind::Sum | FamilyKind::Neg => c.is_homogeneous(p, pw(i)),
        FamilyKind::Product => {
            c.is_homogeneous(p, 2 * pw(i))
                && c.terms().iter().all(|(_, m)| {
                    let wx: u128 = m
                        .factors()
                        .iter()
                        .filter(|(v, _)| v.series == Series::X)
                        .map(|(v, e)| v.weight(p) * (*e as u128))
                        .sum();
                    wx == pw(i)
                })
        }
        FamilyKind::Frobenius => {
            // F_i involves only slots 0..=i+1 and is x_i^p plus p-divisible terms.
            let slots_ok = c.max_slot().map_or(true, |s| s <= i + 1);
            let lead = super::poly::Monomial::from_factors(vec![(WittVariable::x(i), p as u32)]);
            let pz = BigInt::from(p);
            let congruent = c.terms().iter().all(|(coeff, m)| {
                if *m == lead {
                    use num_integer::Integer;
                    (coeff - BigInt::one()).mod_floor(&pz).sign() == num_bigint::Sign::NoSign
                } else {
                    use num_integer::Integer;
                    coeff.mod_floor(&pz).sign() == num_bigint::Sign::NoSign
                }
            });
            slots_ok && congruent && c.is_homogeneous(p, pw(i + 1))
        }
        FamilyKind::Correction => {
            let independent = !c.uses_variable(WittVariable::x(i + 1));
            independent && c.is_homogeneous(p, pw(i + 1))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(WittError::Internal(format!(
            "structural check failed for {} level {i} (p={p})",
            kind.tag()
        )))
    }
}

fn extend_family(
    p: u64,
    kind: FamilyKind,
    have: &[Arc<SparsePoly>],
    upto: u32,
    frobenius: Option<&[Arc<SparsePoly>]>,
) -> Result<Vec<Arc<SparsePoly>>> {
    let mut out = have.to_vec();
    match kind {
        FamilyKind::Correction => {
            let frob = frobenius.expect("frobenius family prefetched");
            for i in have.len() as u32..=upto {
                let f_i = derive_correction(p, i, &frob[i as usize])?;
                check_member(p, kind, i, &f_i)?;
                out.push(Arc::new(f_i));
            }
        }
        _ => {
            for i in have.len() as u32..=upto {
                let g = family_target(p, kind, i);
                let c = ghost_solve_step(p, i as usize, &g, &out)
                    .map_err(|e| internal(e, "family ghost inversion"))?;
                check_member(p, kind, i, &c)?;
                out.push(Arc::new(c));
            }
        }
    }
    Ok(out)
}

/// f_{p^i} = (F_i - x_i^p - p x_{i+1}) / p, with exactness, independence from
/// slot i+1, and homogeneity enforced.
fn derive_correction(p: u64, i: u32, frob_i: &SparsePoly) -> Result<SparsePoly> {
    let xi_p = SparsePoly::variable(WittVariable::x(i)).pow(p);
    let p_xnext = SparsePoly::variable(WittVariable::x(i + 1)).mul_scalar(&BigInt::from(p));
    let diff = frob_i.sub(&xi_p).sub(&p_xnext);
    diff.div_exact_int(&BigInt::from(p), &format!("correction level {i}"))
        .map_err(|e| internal(e, "correction division"))
}

fn family_uncapped(p: u64, kind: FamilyKind, upto: u32) -> Result<Vec<Arc<SparsePoly>>> {
    {
        let cache = CACHE.read().expect("cache poisoned");
        if let Some(list) = cache.get(&(p, kind)) {
            if list.len() > upto as usize {
                return Ok(list[..=upto as usize].to_vec());
            }
        }
    }
    // The correction family is derived from the Frobenius family; fetch it
    // before taking the write lock (the cache lock is not reentrant).
    let frobenius = if kind == FamilyKind::Correction {
        Some(family_uncapped(p, FamilyKind::Frobenius, upto)?)
    } else {
        None
    };
    let mut cache = CACHE.write().expect("cache poisoned");
    let have = cache.get(&(p, kind)).cloned().unwrap_or_default();
    if have.len() > upto as usize {
        return Ok(have[..=upto as usize].to_vec());
    }
    let extended = extend_family(p, kind, &have, upto, frobenius.as_deref())?;
    cache.insert((p, kind), extended.clone());
    Ok(extended)
}

fn check_cap(p: u64, kind: FamilyKind, upto: u32, cap: Option<u32>) -> Result<()> {
    let cap = cap.unwrap_or_else(|| default_level_cap(p));
    if upto > cap {
        return Err(WittError::BudgetExhausted(format!(
            "{} family for p={p} requested at level {upto}, above the configured cap {cap}",
            kind.tag()
        )));
    }
    Ok(())
}

/// Family members 0..=upto of the given kind, bounded by the level cap.
pub fn family(p: u64, kind: FamilyKind, upto: u32, cap: Option<u32>) -> Result<Vec<Arc<SparsePoly>>> {
    check_cap(p, kind, upto, cap)?;
    family_uncapped(p, kind, upto)
}

/// Witt sum components S_0..S_n.
pub fn sum_polys(p: u64, n: u32) -> Result<Vec<Arc<SparsePoly>>> {
    family(p, FamilyKind::Sum, n, None)
}

/// Witt product components P_0..P_n.
pub fn product_polys(p: u64, n: u32) -> Result<Vec<Arc<SparsePoly>>> {
    family(p, FamilyKind::Product, n, None)
}

/// Witt negation components N_0..N_n.
pub fn neg_polys(p: u64, n: u32) -> Result<Vec<Arc<SparsePoly>>> {
    family(p, FamilyKind::Neg, n, None)
}

/// Frobenius components F_0..F_{n-1} (n >= 1).
pub fn frobenius_polys(p: u64, n: u32) -> Result<Vec<Arc<SparsePoly>>> {
    if n < 1 {
        return Err(WittError::InvalidRequest(
            "frobenius family needs n >= 1".into(),
        ));
    }
    family(p, FamilyKind::Frobenius, n - 1, None)
}

/// The correction polynomial f_{p^i}.
pub fn correction_poly(p: u64, i: u32) -> Result<Arc<SparsePoly>> {
    Ok(family(p, FamilyKind::Correction, i, None)?
        .pop()
        .expect("family returns 0..=i"))
}

/// Recompute a family member from scratch, bypassing the cache. Used to
/// confirm cached retrieval and recomputation agree term-for-term.
pub fn compute_family_fresh(p: u64, kind: FamilyKind, upto: u32) -> Result<Vec<SparsePoly>> {
    let mut out: Vec<Arc<SparsePoly>> = Vec::new();
    match kind {
        FamilyKind::Correction => {
            let mut frob: Vec<Arc<SparsePoly>> = Vec::new();
            for i in 0..=upto {
                let g = family_target(p, FamilyKind::Frobenius, i);
                let c = ghost_solve_step(p, i as usize, &g, &frob)?;
                frob.push(Arc::new(c));
                let f_i = derive_correction(p, i, &frob[i as usize])?;
                out.push(Arc::new(f_i));
            }
        }
        _ => {
            for i in 0..=upto {
                let g = family_target(p, kind, i);
                let c = ghost_solve_step(p, i as usize, &g, &out)?;
                out.push(Arc::new(c));
            }
        }
    }
    Ok(out.into_iter().map(|a| (*a).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::poly::Monomial;

    fn xv(slot: u32) -> SparsePoly {
        SparsePoly::variable(WittVariable::x(slot))
    }

    fn yv(slot: u32) -> SparsePoly {
        SparsePoly::variable(WittVariable::y(slot))
    }

    #[test]
    fn ghost_polynomials() {
        // w_0 = x_0; w_1 = x_0^2 + 2 x_1 for p=2; w_2 = x_0^9 + 3 x_1^3 + 9 x_2 for p=3.
        assert_eq!(ghost_poly(2, 0), xv(0));
        assert_eq!(
            ghost_poly(2, 1),
            xv(0).pow(2).add(&xv(1).mul_scalar(&BigInt::from(2)))
        );
        assert_eq!(
            ghost_poly(3, 2),
            xv(0)
                .pow(9)
                .add(&xv(1).pow(3).mul_scalar(&BigInt::from(3)))
                .add(&xv(2).mul_scalar(&BigInt::from(9)))
        );
        assert!(ghost_poly(2, 1).is_homogeneous(2, 2));
    }

    #[test]
    fn ghost_solve_identity() {
        // Solving for the ghost of X itself returns the coordinate variables.
        let targets: Vec<SparsePoly> = (0..=3).map(|i| ghost_poly(2, i)).collect();
        let c = ghost_solve(2, &targets).unwrap();
        for (i, ci) in c.iter().enumerate() {
            assert_eq!(*ci, xv(i as u32));
        }
    }

    #[test]
    fn ghost_solve_sum_level_one() {
        // Oracle: substitute the solved components back into the ghost
        // polynomial and compare with the target, symbolically.
        let targets = vec![
            ghost_poly_series(2, 0, Series::X).add(&ghost_poly_series(2, 0, Series::Y)),
            ghost_poly_series(2, 1, Series::X).add(&ghost_poly_series(2, 1, Series::Y)),
        ];
        let c = ghost_solve(2, &targets).unwrap();
        assert_eq!(c[0], xv(0).add(&yv(0)));
        // c_1 = x_1 + y_1 - x_0 y_0.
        assert_eq!(c[1], xv(1).add(&yv(1)).sub(&xv(0).mul(&yv(0))));
        let w1 = ghost_poly(2, 1);
        let subst = w1.substitute(&|v| {
            assert_eq!(v.series, Series::X);
            c[v.slot as usize].clone()
        });
        assert_eq!(subst, targets[1]);
    }

    #[test]
    fn ghost_solve_rejects_invalid_targets() {
        // Targets (1, 0) are not the ghost of anything: (0 - 1)/2 is inexact.
        let targets = vec![SparsePoly::one(), SparsePoly::zero()];
        let err = ghost_solve(2, &targets).unwrap_err();
        assert!(matches!(err, WittError::InexactDivision(_)), "{err:?}");
    }

    #[test]
    fn frobenius_level_zero_is_the_first_ghost() {
        // F_0 = x_0^p + p x_1 exactly, for any p.
        for p in [2u64, 3, 5] {
            let f = frobenius_polys(p, 1).unwrap();
            assert_eq!(*f[0], ghost_poly(p, 1));
        }
    }

    #[test]
    fn frobenius_level_one_for_p2() {
        // F_1 = 2 x_2 - x_1^2 - 2 x_0^2 x_1, forced by w_1(F) = w_2.
        let f = frobenius_polys(2, 2).unwrap();
        let expected = xv(2)
            .mul_scalar(&BigInt::from(2))
            .sub(&xv(1).pow(2))
            .sub(&xv(0).pow(2).mul(&xv(1)).mul_scalar(&BigInt::from(2)));
        assert_eq!(*f[1], expected);
    }

    #[test]
    fn correction_polynomials_small() {
        // f_{p^0} = 0 for every p since F_0 = x_0^p + p x_1 exactly.
        for p in [2u64, 3, 5] {
            assert!(correction_poly(p, 0).unwrap().is_zero());
        }
        // f_2 = -x_1^2 - x_0^2 x_1 for p=2.
        let f2 = correction_poly(2, 1).unwrap();
        let expected = xv(1).pow(2).neg().sub(&xv(0).pow(2).mul(&xv(1)));
        assert_eq!(*f2, expected);
        // f_3 = -3 x_1^3 - x_0^6 x_1 - 3 x_0^3 x_1^2 for p=3.
        let f3 = correction_poly(3, 1).unwrap();
        let expected3 = xv(1)
            .pow(3)
            .mul_scalar(&BigInt::from(-3))
            .sub(&xv(0).pow(6).mul(&xv(1)))
            .sub(&xv(0).pow(3).mul(&xv(1).pow(2)).mul_scalar(&BigInt::from(3)));
        assert_eq!(*f3, expected3);
    }

    #[test]
    fn sum_family_small_values() {
        let s = sum_polys(2, 1).unwrap();
        assert_eq!(*s[0], xv(0).add(&yv(0)));
        assert_eq!(*s[1], xv(1).add(&yv(1)).sub(&xv(0).mul(&yv(0))));
        let n = neg_polys(3, 0).unwrap();
        assert_eq!(*n[0], xv(0).neg());
        let pr = product_polys(2, 0).unwrap();
        assert_eq!(*pr[0], xv(0).mul(&yv(0)));
        // P_1 = x_0^2 y_1 + x_1 y_0^2 + 2 x_1 y_1.
        let pr = product_polys(2, 1).unwrap();
        let expected = xv(0)
            .pow(2)
            .mul(&yv(1))
            .add(&xv(1).mul(&yv(0).pow(2)))
            .add(&xv(1).mul(&yv(1)).mul_scalar(&BigInt::from(2)));
        assert_eq!(*pr[1], expected);
    }

    #[test]
    fn weighted_homogeneity_of_families() {
        for i in 0..=2u32 {
            let s = sum_polys(2, i).unwrap();
            assert!(s[i as usize].is_homogeneous(2, (2u128).pow(i)));
            let pr = product_polys(2, i).unwrap();
            assert!(pr[i as usize].is_homogeneous(2, 2 * (2u128).pow(i)));
        }
    }

    #[test]
    fn level_cap_is_enforced() {
        let err = sum_polys(5, 3).unwrap_err();
        assert!(matches!(err, WittError::BudgetExhausted(_)));
        // But an explicit cap raise allows it (not exercised at high levels here).
        assert!(family(5, FamilyKind::Sum, 2, Some(3)).is_ok());
    }

    #[test]
    fn cache_and_fresh_computation_agree() {
        let cached = sum_polys(3, 2).unwrap();
        let fresh = compute_family_fresh(3, FamilyKind::Sum, 2).unwrap();
        for (a, b) in cached.iter().zip(fresh.iter()) {
            assert_eq!(**a, *b);
        }
    }

    #[test]
    fn correction_has_no_pure_x0_power_at_level_ge_one() {
        for p in [2u64, 3] {
            let f = correction_poly(p, 1).unwrap();
            let mono = Monomial::from_factors(vec![(WittVariable::x(0), (p * p) as u32)]);
            assert_eq!(f.coefficient_of(&mono), BigInt::from(0));
        }
    }
}
