//! Dense polynomial helpers over a scalar base, shared by the polynomial,
//! quotient, and cyclotomic representations. Coefficients ascend by degree
//! and the vectors carry no trailing zeros.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::ScalarBase;

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn canon(base: &ScalarBase, v: Vec<BigInt>) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.into_iter().map(|c| base.canon(c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn add(base: &ScalarBase, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    let zero = BigInt::zero();
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(base.add(x, y));
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(base: &ScalarBase, a: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| base.neg(c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(base: &ScalarBase, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if let Some(out) = mul_i128_fast(a, b) {
        return canon(base, out);
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    canon(base, out)
}

/// Schoolbook multiplication in fixed-width arithmetic when every product
/// term fits i128 with headroom for the accumulation. Cyclotomic levels of
/// the tower produce large-degree vectors with small coordinates, where this
/// path is an order of magnitude faster than arbitrary precision.
fn mul_i128_fast(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let bits = |v: &[BigInt]| v.iter().map(|c| c.bits()).max().unwrap_or(0);
    let (ba, bb) = (bits(a), bits(b));
    let acc_len = a.len().min(b.len()) as u64;
    // Signed products need ba + bb + 1 bits; the accumulator adds log2(terms).
    if ba + bb + 2 + (64 - acc_len.leading_zeros() as u64) > 126 {
        return None;
    }
    let conv = |v: &[BigInt]| -> Option<Vec<i128>> {
        v.iter().map(|c| i128::try_from(c).ok()).collect()
    };
    let av = conv(a)?;
    let bv = conv(b)?;
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in av.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in bv.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

/// Remainder modulo a monic polynomial (ascending coefficients, leading 1).
pub(crate) fn rem_monic(base: &ScalarBase, mut a: Vec<BigInt>, m: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(m.len() >= 2 && m.last().unwrap().is_one());
    let dm = m.len() - 1;
    while a.len() > dm {
        let k = a.len() - 1;
        let c = a[k].clone();
        if !base.is_zero_val(&c) {
            let shift = k - dm;
            for (i, mi) in m.iter().take(dm).enumerate() {
                if !mi.is_zero() {
                    let v = &a[shift + i] - &c * mi;
                    a[shift + i] = base.canon(v);
                }
            }
        }
        a.truncate(k);
    }
    trim(&mut a);
    a
}

pub(crate) fn mul_mod(
    base: &ScalarBase,
    a: &[BigInt],
    b: &[BigInt],
    modulus: Option<&[BigInt]>,
) -> Vec<BigInt> {
    let prod = mul(base, a, b);
    match modulus {
        Some(m) => rem_monic(base, prod, m),
        None => prod,
    }
}

/// Evaluate at an integer point (used for residue-field maps).
pub(crate) fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division by (1 - T): returns (quotient, remainder) with
/// a(T) = (1 - T) q(T) + r. Exact over Z.
pub(crate) fn div_by_one_minus_t(a: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    // Divide by (1 - T) = -(T - 1): divide by (T - 1) via Horner at 1, negate.
    if a.is_empty() {
        return (Vec::new(), BigInt::zero());
    }
    let mut q = vec![BigInt::zero(); a.len() - 1];
    let mut carry = BigInt::zero();
    for i in (1..a.len()).rev() {
        carry += &a[i];
        q[i - 1] = carry.clone();
    }
    let r = &a[0] + &carry;
    // a = (T - 1) q' + a(1) with q' as computed; so a = (1 - T)(-q') + a(1).
    let mut qn: Vec<BigInt> = q.into_iter().map(|c| -c).collect();
    trim(&mut qn);
    (qn, r)
}
