//! Canonical textual forms for rings and elements. These are the exact
//! strings the CLI emits and re-reads, so they must round-trip.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Repr, Ring, RingDescriptor, RingElement};

impl Ring {
    /// Canonical ring-spec string (parse_ring_spec inverse).
    pub fn spec_string(&self) -> String {
        spec_of(self.descriptor())
    }

    /// Canonical element literal (parse_element inverse).
    pub fn element_string(&self, a: &RingElement) -> String {
        match (&a.repr, self.descriptor()) {
            (Repr::Int(v), _) => v.to_string(),
            (Repr::Poly(coeffs), RingDescriptor::CyclotomicLevel { level, .. }) => {
                bracket_vector(coeffs, Some(*level))
            }
            (Repr::Poly(coeffs), RingDescriptor::PolynomialRing { var, .. })
            | (Repr::Poly(coeffs), RingDescriptor::QuotientRing { var, .. }) => {
                poly_string(coeffs, var)
            }
            (Repr::Tower { level, coeffs }, _) => bracket_vector(coeffs, Some(*level)),
            _ => unreachable!("canonical representations match descriptors"),
        }
    }
}

fn spec_of(d: &RingDescriptor) -> String {
    match d {
        RingDescriptor::Integers => "Z".to_string(),
        RingDescriptor::ModularIntegers { modulus } => format!("Z/{modulus}"),
        RingDescriptor::PrimeField { prime } => format!("GF({prime})"),
        RingDescriptor::PolynomialRing { base, var } => format!("{}[{var}]", spec_of(base)),
        RingDescriptor::QuotientRing { base, var, modulus } => {
            format!("{}[{var}]/({})", spec_of(base), poly_string(modulus, var))
        }
        RingDescriptor::CyclotomicLevel { p, level } => format!("Zeta({p},{level})"),
        RingDescriptor::CyclotomicTower { p } => format!("ZetaTower({p})"),
    }
}

fn bracket_vector(coeffs: &[BigInt], level: Option<u32>) -> String {
    let body = if coeffs.is_empty() {
        "0".to_string()
    } else {
        coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match level {
        Some(n) => format!("[{body}]@{n}"),
        None => format!("[{body}]"),
    }
}

/// Render ascending coefficients in descending-degree convention.
pub(crate) fn poly_string(coeffs: &[BigInt], var: &str) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        let show_coeff = k == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if k > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push_str(var);
            if k > 1 {
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.element_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_rendering() {
        let c = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(poly_string(&c(&[1, 0, 1]), "T"), "T^2+1");
        assert_eq!(poly_string(&c(&[-1, -1]), "T"), "-T-1");
        assert_eq!(poly_string(&c(&[0, 2]), "T"), "2*T");
        assert_eq!(poly_string(&c(&[]), "T"), "0");
        assert_eq!(poly_string(&c(&[5]), "T"), "5");
    }
}
