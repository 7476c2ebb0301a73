//! Ring-spec grammar and element literals.
//!
//! Ring specs: `Z` | `Z/<m>` | `GF(<q>)` | `Z[T]` | `GF(<q>)[T]` |
//! `Z[T]/(<poly>)` | `GF(<q>)[T]/(<poly>)` | `Zeta(<p>,<n>)` | `ZetaTower(<p>)`.
//!
//! Element literals: decimal integers for scalar rings; polynomials like
//! `T^2+T+1` or `2*T^3-T+4` for polynomial-backed rings; `[c0,c1,...]@<level>`
//! for cyclotomic elements (the bracket vector lists coefficients of
//! mu^0, mu^1, ... at the stated level).

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Result, WittError};

use super::{Ring, RingDescriptor, RingElement};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(WittError::Parse {
            offset: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn peek_raw(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.s.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek_raw()
            .map_or(false, |c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an identifier");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn nat_u64(&mut self) -> Result<u64> {
        let n = self.nat()?;
        u64::try_from(&n).map_err(|_| WittError::Parse {
            offset: self.pos,
            msg: "number too large".into(),
        })
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.nat()?;
        let v = BigInt::from(n);
        Ok(if neg { -v } else { v })
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.s.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

/// Parse a ring spec string into a ring.
pub fn parse_ring_spec(text: &str) -> Result<Ring> {
    let mut cur = Cursor::new(text);
    let ring = parse_ring_inner(&mut cur)?;
    cur.end()?;
    Ok(ring)
}

fn parse_ring_inner(cur: &mut Cursor) -> Result<Ring> {
    let head = cur.ident()?;
    match head.as_str() {
        "Z" => {
            if cur.eat(b'/') {
                let m = cur.nat()?;
                Ring::modular(m)
            } else if cur.peek() == Some(b'[') {
                parse_poly_tail(cur, Ring::integers())
            } else {
                Ok(Ring::integers())
            }
        }
        "GF" => {
            cur.expect(b'(')?;
            let q = cur.nat()?;
            cur.expect(b')')?;
            let base = Ring::prime_field(q)?;
            if cur.peek() == Some(b'[') {
                parse_poly_tail(cur, base)
            } else {
                Ok(base)
            }
        }
        "Zeta" => {
            cur.expect(b'(')?;
            let p = cur.nat_u64()?;
            cur.expect(b',')?;
            let n = cur.nat_u64()?;
            cur.expect(b')')?;
            let n = u32::try_from(n)
                .map_err(|_| WittError::Parse { offset: cur.pos, msg: "level too large".into() })?;
            Ring::cyclotomic(p, n)
        }
        "ZetaTower" => {
            cur.expect(b'(')?;
            let p = cur.nat_u64()?;
            cur.expect(b')')?;
            Ring::cyclotomic_tower(p)
        }
        other => cur.err(format!("unknown ring head {other:?}")),
    }
}

fn parse_poly_tail(cur: &mut Cursor, base: Ring) -> Result<Ring> {
    cur.expect(b'[')?;
    let var = cur.ident()?;
    cur.expect(b']')?;
    let poly_ring = Ring::polynomial(&base, &var)?;
    if cur.eat(b'/') {
        cur.expect(b'(')?;
        let coeffs = parse_poly(cur, &var)?;
        cur.expect(b')')?;
        Ring::quotient(&poly_ring, coeffs)
    } else {
        Ok(poly_ring)
    }
}

/// Polynomial literal in the given variable; ascending coefficients.
fn parse_poly(cur: &mut Cursor, var: &str) -> Result<Vec<BigInt>> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = if cur.eat(b'-') {
            -1
        } else if cur.eat(b'+') {
            1
        } else if first {
            1
        } else {
            break;
        };
        first = false;
        cur.skip_ws();
        let coeff = if cur.peek_raw().map_or(false, |c| c.is_ascii_digit()) {
            cur.nat()?.into()
        } else {
            BigInt::from(1)
        };
        let mut exp = 0usize;
        cur.skip_ws();
        let has_star = cur.eat(b'*');
        cur.skip_ws();
        if cur.peek_raw().map_or(false, |c| c.is_ascii_alphabetic()) {
            let name = cur.ident()?;
            if name != var {
                return cur.err(format!("unknown variable {name:?}, expected {var:?}"));
            }
            exp = 1;
            if cur.eat(b'^') {
                let e = cur.nat_u64()?;
                exp = usize::try_from(e).map_err(|_| WittError::Parse {
                    offset: cur.pos,
                    msg: "exponent too large".into(),
                })?;
            }
        } else if has_star {
            return cur.err("expected a variable after '*'");
        }
        if exp > 1 << 20 {
            return cur.err("exponent too large");
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        let signed = if sign < 0 { -coeff } else { coeff };
        coeffs[exp] += signed;
    }
    Ok(coeffs)
}

fn parse_bracket_vector(cur: &mut Cursor) -> Result<Vec<BigInt>> {
    cur.expect(b'[')?;
    let mut out = Vec::new();
    if cur.peek() == Some(b']') {
        cur.bump();
        return Ok(out);
    }
    loop {
        out.push(cur.int()?);
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b']')?;
        break;
    }
    Ok(out)
}

/// Parse an element literal for the given ring.
pub fn parse_element(ring: &Ring, text: &str) -> Result<RingElement> {
    let mut cur = Cursor::new(text);
    let elem = parse_element_inner(ring, &mut cur)?;
    cur.end()?;
    Ok(elem)
}

fn parse_element_inner(ring: &Ring, cur: &mut Cursor) -> Result<RingElement> {
    match ring.descriptor() {
        RingDescriptor::Integers
        | RingDescriptor::ModularIntegers { .. }
        | RingDescriptor::PrimeField { .. } => Ok(ring.from_int(cur.int()?)),
        RingDescriptor::PolynomialRing { var, .. } | RingDescriptor::QuotientRing { var, .. } => {
            let var = var.clone();
            let coeffs = parse_poly(cur, &var)?;
            ring.poly_element(coeffs)
        }
        RingDescriptor::CyclotomicLevel { level, .. } => {
            if cur.peek() == Some(b'[') {
                let coeffs = parse_bracket_vector(cur)?;
                if cur.eat(b'@') {
                    let lvl = cur.nat_u64()? as u32;
                    if lvl != *level {
                        return cur.err(format!(
                            "literal level {lvl} does not match ring level {level}"
                        ));
                    }
                }
                ring.poly_element(coeffs)
            } else {
                Ok(ring.from_int(cur.int()?))
            }
        }
        RingDescriptor::CyclotomicTower { .. } => {
            if cur.peek() == Some(b'[') {
                let coeffs = parse_bracket_vector(cur)?;
                cur.expect(b'@')?;
                let lvl = cur.nat_u64()? as u32;
                if lvl < 1 {
                    return cur.err("tower level must be >= 1");
                }
                ring.tower_element(lvl, coeffs)
            } else {
                Ok(ring.from_int(cur.int()?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs_round_trip() {
        for spec in [
            "Z",
            "Z/4",
            "GF(3)",
            "GF(3)[T]",
            "Z[T]/(T^2+1)",
            "GF(5)[T]/(T^2)",
            "Zeta(3,2)",
            "ZetaTower(3)",
        ] {
            let ring = parse_ring_spec(spec).unwrap();
            assert_eq!(ring.spec_string(), spec, "round trip of {spec}");
            let again = parse_ring_spec(&ring.spec_string()).unwrap();
            assert_eq!(ring, again);
        }
    }

    #[test]
    fn spec_errors_carry_offsets() {
        let err = parse_ring_spec("Z[T]/(T^2+1").unwrap_err();
        match err {
            WittError::Parse { offset, .. } => assert_eq!(offset, 11),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_ring_spec("Q").is_err());
        assert!(parse_ring_spec("Z/1").is_err());
        assert!(parse_ring_spec("GF(4)").is_err());
        assert!(parse_ring_spec("Zeta(4,1)").is_err());
    }

    #[test]
    fn modular_spec_parses() {
        let z4 = parse_ring_spec("Z/4").unwrap();
        assert_eq!(
            z4.descriptor(),
            &RingDescriptor::ModularIntegers { modulus: BigUint::from(4u32) }
        );
    }

    #[test]
    fn element_literals() {
        let z = parse_ring_spec("Z").unwrap();
        assert_eq!(parse_element(&z, "-42").unwrap(), z.from_int(BigInt::from(-42)));

        let q = parse_ring_spec("Z[T]/(T^2+1)").unwrap();
        let t = q.generator().unwrap();
        assert_eq!(parse_element(&q, "T^2+1").unwrap(), q.zero());
        assert_eq!(parse_element(&q, "2*T - 1").unwrap(), {
            let two_t = q.int_mul(&BigInt::from(2), &t).unwrap();
            q.sub(&two_t, &q.one()).unwrap()
        });

        let zeta = parse_ring_spec("Zeta(3,2)").unwrap();
        assert_eq!(
            parse_element(&zeta, "[0,1]@2").unwrap(),
            zeta.generator().unwrap()
        );
        assert!(parse_element(&zeta, "[0,1]@1").is_err());

        let tower = parse_ring_spec("ZetaTower(3)").unwrap();
        assert_eq!(
            parse_element(&tower, "[0,1]@2").unwrap(),
            tower.tower_root_of_unity(2).unwrap()
        );
        // Level-normalized on input: mu_9^3 = mu_3.
        assert_eq!(
            parse_element(&tower, "[0,0,0,1]@2").unwrap(),
            tower.tower_root_of_unity(1).unwrap()
        );
    }

    #[test]
    fn element_display_round_trips() {
        let rings = [
            parse_ring_spec("Z").unwrap(),
            parse_ring_spec("Z/9").unwrap(),
            parse_ring_spec("GF(5)[T]/(T^2)").unwrap(),
            parse_ring_spec("Zeta(3,2)").unwrap(),
            parse_ring_spec("ZetaTower(3)").unwrap(),
        ];
        for ring in &rings {
            let elems = [
                ring.zero(),
                ring.one(),
                ring.from_int(BigInt::from(-7)),
                ring.from_int(BigInt::from(12)),
            ];
            for e in &elems {
                let s = ring.element_string(e);
                let back = parse_element(ring, &s).unwrap();
                assert_eq!(&back, e, "{} did not round trip in {}", s, ring.spec_string());
            }
        }
        let zeta = parse_ring_spec("Zeta(3,2)").unwrap();
        let mu = zeta.generator().unwrap();
        let s = zeta.element_string(&mu);
        assert_eq!(parse_element(&zeta, &s).unwrap(), mu);
    }
}
