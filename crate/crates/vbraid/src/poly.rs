//! Exact integer Laurent polynomials in the single variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// The value of a closed loop in the bracket state sum: -A^2 - A^-2.
    pub fn loop_value() -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(2, BigInt::from(-1));
        p.add_term(-2, BigInt::from(-1));
        p
    }

    /// (-A^3)^k for any integer k, i.e. (-1)^k A^{3k}.
    pub fn neg_a_cubed_pow(k: i64) -> LaurentPoly {
        let coeff = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        LaurentPoly::monomial(3 * k, coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (exponent, coefficient), ascending in exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        if coeff == BigInt::from(0) {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == BigInt::from(0) {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> LaurentPoly {
        let factor = factor.into();
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c * &factor);
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff < &BigInt::from(0);
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = if negative { -coeff } else { coeff.clone() };
            if exp == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != BigInt::from(1) {
                    write!(f, "{mag}")?;
                }
                if exp == 1 {
                    f.write_str("A")?;
                } else {
                    write!(f, "A^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<LaurentPoly> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.into(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_digits = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (*pos > start).then(|| text[start..*pos].parse().expect("digits"))
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty polynomial"));
        }
        let mut out = LaurentPoly::zero();
        let mut sign: i64 = 1;
        if bytes[pos] == b'-' {
            sign = -1;
            pos += 1;
            skip_ws(&mut pos);
        }
        loop {
            let coeff = read_digits(&mut pos);
            let exp = if pos < bytes.len() && bytes[pos] == b'A' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let exp_sign = if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                        -1
                    } else {
                        1
                    };
                    let digits_at = pos;
                    let d = read_digits(&mut pos)
                        .ok_or_else(|| err(digits_at, "expected exponent digits after `^`"))?;
                    let e: i64 = d.to_string().parse().map_err(|_| {
                        err(digits_at, "exponent out of range")
                    })?;
                    exp_sign * e
                } else {
                    1
                }
            } else {
                0
            };
            if coeff.is_none() && exp == 0 {
                return Err(err(pos, "expected a coefficient or `A`"));
            }
            out.add_term(exp, coeff.unwrap_or_else(|| BigInt::from(1)) * sign);
            skip_ws(&mut pos);
            if pos == bytes.len() {
                return Ok(out);
            }
            sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(err(pos, "expected `+` or `-` between terms")),
            };
            pos += 1;
            skip_ws(&mut pos);
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect();
        map.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<LaurentPoly, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(de)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in map {
            let exp: i64 = e
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent `{e}`")))?;
            let coeff: BigInt = c
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient `{c}`")))?;
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

/// Random polynomial with small exponents and coefficients; deterministic in
/// the seed. Used by round-trip tests and the CLI.
pub fn random_poly(seed: u64) -> LaurentPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..=6) {
        let exp = rng.gen_range(-8..=8);
        let coeff = loop {
            let c = rng.gen_range(-99i64..=99);
            if c != 0 {
                break c;
            }
        };
        out.add_term(exp, BigInt::from(coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_golden_forms() {
        assert_eq!(LaurentPoly::monomial(3, -1).to_string(), "-A^3");
        assert_eq!(LaurentPoly::loop_value().to_string(), "-A^2 - A^-2");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(2, 3).to_string(), "3A^2");
        assert_eq!(LaurentPoly::monomial(-2, 1).to_string(), "A^-2");
        assert_eq!(LaurentPoly::monomial(1, -2).to_string(), "-2A");
        let mixed = &LaurentPoly::monomial(4, 2) + &LaurentPoly::monomial(0, -7);
        assert_eq!(mixed.to_string(), "2A^4 - 7");
    }

    #[test]
    fn arithmetic_basics() {
        let a = LaurentPoly::monomial(1, 1);
        let a_inv = LaurentPoly::monomial(-1, 1);
        let sum = &(&a + &a_inv) + &a_inv.scale(-1);
        assert_eq!(sum, a);
        assert_eq!(&a * &a_inv, LaurentPoly::one());
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert_eq!(LaurentPoly::neg_a_cubed_pow(-1).to_string(), "-A^-3");
        assert_eq!(
            &LaurentPoly::neg_a_cubed_pow(2) * &LaurentPoly::neg_a_cubed_pow(-2),
            LaurentPoly::one()
        );
        assert_eq!(LaurentPoly::loop_value().pow(2).to_string(), "A^4 + 2 + A^-4");
    }

    #[test]
    fn parse_examples() {
        let d: LaurentPoly = "-A^2 - A^-2".parse().unwrap();
        assert_eq!(d, LaurentPoly::loop_value());
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert_eq!("12".parse::<LaurentPoly>().unwrap(), LaurentPoly::monomial(0, 12));
        assert_eq!("A".parse::<LaurentPoly>().unwrap(), LaurentPoly::monomial(1, 1));
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("A^".parse::<LaurentPoly>().is_err());
        assert!("A + + 1".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = &LaurentPoly::monomial(3, -1) + &LaurentPoly::monomial(-2, 42);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&js).unwrap(), p);
    }

    proptest! {
        #[test]
        fn ring_axioms(sa in any::<u64>(), sb in any::<u64>(), sc in any::<u64>()) {
            let (a, b, c) = (random_poly(sa), random_poly(sb), random_poly(sc));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), LaurentPoly::zero());
        }

        #[test]
        fn text_round_trip(seed in any::<u64>()) {
            let p = random_poly(seed);
            prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        }
    }
}
