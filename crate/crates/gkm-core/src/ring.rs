//! Coefficient rings: arbitrary-precision integers, dyadic fractions
//! (denominator a power of two), and the field with two elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Tag selecting the coefficient ring of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    /// the integers
    Int,
    /// integers with 2 inverted
    Dyadic,
    /// integers mod 2
    Mod2,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Int => "Int",
            Ring::Dyadic => "Dyadic",
            Ring::Mod2 => "Mod2",
        }
    }

    pub fn parse(s: &str) -> Result<Ring> {
        match s {
            "Int" | "int" | "Z" => Ok(Ring::Int),
            "Dyadic" | "dyadic" | "Z[1/2]" => Ok(Ring::Dyadic),
            "Mod2" | "mod2" | "F2" | "Z/2" => Ok(Ring::Mod2),
            _ => Err(Error::Usage(format!(
                "unknown ring {s:?}; expected Int, Dyadic or Mod2"
            ))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dyadic fraction `num / 2^exp`, kept in lowest terms:
/// `num` is odd whenever `exp > 0`, and zero is `0 / 2^0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(num: BigInt) -> Dyadic {
        Dyadic { num, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        if self.exp > 0 {
            let tz = self.num.trailing_zeros().unwrap_or(0);
            let shift = (self.exp as u64).min(tz) as u32;
            if shift > 0 {
                self.num >>= shift;
                self.exp -= shift;
            }
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the denominator.
    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_int(&self) -> Option<BigInt> {
        if self.exp == 0 {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp);
        let b = &other.num << (exp - other.exp);
        Dyadic::new(a + b, exp)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &other.num, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }

    /// Exact quotient `self / other`, if it exists in `Z[1/2]`.
    pub fn div_exact(&self, other: &Dyadic) -> Option<Dyadic> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::from_int(BigInt::zero()));
        }
        // compare odd parts; powers of two are always invertible
        let va = self.num.trailing_zeros().unwrap_or(0);
        let vb = other.num.trailing_zeros().unwrap_or(0);
        let oa: BigInt = &self.num >> va;
        let ob: BigInt = &other.num >> vb;
        let (q, r) = num_integer::div_rem(oa, ob);
        if !r.is_zero() {
            return None;
        }
        // 2-adic valuation of the quotient
        let val = va as i64 - self.exp as i64 - vb as i64 + other.exp as i64;
        if val >= 0 {
            Some(Dyadic::from_int(q << val))
        } else {
            Some(Dyadic { num: q, exp: (-val) as u32 })
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// A coefficient in one of the three supported rings.
///
/// Arithmetic panics on ring mismatch; callers are expected to keep all
/// operands in a single ring, and the polynomial layer checks this up front.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coeff {
    Int(BigInt),
    Dyadic(Dyadic),
    Mod2(bool),
}

impl Coeff {
    pub fn ring(&self) -> Ring {
        match self {
            Coeff::Int(_) => Ring::Int,
            Coeff::Dyadic(_) => Ring::Dyadic,
            Coeff::Mod2(_) => Ring::Mod2,
        }
    }

    pub fn zero(ring: Ring) -> Coeff {
        Coeff::from_bigint(ring, BigInt::zero())
    }

    pub fn one(ring: Ring) -> Coeff {
        Coeff::from_bigint(ring, BigInt::one())
    }

    pub fn from_i64(ring: Ring, v: i64) -> Coeff {
        Coeff::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_bigint(ring: Ring, v: BigInt) -> Coeff {
        match ring {
            Ring::Int => Coeff::Int(v),
            Ring::Dyadic => Coeff::Dyadic(Dyadic::from_int(v)),
            Ring::Mod2 => Coeff::Mod2(v.bit(0)),
        }
    }

    /// The dyadic fraction `num / 2^exp` mapped into `ring`.
    /// Fails for `Int`/`Mod2` unless the value is an integer there.
    pub fn from_dyadic(ring: Ring, v: Dyadic) -> Result<Coeff> {
        match ring {
            Ring::Dyadic => Ok(Coeff::Dyadic(v)),
            Ring::Int | Ring::Mod2 => match v.to_int() {
                Some(n) => Ok(Coeff::from_bigint(ring, n)),
                None => Err(Error::Usage(format!(
                    "coefficient {v} is not an integer"
                ))),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Dyadic(v) => v.is_zero(),
            Coeff::Mod2(v) => !v,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Int(v) => v.is_one(),
            Coeff::Dyadic(v) => v.is_integer() && v.num().is_one(),
            Coeff::Mod2(v) => *v,
        }
    }

    fn mismatch(a: &Coeff, b: &Coeff) -> ! {
        panic!("coefficient ring mismatch: {} vs {}", a.ring(), b.ring());
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a + b),
            (Coeff::Dyadic(a), Coeff::Dyadic(b)) => Coeff::Dyadic(a.add(b)),
            (Coeff::Mod2(a), Coeff::Mod2(b)) => Coeff::Mod2(a ^ b),
            _ => Coeff::mismatch(self, other),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a * b),
            (Coeff::Dyadic(a), Coeff::Dyadic(b)) => Coeff::Dyadic(a.mul(b)),
            (Coeff::Mod2(a), Coeff::Mod2(b)) => Coeff::Mod2(*a && *b),
            _ => Coeff::mismatch(self, other),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Int(a) => Coeff::Int(-a),
            Coeff::Dyadic(a) => Coeff::Dyadic(a.neg()),
            Coeff::Mod2(a) => Coeff::Mod2(*a),
        }
    }

    /// Exact quotient in the ring, or `None` when `other` does not divide
    /// `self` (in particular when `other` is zero).
    pub fn div_exact(&self, other: &Coeff) -> Option<Coeff> {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = num_integer::div_rem(a.clone(), b.clone());
                if r.is_zero() {
                    Some(Coeff::Int(q))
                } else {
                    None
                }
            }
            (Coeff::Dyadic(a), Coeff::Dyadic(b)) => {
                a.div_exact(b).map(Coeff::Dyadic)
            }
            (Coeff::Mod2(a), Coeff::Mod2(b)) => {
                if !b {
                    None
                } else {
                    Some(Coeff::Mod2(*a))
                }
            }
            _ => Coeff::mismatch(self, other),
        }
    }

    /// Serialization used inside polynomial terms: a decimal string for
    /// integer-valued coefficients, a `[num, pow2]` pair otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Coeff::Int(v) => serde_json::Value::String(v.to_string()),
            Coeff::Dyadic(v) => {
                if v.is_integer() {
                    serde_json::Value::String(v.num().to_string())
                } else {
                    serde_json::json!([v.num().to_string(), v.exp().to_string()])
                }
            }
            Coeff::Mod2(v) => {
                serde_json::Value::String(if *v { "1" } else { "0" }.into())
            }
        }
    }

    pub fn from_json(ring: Ring, v: &serde_json::Value) -> Result<Coeff> {
        match v {
            serde_json::Value::String(s) => {
                let n: BigInt = s.parse().map_err(|_| {
                    Error::Usage(format!("bad coefficient {s:?}"))
                })?;
                Ok(Coeff::from_bigint(ring, n))
            }
            serde_json::Value::Array(a) if a.len() == 2 => {
                let num: BigInt = a[0]
                    .as_str()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| {
                        Error::Usage(format!("bad coefficient numerator {v}"))
                    })?;
                let exp: u32 = a[1]
                    .as_str()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| {
                        Error::Usage(format!("bad coefficient exponent {v}"))
                    })?;
                Coeff::from_dyadic(ring, Dyadic::new(num, exp))
            }
            _ => Err(Error::Usage(format!("bad coefficient {v}"))),
        }
    }

    /// Map into another coefficient ring, when the value lands there.
    pub fn convert(&self, ring: Ring) -> Result<Coeff> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        match self {
            Coeff::Int(v) => Ok(Coeff::from_bigint(ring, v.clone())),
            Coeff::Dyadic(v) => Coeff::from_dyadic(ring, v.clone()),
            Coeff::Mod2(_) => Err(Error::Usage(
                "cannot lift a mod-2 coefficient".into(),
            )),
        }
    }

    /// Display with sign split off, for polynomial printing.
    pub fn abs_string(&self) -> (bool, String) {
        match self {
            Coeff::Int(v) => (v.is_negative(), v.abs().to_string()),
            Coeff::Dyadic(v) => {
                let neg = v.num().is_negative();
                let abs = Dyadic::new(v.num().abs(), v.exp());
                (neg, abs.to_string())
            }
            Coeff::Mod2(v) => (false, if *v { "1" } else { "0" }.into()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Dyadic(v) => write!(f, "{v}"),
            Coeff::Mod2(v) => write!(f, "{}", if *v { 1 } else { 0 }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(num: i64, exp: u32) -> Dyadic {
        Dyadic::new(BigInt::from(num), exp)
    }

    #[test]
    fn dyadic_normalization() {
        assert_eq!(dy(12, 2), dy(3, 0));
        assert_eq!(dy(12, 1), dy(6, 0));
        assert_eq!(dy(0, 7), dy(0, 0));
        assert_eq!(dy(5, 3).exp(), 3);
    }

    #[test]
    fn dyadic_arithmetic() {
        // 3/4 + 1/2 = 5/4
        assert_eq!(dy(3, 2).add(&dy(1, 1)), dy(5, 2));
        // 3/4 * 2 = 3/2
        assert_eq!(dy(3, 2).mul(&dy(2, 0)), dy(3, 1));
        assert_eq!(dy(3, 2).add(&dy(-3, 2)), dy(0, 0));
    }

    #[test]
    fn dyadic_division() {
        // 1 / 2 = 1/2
        assert_eq!(dy(1, 0).div_exact(&dy(2, 0)), Some(dy(1, 1)));
        // (3/2) / 3 = 1/4 * 2 = ...
        assert_eq!(dy(3, 1).div_exact(&dy(3, 0)), Some(dy(1, 1)));
        assert_eq!(dy(3, 1).div_exact(&dy(6, 0)), Some(dy(1, 2)));
        // 1 / 3 does not exist
        assert_eq!(dy(1, 0).div_exact(&dy(3, 0)), None);
        assert_eq!(dy(0, 0).div_exact(&dy(3, 0)), Some(dy(0, 0)));
        assert_eq!(dy(4, 0).div_exact(&dy(0, 0)), None);
    }

    #[test]
    fn coeff_int_division() {
        let six = Coeff::from_i64(Ring::Int, 6);
        let three = Coeff::from_i64(Ring::Int, 3);
        let four = Coeff::from_i64(Ring::Int, 4);
        assert_eq!(six.div_exact(&three), Some(Coeff::from_i64(Ring::Int, 2)));
        assert_eq!(six.div_exact(&four), None);
    }

    #[test]
    fn coeff_mod2() {
        let one = Coeff::one(Ring::Mod2);
        let zero = Coeff::zero(Ring::Mod2);
        assert_eq!(one.add(&one), zero);
        assert_eq!(Coeff::from_i64(Ring::Mod2, -3), one);
        assert_eq!(one.neg(), one);
        assert_eq!(zero.div_exact(&one), Some(zero.clone()));
        assert_eq!(one.div_exact(&zero), None);
    }

    #[test]
    fn coeff_json_round_trip() {
        for c in [
            Coeff::from_i64(Ring::Int, -17),
            Coeff::Dyadic(dy(5, 3)),
            Coeff::Dyadic(dy(4, 0)),
            Coeff::one(Ring::Mod2),
        ] {
            let back = Coeff::from_json(c.ring(), &c.to_json()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn ring_parse_names() {
        assert_eq!(Ring::parse("Int").unwrap(), Ring::Int);
        assert_eq!(Ring::parse("Z[1/2]").unwrap(), Ring::Dyadic);
        assert_eq!(Ring::parse("Mod2").unwrap(), Ring::Mod2);
        assert!(Ring::parse("Q").is_err());
    }
}
