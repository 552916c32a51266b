//! An exact integer that stays in a machine word until an operation
//! overflows, then promotes to a heap-allocated big integer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone)]
pub enum Integer {
    Small(i64),
    /// Never holds a value that fits in `i64`.
    Big(Box<BigInt>),
}

use Integer::{Big, Small};

impl Integer {
    pub const ZERO: Integer = Small(0);
    pub const ONE: Integer = Small(1);

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Small(v),
            None => Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Small(v) => BigInt::from(*v),
            Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Small(1))
    }

    /// `±1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Small(1) | Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Small(v) => *v < 0,
            Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Euclidean quotient rounded toward negative infinity.
    pub fn div_floor(&self, other: &Integer) -> Integer {
        assert!(!other.is_zero(), "division by zero");
        match (self, other) {
            (Small(a), Small(b)) if !(*a == i64::MIN && *b == -1) => Small(a.div_floor(b)),
            _ => Integer::from_big(self.to_big().div_floor(&other.to_big())),
        }
    }

    /// Remainder with the sign of the divisor.
    pub fn mod_floor(&self, other: &Integer) -> Integer {
        assert!(!other.is_zero(), "division by zero");
        match (self, other) {
            (Small(a), Small(b)) if !(*a == i64::MIN && *b == -1) => Small(a.mod_floor(b)),
            _ => Integer::from_big(self.to_big().mod_floor(&other.to_big())),
        }
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            other.is_zero()
        } else {
            other.mod_floor(self).is_zero()
        }
    }

    /// Nonnegative greatest common divisor.
    pub fn gcd(&self, other: &Integer) -> Integer {
        match (self, other) {
            (Small(a), Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                i64::try_from(g)
                    .map(Small)
                    .unwrap_or_else(|_| Integer::from_big(BigInt::from(g)))
            }
            _ => Integer::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        (self * &other.div_floor(&self.gcd(other))).abs()
    }

    /// `(g, x, y)` with `g = gcd(a, b) = a·x + b·y` and `g ≥ 0`.
    pub fn ext_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Integer::ONE, Integer::ZERO);
        let (mut t0, mut t1) = (Integer::ZERO, Integer::ONE);
        while !r1.is_zero() {
            let q = r0.div_floor(&r1);
            let r2 = &r0 - &(&q * &r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r2);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.is_negative() {
            (-r0, -s0, -t0)
        } else {
            (r0, s0, t0)
        }
    }

    /// Residue in `0..p`.
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Small(v) => v.rem_euclid(p as i64) as u64,
            Big(b) => b
                .mod_floor(&BigInt::from(p))
                .to_u64()
                .expect("residue fits"),
        }
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Small(v as i64)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Small(a), Small(b)) => a == b,
            (Big(a), Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl std::hash::Hash for Integer {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Small(v) => v.hash(state),
            Big(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Small(a), Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialEq<i64> for Integer {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Small(v) if v == other)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(v) => write!(f, "{v}"),
            Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Machine-sized values serialize as JSON numbers, larger ones as decimal strings.
impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Small(v) => s.serialize_i64(*v),
            Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                if let (Small(a), Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Small(v);
                    }
                }
                Integer::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Small(v) => v
                .checked_neg()
                .map(Small)
                .unwrap_or_else(|| Integer::from_big(-BigInt::from(*v))),
            Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Integer::from(i64::MAX) + Integer::ONE;
        assert!(matches!(big, Big(_)));
        let back = &big - &Integer::ONE;
        assert!(matches!(back, Small(v) if v == i64::MAX));
        let sq = Integer::from(1i64 << 40) * Integer::from(1i64 << 40);
        assert_eq!(sq.to_big(), BigInt::from(1) << 80);
        assert!(matches!(-Integer::from(i64::MIN), Big(_)));
    }

    #[test]
    fn euclid() {
        let (g, x, y) = Integer::from(240).ext_gcd(&Integer::from(-46));
        assert_eq!(g, Integer::from(2));
        assert_eq!(Integer::from(240) * x + Integer::from(-46) * y, g);
        assert_eq!(
            Integer::from(-7).div_floor(&Integer::from(2)),
            Integer::from(-4)
        );
        assert_eq!(Integer::from(-7).mod_floor(&Integer::from(2)), Integer::ONE);
        assert_eq!(Integer::from(4).lcm(&Integer::from(6)), Integer::from(12));
        assert_eq!(Integer::from(-3).rem_u64(5), 2);
    }
}
