//! Exact rational numbers.
//!
//! Values that fit in a pair of `i64` stay on a fast path; anything larger is
//! promoted to a [`BigRational`]. The representation is canonical (reduced,
//! positive denominator, small whenever it fits), so structural equality is
//! numeric equality.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with integers p, q (q != 0)")]
pub struct ParseRationalError(pub String);

const SMALL_MAX: i128 = i64::MAX as i128;

fn fits(v: i128) -> bool {
    (-SMALL_MAX..=SMALL_MAX).contains(&v)
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Rational(Repr::Small(0, 1));
        }
        if d == 1 && fits(n) {
            return Rational(Repr::Small(n as i64, 1));
        }
        if fits(n) && fits(d) {
            let g = (n as i64).gcd(&(d as i64));
            return Rational(Repr::Small(n as i64 / g, d as i64 / g));
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if fits(n) && fits(d) {
            Rational(Repr::Small(n as i64, d as i64))
        } else {
            Self::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces; demote when possible.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(r))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn floor(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(n.div_floor(d) as i128, 1),
            Repr::Big(r) => Self::from_big(r.floor()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Integer power with a non-negative exponent.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a - c, b)
                } else {
                    Rational::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128))
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128((*a as i128) * (*d as i128), (*b as i128) * (*c as i128))
            }
            _ => Rational::from_big(self.to_big() / rhs.to_big()),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(r) => Rational::from_big(-r.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(t.trim_start_matches('+')).ok()
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(String::from(s));
        match s.split_once('/') {
            None => Ok(Rational::from_bigints(parse_int(s).ok_or_else(err)?, BigInt::one())),
            Some((p, q)) => {
                let p = parse_int(p).ok_or_else(err)?;
                let q = parse_int(q).ok_or_else(err)?;
                if q.is_zero() {
                    return Err(err());
                }
                Ok(Rational::from_bigints(p, q))
            }
        }
    }
}

/// Shorthand for building rationals in tests and registries.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Integer-valued shorthand.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n)
}
