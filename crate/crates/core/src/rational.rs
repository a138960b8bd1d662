//! Exact rational arithmetic.
//!
//! [`Rational`] keeps small values as `Ratio<i64>` and promotes to a
//! big-integer ratio only when a checked operation overflows, then demotes
//! again whenever the result fits. The representation is canonical, so the
//! derived equality and hashing are value-based.
//!
//! [`ExtRational`] adds `+inf` with the absorbing rule `c + inf = inf + c = inf`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // numerator is never i64::MIN, so negation cannot overflow
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

fn small(r: Ratio<i64>) -> Rational {
    if *r.numer() == i64::MIN {
        Rational(Repr::Big(Box::new(to_big(&r))))
    } else {
        Rational(Repr::Small(r))
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn from_integer(n: i64) -> Self {
        small(Ratio::from_integer(n))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(Box::new(b))),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => *r.numer() < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(r) => small(r.recip()),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(r.numer().div_floor(r.denom())),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => {
                let (q, m) = r.numer().div_mod_floor(r.denom());
                BigInt::from(q) + BigInt::from(i64::from(m != 0))
            }
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    /// `self - a * b`, the simplex row update.
    pub fn sub_mul(&self, a: &Rational, b: &Rational) -> Rational {
        if let (Repr::Small(x), Repr::Small(y), Repr::Small(z)) = (&self.0, &a.0, &b.0) {
            if let Some(r) = y.checked_mul(z).and_then(|p| x.checked_sub(&p)) {
                return small(r);
            }
        }
        Self::from_big(self.to_big() - a.to_big() * b.to_big())
    }

    /// Lossy conversion, for display of irrational bounds only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Fixed-point decimal rendering with `digits` fractional digits,
    /// rounded toward `+inf` when `round_up` and toward `-inf` otherwise.
    pub fn to_decimal(&self, digits: u32, round_up: bool) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = Rational::from_big(self.to_big() * BigRational::from_integer(scale.clone()));
        let n = if round_up { scaled.ceil() } else { scaled.floor() };
        let neg = n.is_negative();
        let (int, frac) = n.abs().div_rem(&scale);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            s.push_str(&format!("{:0>width$}", frac.to_string(), width = digits as usize));
        }
        s
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $bigop:tt) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return small(r);
                    }
                }
                Rational::from_big(self.to_big() $bigop rhs.to_big())
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_div(b) {
                return small(r);
            }
        }
        Rational::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) => Rational(Repr::Small(-r)),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
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

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) => write!(f, "{}", b),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseError;

    /// Accepts `p` or `p/q` with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::BadNumber(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let p = p.strip_prefix('+').unwrap_or(p);
        let numer: BigInt = p.parse().map_err(|_| bad())?;
        let denom: BigInt = match q {
            Some(q) => {
                if q.starts_with(['+', '-']) {
                    return Err(bad());
                }
                q.parse().map_err(|_| bad())?
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(numer, denom)))
    }
}

/// A rational or `+inf`. `Finite < Infinite`, and addition absorbs at
/// infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        ExtRational::Finite(Rational::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(Rational::is_zero)
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl<'a> Add<&'a ExtRational> for &'a ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &'a ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl AddAssign<&ExtRational> for ExtRational {
    fn add_assign(&mut self, rhs: &ExtRational) {
        if let (ExtRational::Finite(a), ExtRational::Finite(b)) = (&mut *self, rhs) {
            *a += b;
        } else {
            *self = ExtRational::Infinite;
        }
    }
}

impl Sum for ExtRational {
    fn sum<I: Iterator<Item = ExtRational>>(iter: I) -> ExtRational {
        iter.fold(ExtRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExtRational> for ExtRational {
    fn sum<I: Iterator<Item = &'a ExtRational>>(iter: I) -> ExtRational {
        let mut acc = ExtRational::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "inf" | "+inf" | "Inf" | "INF" => Ok(ExtRational::Infinite),
            _ => s.parse().map(ExtRational::Finite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        let m = Rational::from_integer(i64::MIN + 1) - Rational::one();
        assert_eq!(m.to_string(), i64::MIN.to_string());
        assert_eq!(-&m - Rational::one(), Rational::from_integer(i64::MAX));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-4".parse::<Rational>().unwrap().to_string(), "-4");
        assert_eq!("+2/3".parse::<Rational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!("inf".parse::<ExtRational>().unwrap(), ExtRational::Infinite);
        assert_eq!(ExtRational::Infinite.to_string(), "inf");
    }

    #[test]
    fn floor_ceil_decimal() {
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(q(7, 2).ceil(), BigInt::from(4));
        assert_eq!(q(4, 1).ceil(), BigInt::from(4));
        assert_eq!(q(2, 3).to_decimal(3, true), "0.667");
        assert_eq!(q(2, 3).to_decimal(3, false), "0.666");
        assert_eq!(q(-1, 8).to_decimal(2, false), "-0.13");
    }

    #[test]
    fn infinity_absorbs() {
        let one = ExtRational::from_integer(1);
        assert_eq!(&one + &ExtRational::Infinite, ExtRational::Infinite);
        assert_eq!(&ExtRational::Infinite + &one, ExtRational::Infinite);
        assert!(one < ExtRational::Infinite);
        let total: ExtRational = vec![one.clone(), one.clone()].into_iter().sum();
        assert_eq!(total, ExtRational::from_integer(2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(p, d)| Rational::new(p, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(p, d)| Rational::new(p, d)),
        ]
    }

    fn arb_ext() -> impl Strategy<Value = ExtRational> {
        prop_oneof![
            4 => arb_rational().prop_map(ExtRational::Finite),
            1 => Just(ExtRational::Infinite),
        ]
    }

    proptest! {
        #[test]
        fn ext_addition_associative(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            let inf = ExtRational::Infinite;
            prop_assert_eq!(&a + &inf, ExtRational::Infinite);
        }

        #[test]
        fn fast_path_matches_bigrational(a in arb_rational(), b in arb_rational()) {
            let (x, y) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &x + &y);
            prop_assert_eq!((&a - &b).to_big(), &x - &y);
            prop_assert_eq!((&a * &b).to_big(), &x * &y);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &x / &y);
            }
            prop_assert_eq!(a.cmp(&b), x.cmp(&y));
            prop_assert_eq!(a.sub_mul(&b, &a).to_big(), &x - &y * &x);
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
