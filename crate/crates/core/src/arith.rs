//! Arbitrary-precision integers and canonical rationals.
//!
//! `Int` wraps `num_bigint::BigInt`; `Rat` is our own canonical fraction so
//! that the invariants (`den > 0`, `gcd(|num|, den) = 1`) are enforced here and
//! not inherited from a backend. Rationals compare by cross-multiplication.

use crate::error::{AlgebraError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.value() * rhs.value() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Exact signed integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Int(BigInt);

impl Int {
    pub fn zero() -> Int {
        Int(BigInt::zero())
    }

    pub fn one() -> Int {
        Int(BigInt::one())
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_ordering(self.0.sign().cmp(&num_bigint::Sign::NoSign))
    }

    pub fn abs(&self) -> Int {
        Int(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Int {
        Int(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn gcd(&self, other: &Int) -> Int {
        int_gcd(self, other)
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::zero();
        }
        Int(self.0.lcm(&other.0))
    }

    /// `true` iff `self` divides `other` (zero divides only zero).
    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        (&other.0 % &self.0).is_zero()
    }

    /// Division that must be exact.
    pub fn exact_div(&self, divisor: &Int) -> Result<Int> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible {
                remainder_degree: 0,
            });
        }
        Ok(Int(q))
    }

    /// Truncated quotient and remainder.
    pub fn div_rem(&self, divisor: &Int) -> (Int, Int) {
        let (q, r) = self.0.div_rem(&divisor.0);
        (Int(q), Int(r))
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    /// Number of bits in the magnitude.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Positive divisors of `|self|` by trial division. Intended for the small
    /// leading/trailing coefficients met in rational-root tests.
    pub fn positive_divisors(&self) -> Vec<Int> {
        let mut n = self.0.abs();
        if n.is_zero() {
            return Vec::new();
        }
        let mut factors: Vec<(BigInt, u32)> = Vec::new();
        let mut p = BigInt::from(2u32);
        while &p * &p <= n {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            if e > 0 {
                factors.push((p.clone(), e));
            }
            p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
        }
        if !n.is_one() {
            factors.push((n, 1));
        }
        let mut divisors = vec![BigInt::one()];
        for (prime, e) in factors {
            let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
            for d in &divisors {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..e {
                    acc *= &prime;
                    next.push(acc.clone());
                }
            }
            divisors = next;
        }
        divisors.sort();
        divisors.into_iter().map(Int).collect()
    }
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn int_gcd(a: &Int, b: &Int) -> Int {
    Int(a.0.gcd(&b.0))
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int(v)
    }
}

macro_rules! int_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int {
                Int(BigInt::from(v))
            }
        }
    )*};
}
int_from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, u128, usize, isize);

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Int {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Int> {
        let t = s.trim();
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(AlgebraError::Parse(format!("not an integer: {s:?}")));
        }
        BigInt::from_str(t)
            .map(Int)
            .map_err(|e| AlgebraError::Parse(format!("{s:?}: {e}")))
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

macro_rules! forward_assign {
    ($ty:ident, $tr:ident, $m:ident, $op:tt) => {
        impl $tr<$ty> for $ty {
            fn $m(&mut self, rhs: $ty) {
                *self = &*self $op &rhs;
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            fn $m(&mut self, rhs: &'a $ty) {
                *self = &*self $op rhs;
            }
        }
    };
}

impl<'b> Add<&'b Int> for &Int {
    type Output = Int;
    fn add(self, rhs: &'b Int) -> Int {
        Int(&self.0 + &rhs.0)
    }
}

impl<'b> Sub<&'b Int> for &Int {
    type Output = Int;
    fn sub(self, rhs: &'b Int) -> Int {
        Int(&self.0 - &rhs.0)
    }
}

impl<'b> Mul<&'b Int> for &Int {
    type Output = Int;
    fn mul(self, rhs: &'b Int) -> Int {
        Int(&self.0 * &rhs.0)
    }
}

forward_binop!(Int, Add, add);
forward_binop!(Int, Sub, sub);
forward_binop!(Int, Mul, mul);

// In-place variants avoid a reallocation in the hot determinant loops.
impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        self.0 += &rhs.0;
    }
}
impl AddAssign<Int> for Int {
    fn add_assign(&mut self, rhs: Int) {
        self.0 += rhs.0;
    }
}
impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        self.0 -= &rhs.0;
    }
}
impl SubAssign<Int> for Int {
    fn sub_assign(&mut self, rhs: Int) {
        self.0 -= rhs.0;
    }
}
impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        self.0 *= &rhs.0;
    }
}
impl MulAssign<Int> for Int {
    fn mul_assign(&mut self, rhs: Int) {
        self.0 *= rhs.0;
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        Int(-self.0)
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        Int(-&self.0)
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Int {
    fn one() -> Int {
        Int::one()
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::zero(), |acc, x| acc + x)
    }
}

impl Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::one(), |acc, x| acc * x)
    }
}

/// Exact rational in canonical form: `den > 0`, `gcd(|num|, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    /// Canonicalize `num/den`.
    pub fn new(num: Int, den: Int) -> Result<Rat> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Rat::zero());
        }
        let g = int_gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (Int(&num.0 / &g.0), Int(&den.0 / &g.0))
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(Rat { num: n, den: d })
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::new(Int::from(num), Int::from(den)).expect("nonzero denominator")
    }

    pub fn zero() -> Rat {
        Rat {
            num: Int::zero(),
            den: Int::one(),
        }
    }

    pub fn one() -> Rat {
        Rat::from(Int::one())
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn sign(&self) -> Sign {
        self.num.sign()
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Rat> {
        Rat::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Rat::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Rat {
        // Powers of a canonical fraction stay canonical.
        Rat {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer value, if the rational is integral.
    pub fn to_int(&self) -> Option<Int> {
        self.is_integer().then(|| self.num.clone())
    }

    /// Midpoint `(self + other) / 2`.
    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other) * Rat::frac(1, 2)
    }

    fn from_parts_unchecked(num: Int, den: Int) -> Rat {
        Rat::new(num, den).expect("denominator is a product of nonzero denominators")
    }
}

/// Canonical rational `num/den`.
pub fn rat_canonical(num: Int, den: Int) -> Result<Rat> {
    Rat::new(num, den)
}

pub fn rat_sign(x: &Rat) -> Sign {
    x.sign()
}

impl From<Int> for Rat {
    fn from(v: Int) -> Rat {
        Rat {
            num: v,
            den: Int::one(),
        }
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::from(Int::from(v))
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::zero()
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Rat> {
        match s.split_once('/') {
            None => Ok(Rat::from(s.parse::<Int>()?)),
            Some((n, d)) => {
                let d = d.trim();
                if d.starts_with(['-', '+']) {
                    return Err(AlgebraError::Parse(format!("signed denominator in {s:?}")));
                }
                Rat::new(n.parse()?, d.parse()?)
            }
        }
    }
}

impl<'b> Add<&'b Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &'b Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::from_parts_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        Rat::from_parts_unchecked(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'b> Sub<&'b Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &'b Rat) -> Rat {
        self + &(-rhs)
    }
}

impl<'b> Mul<&'b Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &'b Rat) -> Rat {
        if self.den.is_one() && rhs.den.is_one() {
            return Rat::from(&self.num * &rhs.num);
        }
        Rat::from_parts_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like the primitive types.
impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

forward_binop!(Rat, Add, add);
forward_binop!(Rat, Sub, sub);
forward_binop!(Rat, Mul, mul);
forward_binop!(Rat, Div, div);
forward_assign!(Rat, AddAssign, add_assign, +);
forward_assign!(Rat, SubAssign, sub_assign, -);
forward_assign!(Rat, MulAssign, mul_assign, *);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat::one()
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(int_gcd(&int(0), &int(0)), int(0));
        assert_eq!(int_gcd(&int(2097152), &int(103680000)), int(2048));
        assert_eq!(int_gcd(&int(-86), &int(-6250)), int(2));
        assert_eq!(int_gcd(&int(-12), &int(0)), int(12));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(rat_canonical(int(2), int(-4)).unwrap().to_string(), "-1/2");
        assert_eq!(
            rat_canonical(int(159), int(5)).unwrap().to_string(),
            "159/5"
        );
        let z = rat_canonical(int(0), int(7)).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (int(0), int(1)));
        assert_eq!(
            rat_canonical(int(1), int(0)),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(rat_sign(&Rat::frac(-1, 2)).value(), -1);
        assert_eq!(rat_sign(&Rat::zero()).value(), 0);
        assert_eq!(rat_sign(&Rat::frac(31, 1000)).value(), 1);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("-6250".parse::<Int>().unwrap(), int(-6250));
        assert_eq!("159/5".parse::<Rat>().unwrap(), Rat::frac(159, 5));
        assert!("6/-4".parse::<Rat>().is_err());
        assert_eq!("-6/4".parse::<Rat>().unwrap().to_string(), "-3/2");
        assert!("1.5".parse::<Rat>().is_err());
        assert!("".parse::<Int>().is_err());
        assert!("12a".parse::<Int>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn ordering_is_exact() {
        let a = Rat::frac(31, 1000);
        let b = Rat::frac(32, 1000);
        assert!(a < b);
        assert!(Rat::frac(-1, 3) < Rat::frac(-1, 4));
        assert_eq!(Rat::frac(2, 4).cmp(&Rat::frac(1, 2)), Ordering::Equal);
        assert_eq!(Rat::frac(1, 2).midpoint(&Rat::frac(1, 3)), Rat::frac(5, 12));
    }

    #[test]
    fn divisors() {
        let ds = int(-12).positive_divisors();
        assert_eq!(ds, [1, 2, 3, 4, 6, 12].map(int).to_vec());
        assert_eq!(int(2097152).positive_divisors().len(), 22);
        assert_eq!(int(103680000).positive_divisors().len(), 300);
        assert!(int(0).positive_divisors().is_empty());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000,
                       d in 1i64..50, e in 1i64..50, f in 1i64..50) {
            let (x, y, z) = (Rat::frac(a, d), Rat::frac(b, e), Rat::frac(c, f));
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            let (i, j, k) = (int(a), int(b), int(c));
            prop_assert_eq!((&i + &j) + &k, &i + (&j + &k));
            prop_assert_eq!(&i * (&j + &k), &i * &j + &i * &k);
        }

        #[test]
        fn canonical_scale_invariant(n in -500i64..500, d in -500i64..500, k in -50i64..50) {
            prop_assume!(d != 0 && k != 0);
            prop_assert_eq!(
                rat_canonical(int(k * n), int(k * d)).unwrap(),
                rat_canonical(int(n), int(d)).unwrap()
            );
        }

        #[test]
        fn gcd_times_lcm(a in -100000i64..100000, b in -100000i64..100000) {
            prop_assume!(a != 0 && b != 0);
            let (x, y) = (int(a), int(b));
            prop_assert_eq!(int_gcd(&x, &y) * x.lcm(&y), (&x * &y).abs());
        }

        #[test]
        fn order_matches_floats(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let lhs = Rat::frac(a, b).cmp(&Rat::frac(c, d));
            prop_assert_eq!(lhs, (a * d).cmp(&(c * b)));
        }
    }
}
