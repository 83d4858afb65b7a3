//! Coefficient rings: ℤ, ℚ and prime fields 𝔽_p.
//!
//! Complexes and chain maps are stored with integer entries (every map built
//! here is integral); a [`RingSpec`] says how those entries are read. The
//! [`EuclideanRing`] trait drives the reduction and Smith normal form code,
//! which is written once for all three rings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingParseError {
    #[error("unknown ring {0:?} (expected z, q or f<p>)")]
    Unknown(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self, RingParseError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(RingSpec::PrimeField(p))
        } else {
            Err(RingParseError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            RingSpec::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Canonical representative of an integer in this ring's reading.
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            RingSpec::PrimeField(p) => x.rem_euclid(p as i64),
            _ => x,
        }
    }

    /// Parses a comma-separated list such as `q,f2,z`.
    pub fn parse_list(s: &str) -> Result<Vec<RingSpec>, RingParseError> {
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl FromStr for RingSpec {
    type Err = RingParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(RingSpec::Integers),
            "q" => Ok(RingSpec::Rationals),
            t if t.starts_with('f') => {
                let p: u64 = t[1..].parse().map_err(|_| RingParseError::Unknown(s.into()))?;
                RingSpec::prime_field(p)
            }
            _ => Err(RingParseError::Unknown(s.into())),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

pub(crate) fn add_i64(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in exact arithmetic")
}

pub(crate) fn mul_i64(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in exact arithmetic")
}

/// A Euclidean domain with explicit elements. Fields are Euclidean with
/// zero remainders.
pub trait EuclideanRing: Sync + Send {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, x: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn unit_inverse(&self, a: &Self::E) -> Self::E;
    /// Quotient and remainder with `norm(r) < norm(b)`.
    fn div_rem(&self, a: &Self::E, b: &Self::E) -> (Self::E, Self::E);
    /// Euclidean norm used for pivot choice.
    fn norm(&self, a: &Self::E) -> u128;
    /// Unit multiple of `a` chosen as canonical (nonnegative over ℤ).
    fn associate_unit(&self, a: &Self::E) -> Self::E;
    fn render(&self, a: &Self::E) -> String;
    /// Integer value, when the element is (or reads as) one.
    fn to_i64(&self, a: &Self::E) -> Option<i64>;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    /// Exact rational reading of an element (residues read as 0..p).
    fn to_rational(&self, a: &Self::E) -> BigRational {
        BigRational::from_integer(self.to_i64(a).expect("element is not an integer").into())
    }

    fn divides(&self, a: &Self::E, b: &Self::E) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl EuclideanRing for Integers {
    type E = i64;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn from_i64(&self, x: i64) -> i64 {
        x
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        add_i64(*a, *b)
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        mul_i64(*a, *b)
    }
    fn neg(&self, a: &i64) -> i64 {
        a.checked_neg().expect("integer overflow in exact arithmetic")
    }
    fn is_unit(&self, a: &i64) -> bool {
        a.abs() == 1
    }
    fn unit_inverse(&self, a: &i64) -> i64 {
        debug_assert!(self.is_unit(a));
        *a
    }
    fn div_rem(&self, a: &i64, b: &i64) -> (i64, i64) {
        // rounded division keeps |r| <= |b|/2
        let q = a.div_euclid(*b);
        let r = a.rem_euclid(*b);
        if 2 * r > b.abs() {
            (if *b > 0 { q + 1 } else { q - 1 }, r - b.abs())
        } else {
            (q, r)
        }
    }
    fn norm(&self, a: &i64) -> u128 {
        a.unsigned_abs() as u128
    }
    fn associate_unit(&self, a: &i64) -> i64 {
        if *a < 0 {
            -1
        } else {
            1
        }
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
    fn to_i64(&self, a: &i64) -> Option<i64> {
        Some(*a)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl EuclideanRing for Rationals {
    type E = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn unit_inverse(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn norm(&self, a: &BigRational) -> u128 {
        // prefer small integers as pivots to keep fractions tame
        if a.is_zero() {
            0
        } else if a.is_integer() && a.abs() == BigRational::one() {
            1
        } else {
            2
        }
    }
    fn associate_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn to_i64(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            i64::try_from(a.to_integer()).ok()
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let p = self.p as u128;
        let mut r: u128 = 1;
        let mut x = b as u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * x % p;
            }
            x = x * x % p;
            e >>= 1;
        }
        b = r as u64;
        b
    }
}

impl EuclideanRing for PrimeField {
    type E = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn unit_inverse(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.unit_inverse(b)), 0)
    }
    fn norm(&self, a: &u64) -> u128 {
        (*a != 0) as u128
    }
    fn associate_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.unit_inverse(a)
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_i64(&self, a: &u64) -> Option<i64> {
        Some(*a as i64)
    }
}

/// Runs `$body` with `$r` bound to the concrete ring selected by `$spec`.
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, $r:ident => $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                let $r = $crate::ring::Integers;
                $body
            }
            $crate::ring::RingSpec::Rationals => {
                let $r = $crate::ring::Rationals;
                $body
            }
            $crate::ring::RingSpec::PrimeField(p) => {
                let $r = $crate::ring::PrimeField { p };
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ring_selectors() {
        assert_eq!("z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rationals);
        assert_eq!("f2".parse::<RingSpec>().unwrap(), RingSpec::PrimeField(2));
        assert_eq!(RingSpec::parse_list("q,f2").unwrap().len(), 2);
        assert!(matches!("f4".parse::<RingSpec>(), Err(RingParseError::NotPrime(4))));
        assert!("r".parse::<RingSpec>().is_err());
    }

    #[test]
    fn integer_division_is_euclidean() {
        let z = Integers;
        for a in -20i64..20 {
            for b in [-7i64, -3, -1, 1, 2, 5] {
                let (q, r) = z.div_rem(&a, &b);
                assert_eq!(q * b + r, a);
                assert!(r.abs() < b.abs());
            }
        }
    }

    #[test]
    fn field_inverses() {
        let f = PrimeField { p: 7 };
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.unit_inverse(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_detected() {
        Integers.mul(&i64::MAX, &2);
    }
}
