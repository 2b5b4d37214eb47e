//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A field with exact arithmetic.
pub trait Field: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Parses `"p"` or `"p/q"`.
    fn parse(s: &str) -> Result<Self, ScalarError>;
    /// Exact text form, `"p"` or `"p/q"`.
    fn render(&self) -> String;
    fn field_name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        o.inv().map(|i| self.mul(&i)).ok_or(ScalarError::DivisionByZero)
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }
}

/// Rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 += &a.0 * &b.0;
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        match t.split_once('/') {
            None => t.parse::<BigInt>().map(|n| Q(BigRational::from_integer(n))).map_err(|_| err()),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err())?;
                let q: BigInt = q.trim().parse().map_err(|_| err())?;
                if q.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Q(BigRational::new(p, q)))
            }
        }
    }
    fn render(&self) -> String {
        self.0.to_string()
    }
    fn field_name() -> String {
        "Q".to_string()
    }
}

/// The prime field `F_P`. `P` must be a prime below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u32>(pub u32);

impl<const P: u32> Fp<P> {
    fn reduce(v: i128) -> Self {
        Fp(v.rem_euclid(P as i128) as u32)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64 % P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Self::reduce(v as i128)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - o.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
    fn parse(s: &str) -> Result<Self, ScalarError> {
        let q = Q::parse(s)?;
        let modp = |n: &BigInt| -> Self {
            let r = n.mod_floor(&BigInt::from(P));
            Fp(r.to_u32().unwrap_or(0))
        };
        let num = modp(q.0.numer());
        let den = modp(q.0.denom());
        num.div(&den)
    }
    fn render(&self) -> String {
        self.0.to_string()
    }
    fn field_name() -> String {
        format!("F{}", P)
    }
}

/// Primes accepted for `F_p` at runtime.
pub const SUPPORTED_PRIMES: &[u32] = &[2, 3, 5, 7, 11, 13, 101, 65521, 1_000_003, 2_147_483_647];

/// Integer value of a rational, if it is one and fits.
pub fn q_as_i64(q: &Q) -> Option<i64> {
    if q.0.is_integer() {
        q.0.numer().to_i64()
    } else {
        None
    }
}

/// Sign of a rational, handy for deterministic choices.
pub fn q_is_negative(q: &Q) -> bool {
    q.0.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Q::new(1, 3);
        let b = Q::new(1, 6);
        assert_eq!(a.add(&b), Q::new(1, 2));
        assert_eq!(a.mul(&b).render(), "1/18");
        assert_eq!(Q::zero().inv(), None);
        assert_eq!(a.div(&Q::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn rational_parse_round_trip() {
        for s in ["0", "-3", "7/2", "-5/9"] {
            assert_eq!(Q::parse(s).unwrap().render(), s);
        }
        assert_eq!(Q::parse("4/6").unwrap().render(), "2/3");
        assert!(Q::parse("x").is_err());
        assert_eq!(Q::parse("1/0"), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn prime_field_reduces() {
        type F7 = Fp<7>;
        assert_eq!(F7::from_i64(-1), Fp(6));
        assert_eq!(F7::from_i64(3).mul(&F7::from_i64(5)), Fp(1));
        assert_eq!(F7::from_i64(3).inv(), Some(Fp(5)));
        assert_eq!(F7::parse("1/2").unwrap(), Fp(4));
        assert!(F7::parse("1/7").is_err());
        let big = Fp::<2_147_483_647>::from_i64(2_147_483_646);
        assert_eq!(big.mul(&big), Fp(1));
    }
}
