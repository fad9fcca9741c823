//! Coefficient rings.
//!
//! Every polynomial and series type in this crate is generic over [`Ring`].
//! The trait is a thin layer over `num-traits` that adds the handful of
//! operations exact arithmetic needs: by-reference products, embedding of
//! integers, exact division by an integer and inversion of units.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        let lhs = std::mem::replace(self, Self::zero());
        *self = lhs + rhs.clone();
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        let lhs = std::mem::replace(self, Self::zero());
        *self = lhs - rhs.clone();
    }

    /// Image of an integer under the unique ring map from Z.
    fn from_integer(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    /// `self / n` when the quotient exists in this ring.
    fn div_integer(&self, n: &BigInt) -> Option<Self>;

    /// Multiplicative inverse of a unit.
    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }
}

impl Ring for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }

    fn div_integer(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(n);
        r.is_zero().then_some(q)
    }

    fn inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
}

impl Ring for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn div_integer(&self, n: &BigInt) -> Option<Self> {
        (!n.is_zero()).then(|| self / BigRational::from_integer(n.clone()))
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Residue class modulo the prime `P`, stored as its least non-negative
/// representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: u64) -> Self {
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn from_integer(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    fn div_integer(&self, n: &BigInt) -> Option<Self> {
        Self::from_integer(n).inverse().map(|inv| *self * inv)
    }

    fn inverse(&self) -> Option<Self> {
        // Fermat; P is assumed prime.
        (!self.is_zero()).then(|| self.pow(P - 2))
    }
}

/// Least non-negative residue of `n` modulo `m`.
pub fn residue(n: &BigInt, m: &BigInt) -> BigInt {
    n.mod_floor(m)
}

/// Residue of `n` modulo `m` chosen in `(-m/2, m/2]`.
pub fn symmetric_residue(n: &BigInt, m: &BigInt) -> BigInt {
    let r = n.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
