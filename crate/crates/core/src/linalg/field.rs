use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::rational::Rational;

/// Scalars the elimination routines run over.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// The Mersenne prime 2^61 - 1.
pub const MODULUS: u64 = (1 << 61) - 1;

/// Element of the prime field of order [`MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModP(u64);

impl ModP {
    pub fn new(v: u64) -> Self {
        ModP(v % MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & MODULUS) + ((hi >> 61) & MODULUS);
        while s >= MODULUS {
            s -= MODULUS;
        }
        s
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModP(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> Self {
        let m = BigInt::from(MODULUS);
        let mut r = n.abs() % &m;
        if n.is_negative() && r != BigInt::from(0) {
            r = &m - r;
        }
        ModP(r.to_u64().expect("residue below modulus"))
    }
}

impl Field for ModP {
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        ModP(if s >= MODULUS { s - MODULUS } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        ModP(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + MODULUS - other.0 })
    }
    fn mul(&self, other: &Self) -> Self {
        ModP(Self::reduce(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        ModP(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(MODULUS - 2)
    }
    fn from_rational(r: &Rational) -> Self {
        let n = Self::from_bigint(&r.numer());
        let d = Self::from_bigint(&r.denom());
        n.mul(&d.inv())
    }
}
