//! Exact scalar fields.
//!
//! A [`Field`] is a small context value (the rationals, or `F_p` for a given
//! prime) that performs arithmetic on its element type. Every matrix and
//! cochain carries its field, so all entries of one computation share a tag.

use alloc::string::{String, ToString};
use core::fmt;
use core::hash::Hash;

use crate::error::Error;
use crate::rational::Rational;

/// Identifies which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => f.write_str("Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem, Error>;
    /// Canonical string form: `"p/q"` (reduced, `/1` omitted) over Q, the
    /// residue in `[0, p)` over `F_p`.
    fn format(&self, a: &Self::Elem) -> String;

    fn characteristic(&self) -> u64 {
        match self.tag() {
            FieldTag::Rationals => 0,
            FieldTag::Prime(p) => p,
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        if self.is_zero(b) || self.is_zero(c) {
            return;
        }
        *a = self.add(a, &self.mul(b, c));
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        if self.is_zero(b) || self.is_zero(c) {
            return;
        }
        *a = self.sub(a, &self.mul(b, c));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::ONE
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n)
    }
    fn parse(&self, s: &str) -> Result<Rational, Error> {
        s.parse().map_err(|_| Error::Parse(alloc::format!("{s:?} is not a rational number")))
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
}

/// The prime field `F_p`; residues are kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Largest supported modulus; products of two residues must fit in `u64`.
    pub const MAX_MODULUS: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self, Error> {
        if p > Self::MAX_MODULUS {
            return Err(Error::InvalidModulus(p, "modulus too large"));
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p, "modulus not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn parse(&self, s: &str) -> Result<u64, Error> {
        // Any rational whose denominator is a unit mod p is accepted.
        let q: Rational =
            s.parse().map_err(|_| Error::Parse(alloc::format!("{s:?} is not a residue mod {}", self.p)))?;
        let reduce = |b: num_bigint::BigInt| -> u64 {
            let p = num_bigint::BigInt::from(self.p);
            let r = ((b % &p) + &p) % &p;
            num_traits::ToPrimitive::to_u64(&r).unwrap_or(0)
        };
        let n = reduce(q.numer());
        let d = reduce(q.denom());
        self.div(&n, &d).ok_or_else(|| Error::Parse(alloc::format!("{s:?} has a denominator divisible by {}", self.p)))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}
