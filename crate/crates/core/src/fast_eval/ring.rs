use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::FastEvalError;

/// Coefficient ring for shift-vector and matrix arithmetic.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, v: &BigInt) -> Self::Elem;
    fn to_bigint(&self, v: &Self::Elem) -> BigInt;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn double(&self, a: &Self::Elem) -> Self::Elem {
        self.add(a, a)
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exact;

impl Ring for Exact {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn embed(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn to_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

/// Integers modulo `m`, canonical residues in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modular {
    modulus: u64,
}

impl Modular {
    pub fn new(modulus: u64) -> Result<Self, FastEvalError> {
        if modulus < 2 {
            return Err(FastEvalError::ModulusTooSmall(modulus));
        }
        Ok(Modular { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for Modular {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn embed(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits in u64")
    }
    fn to_bigint(&self, v: &u64) -> BigInt {
        BigInt::from(*v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
}

/// Wraps a ring and counts every multiplication performed through it.
#[derive(Debug, Default)]
pub struct Counting<R> {
    inner: R,
    muls: AtomicU64,
}

impl<R> Counting<R> {
    pub fn new(inner: R) -> Self {
        Counting { inner, muls: AtomicU64::new(0) }
    }

    pub fn multiplications(&self) -> u64 {
        self.muls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.muls.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }
}

impl<R: Ring> Ring for Counting<R> {
    type Elem = R::Elem;

    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn embed(&self, v: &BigInt) -> Self::Elem {
        self.inner.embed(v)
    }
    fn to_bigint(&self, v: &Self::Elem) -> BigInt {
        self.inner.to_bigint(v)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.sub(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.muls.fetch_add(1, Ordering::Relaxed);
        self.inner.mul(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.inner.neg(a)
    }
}

/// Runtime choice of ring, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Exact,
    Modular(u64),
}

impl RingKind {
    pub fn modular(modulus: u64) -> Result<Self, FastEvalError> {
        Modular::new(modulus).map(|m| RingKind::Modular(m.modulus()))
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Exact => f.write_str("exact"),
            RingKind::Modular(m) => write!(f, "mod {m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_residues_are_canonical() {
        let m = Modular::new(97).unwrap();
        assert_eq!(m.embed(&BigInt::from(-1)), 96);
        assert_eq!(m.embed(&BigInt::from(-194)), 0);
        assert_eq!(m.sub(&3, &5), 95);
        assert_eq!(m.add(&96, &96), 95);
        assert_eq!(m.neg(&0), 0);
        assert_eq!(m.mul(&96, &96), 1);
    }

    #[test]
    fn large_modulus_does_not_overflow() {
        let p = (1u64 << 61) - 1;
        let m = Modular::new(p).unwrap();
        assert_eq!(m.mul(&(p - 1), &(p - 1)), 1);
        assert_eq!(m.add(&(p - 1), &(p - 1)), p - 2);
        let max = Modular::new(u64::MAX).unwrap();
        assert_eq!(max.add(&(u64::MAX - 1), &(u64::MAX - 1)), u64::MAX - 2);
    }

    #[test]
    fn modulus_bounds() {
        assert_eq!(Modular::new(1), Err(FastEvalError::ModulusTooSmall(1)));
        assert!(RingKind::modular(0).is_err());
        assert_eq!(RingKind::modular(2), Ok(RingKind::Modular(2)));
    }

    #[test]
    fn counting_counts_only_multiplications() {
        let ring = Counting::new(Exact);
        let a = BigInt::from(6);
        let b = BigInt::from(7);
        assert_eq!(ring.mul(&a, &b), BigInt::from(42));
        let _ = ring.add(&a, &b);
        let _ = ring.double(&a);
        assert_eq!(ring.multiplications(), 1);
        ring.reset();
        assert_eq!(ring.multiplications(), 0);
    }
}
