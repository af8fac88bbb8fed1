//! Sequence specifications and exact bidirectional term evaluation.
//!
//! Every sequence handled here satisfies the order-`n` recurrence
//! `W_r = W_{r-1} + ... + W_{r-n}` for all integers `r`, which is equivalent
//! to the three-term form `W_r = 2 W_{r-1} - W_{r-n-1}`. A sequence is fixed
//! by any block of `n` consecutive terms (its seed block).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::SequenceError;

/// Which member of the n-step family a [`SequenceSpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// n-step Fibonacci numbers: seeds `U_{-n+1} = 1`, `U_k = 0` for `-n+2 <= k <= 0`.
    U,
    /// n-step Lucas numbers: seeds `V_k = -1` for `-n+1 <= k <= -1`, `V_0 = n`.
    V,
    /// Generalized n-step numbers with arbitrary `W_0, ..., W_{n-1}`.
    W,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::U => "U",
            Family::V => "V",
            Family::W => "W",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" | "u" => Ok(Family::U),
            "V" | "v" => Ok(Family::V),
            "W" | "w" => Ok(Family::W),
            other => Err(SequenceError::UnknownFamily(other.to_string())),
        }
    }
}

/// Identifies one concrete sequence: family, order and (for `W`) its seeds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    family: Family,
    order: usize,
    seeds: Vec<BigInt>,
}

impl SequenceSpec {
    /// Builds a spec. `seeds` must be given exactly when `family` is `W`,
    /// with one entry per tap, interpreted as `W_0, ..., W_{n-1}`.
    pub fn new(family: Family, order: usize, seeds: Option<Vec<BigInt>>) -> Result<Self, SequenceError> {
        if order < 2 {
            return Err(SequenceError::OrderTooSmall(order));
        }
        let seeds = match (family, seeds) {
            (Family::W, Some(seeds)) if seeds.len() == order => seeds,
            (Family::W, Some(seeds)) => {
                return Err(SequenceError::SeedArityMismatch { expected: order, got: seeds.len() })
            }
            (Family::W, None) => return Err(SequenceError::SeedArityMismatch { expected: order, got: 0 }),
            (_, Some(seeds)) => return Err(SequenceError::SeedArityMismatch { expected: 0, got: seeds.len() }),
            (_, None) => Vec::new(),
        };
        Ok(SequenceSpec { family, order, seeds })
    }

    pub fn fibonacci(order: usize) -> Result<Self, SequenceError> {
        Self::new(Family::U, order, None)
    }

    pub fn lucas(order: usize) -> Result<Self, SequenceError> {
        Self::new(Family::V, order, None)
    }

    pub fn generalized<I, T>(seeds: I) -> Result<Self, SequenceError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let seeds: Vec<BigInt> = seeds.into_iter().map(Into::into).collect();
        Self::new(Family::W, seeds.len(), Some(seeds))
    }

    /// The all-zero sequence of the given order.
    pub fn zero(order: usize) -> Result<Self, SequenceError> {
        Self::new(Family::W, order, Some(vec![BigInt::zero(); order]))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Seeds as given for family `W`; empty for `U` and `V`.
    pub fn seeds(&self) -> &[BigInt] {
        &self.seeds
    }

    /// Lowest index of the seed block.
    pub fn seed_base(&self) -> i64 {
        match self.family {
            Family::U | Family::V => 1 - self.order as i64,
            Family::W => 0,
        }
    }

    /// The `n` seed values at indices `seed_base()..seed_base()+n`, ascending.
    pub fn seed_block(&self) -> Vec<BigInt> {
        let n = self.order;
        match self.family {
            Family::U => {
                let mut block = vec![BigInt::zero(); n];
                block[0] = BigInt::one();
                block
            }
            Family::V => {
                let mut block = vec![-BigInt::one(); n];
                block[n - 1] = BigInt::from(n);
                block
            }
            Family::W => self.seeds.clone(),
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::W => {
                write!(f, "W(n={}; ", self.order)?;
                for (i, s) in self.seeds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
            fam => write!(f, "{fam}(n={})", self.order),
        }
    }
}

/// Memo of exact terms for one sequence, grown incrementally in both
/// directions from the seed block.
///
/// `forward[i]` holds the term at `base + i`; `backward[i]` holds the term at
/// `base - 1 - i`. Reads of materialized indices go through [`TermCache::get`]
/// and need only shared access; growing the cache needs `&mut self`.
#[derive(Clone, Debug)]
pub struct TermCache {
    spec: SequenceSpec,
    base: i64,
    forward: Vec<BigInt>,
    backward: Vec<BigInt>,
}

impl TermCache {
    pub fn new(spec: SequenceSpec) -> Self {
        let base = spec.seed_base();
        let forward = spec.seed_block();
        TermCache { spec, base, forward, backward: Vec::new() }
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.spec.order
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Inclusive range of materialized indices.
    pub fn cached_range(&self) -> (i64, i64) {
        (self.base - self.backward.len() as i64, self.base + self.forward.len() as i64 - 1)
    }

    /// Returns the term at `r` if it is already materialized.
    pub fn get(&self, r: i64) -> Option<&BigInt> {
        if r >= self.base {
            self.forward.get((r - self.base) as usize)
        } else {
            self.backward.get((self.base - 1 - r) as usize)
        }
    }

    /// Exact term at any integer index, extending the memo as needed.
    pub fn term(&mut self, r: i64) -> &BigInt {
        self.ensure(r, r);
        self.get(r).expect("index materialized by ensure")
    }

    /// Owned copy of the term at `r`.
    pub fn value(&mut self, r: i64) -> BigInt {
        self.term(r).clone()
    }

    /// Materializes every index in `lo..=hi`.
    pub fn ensure(&mut self, lo: i64, hi: i64) {
        let n = self.spec.order;
        while self.base + (self.forward.len() as i64) <= hi {
            self.push_forward();
        }
        if lo < self.base {
            // backward steps read the term just above the seed block
            while self.forward.len() < n + 1 {
                self.push_forward();
            }
            while self.base - 1 - (self.backward.len() as i64) >= lo {
                self.push_backward();
            }
        }
    }

    fn push_forward(&mut self) {
        let n = self.spec.order;
        let len = self.forward.len();
        let next = if len > n {
            // W_r = 2 W_{r-1} - W_{r-n-1}
            (&self.forward[len - 1] << 1u32) - &self.forward[len - n - 1]
        } else {
            // W_r = W_{r-1} + ... + W_{r-n}
            let top = self.base + len as i64;
            (1..=n as i64).map(|i| self.at(top - i).clone()).sum()
        };
        self.forward.push(next);
    }

    fn push_backward(&mut self) {
        let n = self.spec.order as i64;
        let m = self.base - 1 - self.backward.len() as i64;
        // W_m = 2 W_{m+n} - W_{m+n+1}
        let next = (self.at(m + n) << 1u32) - self.at(m + n + 1);
        self.backward.push(next);
    }

    fn at(&self, r: i64) -> &BigInt {
        self.get(r).expect("recurrence neighbour materialized")
    }

    /// The `n` predecessors of index `r`.
    pub fn window(&mut self, r: i64) -> Window {
        let n = self.spec.order as i64;
        self.ensure(r - n, r - 1);
        let terms = (1..=n).map(|i| self.at(r - i).clone()).collect();
        Window { spec: self.spec.clone(), top: r, terms }
    }
}

/// The `n` consecutive terms `(W_{r-1}, W_{r-2}, ..., W_{r-n})` below `top = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    spec: SequenceSpec,
    top: i64,
    terms: Vec<BigInt>,
}

impl Window {
    /// Window whose terms are the seed block, read from the top down.
    pub fn seed(spec: &SequenceSpec) -> Self {
        let mut terms = spec.seed_block();
        terms.reverse();
        Window { spec: spec.clone(), top: spec.seed_base() + spec.order as i64, terms }
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `terms()[i - 1]` is the term at `top - i`.
    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn row(spec: SequenceSpec, lo: i64, hi: i64) -> Vec<i64> {
        let mut cache = TermCache::new(spec);
        (lo..=hi).map(|r| i64::try_from(cache.value(r)).unwrap()).collect()
    }

    #[test]
    fn seed_blocks() {
        let u3 = SequenceSpec::fibonacci(3).unwrap();
        assert_eq!(u3.seed_base(), -2);
        assert_eq!(u3.seed_block(), vec![big(1), big(0), big(0)]);

        let v5 = SequenceSpec::lucas(5).unwrap();
        assert_eq!(v5.seed_block(), vec![big(-1), big(-1), big(-1), big(-1), big(5)]);

        let w = SequenceSpec::generalized([0, 1]).unwrap();
        assert_eq!(w.seed_base(), 0);
        assert_eq!(w.seed_block(), vec![big(0), big(1)]);
    }

    #[test]
    fn spec_errors() {
        assert_eq!(SequenceSpec::new(Family::U, 1, None), Err(SequenceError::OrderTooSmall(1)));
        assert!(matches!(
            SequenceSpec::new(Family::W, 3, Some(vec![big(1)])),
            Err(SequenceError::SeedArityMismatch { expected: 3, got: 1 })
        ));
        assert!(matches!(
            SequenceSpec::new(Family::V, 3, Some(vec![big(1); 3])),
            Err(SequenceError::SeedArityMismatch { .. })
        ));
        assert!(SequenceSpec::new(Family::W, 2, None).is_err());
        assert!("X".parse::<Family>().is_err());
    }

    #[test]
    fn table_rows() {
        let fib = row(SequenceSpec::fibonacci(2).unwrap(), -4, 10);
        assert_eq!(fib, vec![-3, 2, -1, 1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        let trib = row(SequenceSpec::fibonacci(3).unwrap(), -4, 10);
        assert_eq!(trib, vec![0, -1, 1, 0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149]);
        let tetra_lucas = row(SequenceSpec::lucas(4).unwrap(), -4, 10);
        assert_eq!(tetra_lucas, vec![7, -1, -1, -1, 4, 1, 3, 7, 15, 26, 51, 99, 191, 367, 708]);
    }

    #[test]
    fn named_terms() {
        let mut t = TermCache::new(SequenceSpec::fibonacci(3).unwrap());
        assert_eq!(t.value(10), big(149));
        assert_eq!(t.value(-1), big(0));
        assert_eq!(t.value(-18), big(-103));
        assert_eq!(t.value(-17), big(0));
        assert_eq!(t.value(-19), big(159));

        let mut f = TermCache::new(SequenceSpec::fibonacci(2).unwrap());
        assert_eq!(f.value(-1), big(1));

        let mut r = TermCache::new(SequenceSpec::lucas(4).unwrap());
        assert_eq!(r.value(-4), big(7));

        let mut s = TermCache::new(SequenceSpec::fibonacci(6).unwrap());
        assert_eq!(s.value(8), big(63));
    }

    #[test]
    fn backward_before_forward() {
        // first request far below the seed block
        let mut k = TermCache::new(SequenceSpec::lucas(3).unwrap());
        assert_eq!(k.value(-4), big(-5));
        assert_eq!(k.value(-3), big(5));
        assert_eq!(k.cached_range().0, -4);
    }

    #[test]
    fn windows() {
        let mut t = TermCache::new(SequenceSpec::fibonacci(3).unwrap());
        assert_eq!(t.window(11).terms(), &[big(149), big(81), big(44)]);
        let mut f = TermCache::new(SequenceSpec::fibonacci(2).unwrap());
        assert_eq!(f.window(1).terms(), &[big(0), big(1)]);
        let w = SequenceSpec::generalized([5, 7]).unwrap();
        let mut c = TermCache::new(w.clone());
        assert_eq!(c.window(2).terms(), &[big(7), big(5)]);
        assert_eq!(Window::seed(&w), c.window(2));
        let u4 = SequenceSpec::fibonacci(4).unwrap();
        assert_eq!(Window::seed(&u4), TermCache::new(u4).window(1));
    }

    #[test]
    fn zero_sequence_stays_zero() {
        let mut z = TermCache::new(SequenceSpec::zero(4).unwrap());
        for r in -30..30 {
            assert!(z.term(r).is_zero());
        }
    }
}
