//! Generic summation lemmas for sequences obeying a short linear relation.
//!
//! Each engine returns both sides of one identity instance so callers can
//! compare them exactly. Specific identities in the registry are instances of
//! these engines with particular coefficients and offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CatalogError;
use crate::sequence::TermCache;

/// `X_r = sum_t coeffs[t] * X_{r - offsets[t]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    coeffs: Vec<BigRational>,
    offsets: Vec<i64>,
}

impl LinearRelation {
    pub fn new(coeffs: Vec<BigRational>, offsets: Vec<i64>) -> Result<Self, CatalogError> {
        if coeffs.len() != offsets.len() || coeffs.is_empty() {
            return Err(CatalogError::InvalidRelation("coefficient and offset counts differ".into()));
        }
        if coeffs.iter().any(Zero::is_zero) {
            return Err(CatalogError::InvalidRelation("coefficients must be nonzero".into()));
        }
        if offsets.contains(&0) {
            return Err(CatalogError::InvalidRelation("offsets must be nonzero".into()));
        }
        let mut sorted = offsets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != offsets.len() {
            return Err(CatalogError::InvalidRelation("offsets must be distinct".into()));
        }
        Ok(LinearRelation { coeffs, offsets })
    }

    /// Relation with integer coefficients.
    pub fn integer(coeffs: &[i64], offsets: &[i64]) -> Result<Self, CatalogError> {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), offsets.to_vec())
    }

    pub fn taps(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// Checks the relation at index `r` against `x`.
    pub fn holds_at(&self, x: &mut impl FnMut(i64) -> BigRational, r: i64) -> bool {
        let rhs: BigRational = self.coeffs.iter().zip(&self.offsets).map(|(f, &c)| f * x(r - c)).sum();
        x(r) == rhs
    }

    fn expect_taps(&self, m: usize) -> Result<(), CatalogError> {
        if self.taps() != m {
            return Err(CatalogError::RelationArity { expected: m, got: self.taps() });
        }
        Ok(())
    }
}

/// Integer power of a rational; negative exponents invert.
pub fn qpow(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Row `k` of Pascal's triangle.
pub fn binomial_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k as usize {
        let next = &row[i] * BigInt::from(k as usize - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// `Z_r = sum_{j=1..ceil(n/2)} W_{r-2j+1}`, the sum of every other predecessor.
pub fn z_sum(cache: &mut TermCache, r: i64) -> BigInt {
    let n = cache.order() as i64;
    z_sum_with(n, |i| cache.value(i), r)
}

/// [`z_sum`] over any term source of order `n`.
pub fn z_sum_with(n: i64, mut term: impl FnMut(i64) -> BigInt, r: i64) -> BigInt {
    (1..=(n + 1) / 2).map(|j| term(r - 2 * j + 1)).sum()
}

pub type Sides = (BigRational, BigRational);

/// Geometric-weight sums for a two-tap relation `X_r = f1 X_{r-a} + f2 X_{r-b}`.
///
/// `variant` 1 steps by `a`, 2 steps by `b`, 3 steps by `a - b`.
pub fn lemma_three_term(
    relation: &LinearRelation,
    variant: u8,
    x: &mut impl FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> Result<Sides, CatalogError> {
    relation.expect_taps(2)?;
    let (f1, f2) = (&relation.coeffs[0], &relation.coeffs[1]);
    let (a, b) = (relation.offsets[0], relation.offsets[1]);
    let k = k as i64;
    match variant {
        1 => {
            let sum: BigRational = (0..=k).map(|j| x(r - k * a - b + a * j) * qpow(f1, -j)).sum();
            Ok((f2 * sum, x(r) * qpow(f1, -k) - f1 * x(r - (k + 1) * a)))
        }
        2 => {
            let sum: BigRational = (0..=k).map(|j| x(r - k * b - a + b * j) * qpow(f2, -j)).sum();
            Ok((f1 * sum, x(r) * qpow(f2, -k) - f2 * x(r - (k + 1) * b)))
        }
        3 => {
            let q = -(f1 / f2);
            let d = a - b;
            let sum: BigRational = (0..=k).map(|j| x(r - d * k + b + d * j) * qpow(&q, -j)).sum();
            Ok((sum, f2 * x(r) * qpow(&q, -k) + f1 * x(r - (k + 1) * d)))
        }
        v => Err(CatalogError::VariantOutOfRange(v)),
    }
}

/// Mixed two-sequence form: `X_r = f1 X_{r-a} + f2 Y_{r-b}` gives
/// `f2 sum_j Y_{r-ka-b+aj} / f1^j = X_r / f1^k - f1 X_{r-(k+1)a}`.
pub fn lemma_mixed(
    relation: &LinearRelation,
    x: &mut impl FnMut(i64) -> BigRational,
    y: &mut impl FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> Result<Sides, CatalogError> {
    relation.expect_taps(2)?;
    let (f1, f2) = (&relation.coeffs[0], &relation.coeffs[1]);
    let (a, b) = (relation.offsets[0], relation.offsets[1]);
    let k = k as i64;
    let sum: BigRational = (0..=k).map(|j| y(r - k * a - b + a * j) * qpow(f1, -j)).sum();
    Ok((f2 * sum, x(r) * qpow(f1, -k) - f1 * x(r - (k + 1) * a)))
}

/// Binomial-weight sums for a two-tap relation.
pub fn lemma_binomial(
    relation: &LinearRelation,
    variant: u8,
    x: &mut impl FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> Result<Sides, CatalogError> {
    relation.expect_taps(2)?;
    let (f1, f2) = (&relation.coeffs[0], &relation.coeffs[1]);
    let (a, b) = (relation.offsets[0], relation.offsets[1]);
    let row = binomial_row(k);
    let k = k as i64;
    let c = |j: i64| BigRational::from_integer(row[j as usize].clone());
    match variant {
        1 => {
            let ratio = f1 / f2;
            let lhs = (0..=k).map(|j| c(j) * qpow(&ratio, j) * x(r - b * k + (b - a) * j)).sum();
            Ok((lhs, x(r) * qpow(f2, -k)))
        }
        2 => {
            let m = -f2.clone();
            let lhs = (0..=k).map(|j| c(j) * x(r + (a - b) * k + b * j) * qpow(&m, -j)).sum();
            Ok((lhs, qpow(&-(f1 / f2), k) * x(r)))
        }
        3 => {
            let m = -f1.clone();
            let lhs = (0..=k).map(|j| c(j) * x(r + (b - a) * k + a * j) * qpow(&m, -j)).sum();
            Ok((lhs, qpow(&-(f2 / f1), k) * x(r)))
        }
        v => Err(CatalogError::VariantOutOfRange(v)),
    }
}

/// Double binomial sums for a three-tap relation
/// `X_r = f1 X_{r-a} + f2 X_{r-b} + f3 X_{r-c}`; six variants.
pub fn lemma_double_binomial(
    relation: &LinearRelation,
    variant: u8,
    x: &mut impl FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> Result<Sides, CatalogError> {
    relation.expect_taps(3)?;
    if !(1..=6).contains(&variant) {
        return Err(CatalogError::VariantOutOfRange(variant));
    }
    let (f1, f2, f3) = (&relation.coeffs[0], &relation.coeffs[1], &relation.coeffs[2]);
    let (a, b, c) = (relation.offsets[0], relation.offsets[1], relation.offsets[2]);
    let one = BigRational::one();
    // (outer ratio, inner ratio, index base per k, step per j, step per s, rhs factor)
    let (p, q, dk, dj, ds, rhs_factor) = match variant {
        1 => (f2 / f3, f1 / f2, -c, c - b, b - a, qpow(f3, -1)),
        2 => (f3 / f2, f1 / f3, -b, b - c, c - a, qpow(f2, -1)),
        3 => (f3 / f1, f2 / f3, -a, a - c, c - b, qpow(f1, -1)),
        4 => (f2 / f3, -(&one / f2), -(c - a), c - b, b, -(f1 / f3)),
        5 => (f1 / f3, -(&one / f1), -(c - b), c - a, a, -(f2 / f3)),
        _ => (f1 / f2, -(&one / f1), -(b - c), b - a, a, -(f3 / f2)),
    };
    let outer = binomial_row(k);
    let k = k as i64;
    let mut lhs = BigRational::zero();
    for j in 0..=k {
        let inner = binomial_row(j as u32);
        let pj = qpow(&p, j);
        for s in 0..=j {
            let weight = BigRational::from_integer(&outer[j as usize] * &inner[s as usize]);
            lhs += weight * &pj * qpow(&q, s) * x(r + dk * k + dj * j + ds * s);
        }
    }
    Ok((lhs, qpow(&rhs_factor, k) * x(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SequenceSpec;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn source(spec: SequenceSpec) -> impl FnMut(i64) -> BigRational {
        let mut cache = TermCache::new(spec);
        move |r| BigRational::from_integer(cache.value(r))
    }

    #[test]
    fn relation_validation() {
        assert!(LinearRelation::integer(&[2, -1], &[1, 4]).is_ok());
        assert!(LinearRelation::integer(&[2, 0], &[1, 4]).is_err());
        assert!(LinearRelation::integer(&[2, 1], &[1, 1]).is_err());
        assert!(LinearRelation::integer(&[2, 1], &[0, 1]).is_err());
        assert!(LinearRelation::integer(&[2], &[1, 2]).is_err());
    }

    #[test]
    fn pascal_rows() {
        let row: Vec<i64> = binomial_row(5).iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial_row(0).len(), 1);
    }

    #[test]
    fn z_sum_examples() {
        let mut t = TermCache::new(SequenceSpec::fibonacci(3).unwrap());
        assert_eq!(z_sum(&mut t, 10), BigInt::from(105));
        assert_eq!(z_sum(&mut t, 9), BigInt::from(57));
        assert_eq!(z_sum(&mut t, 10) + z_sum(&mut t, 9), BigInt::from(2) * t.value(9));

        let mut f = TermCache::new(SequenceSpec::fibonacci(2).unwrap());
        for r in -5..5 {
            assert_eq!(z_sum(&mut f, r), f.value(r - 1));
        }

        let mut q5 = TermCache::new(SequenceSpec::lucas(5).unwrap());
        assert_eq!(z_sum(&mut q5, 3) + z_sum(&mut q5, 2), BigInt::from(6));
    }

    #[test]
    fn three_term_geometric_instance() {
        let rel = LinearRelation::integer(&[2, -1], &[1, 4]).unwrap();
        let mut t = source(SequenceSpec::fibonacci(3).unwrap());
        for v in 1..=3 {
            let (l, r) = lemma_three_term(&rel, v, &mut t, 10, 3).unwrap();
            assert_eq!(l, r, "variant {v}");
        }
        assert_eq!(lemma_three_term(&rel, 4, &mut t, 0, 0), Err(CatalogError::VariantOutOfRange(4)));
    }

    #[test]
    fn three_term_k_zero_is_the_relation() {
        // variant 1 at k = 0: f2 X_{r-b} = X_r - f1 X_{r-a}
        let rel = LinearRelation::integer(&[2, -1], &[1, 3]).unwrap();
        let mut f = source(SequenceSpec::fibonacci(2).unwrap());
        let (l, r) = lemma_three_term(&rel, 1, &mut f, 7, 0).unwrap();
        assert_eq!(l, -f(4));
        assert_eq!(r, f(7) - q(2) * f(6));
        assert_eq!(l, r);
    }

    #[test]
    fn mixed_tribonacci_lucas() {
        // X = T, Y = K: T_r = 5 T_{r-2} - K_{r-3}
        let rel = LinearRelation::integer(&[5, -1], &[2, 3]).unwrap();
        let mut t = source(SequenceSpec::fibonacci(3).unwrap());
        let mut k = source(SequenceSpec::lucas(3).unwrap());
        for kk in 0..6u32 {
            let r = 2 * kk as i64 + 3;
            let (l, rr) = lemma_mixed(&rel, &mut t, &mut k, r, kk).unwrap();
            assert_eq!(l, rr);
            // scaled by -5^k: sum 5^{k-j} K_{2j} = 5^{k+1} - T_{2k+3}
            let direct: BigRational = (0..=kk as i64).map(|j| qpow(&q(5), kk as i64 - j) * k(2 * j)).sum();
            assert_eq!(-l * qpow(&q(5), kk as i64), direct);
            assert_eq!(direct, qpow(&q(5), kk as i64 + 1) - t(r));
        }
    }

    #[test]
    fn binomial_k_zero_and_hisert() {
        let rel = LinearRelation::integer(&[2, -1], &[1, 3]).unwrap();
        let mut f = source(SequenceSpec::fibonacci(2).unwrap());
        for v in 1..=3 {
            let (l, r) = lemma_binomial(&rel, v, &mut f, 5, 0).unwrap();
            assert_eq!((l.clone(), r), (f(5), f(5)));
        }
        // variant 3 with r = -nk, scaled by 2^k: the HISERT entry
        let (l, r) = lemma_binomial(&rel, 3, &mut f, -4, 2).unwrap();
        assert_eq!(l.clone(), r);
        assert_eq!(l * q(4), q(-3));
    }

    #[test]
    fn double_binomial_instances() {
        let n = 3;
        let rel = LinearRelation::integer(&[4, -1, -2], &[2, n + 1, n + 2]).unwrap();
        let mut t = source(SequenceSpec::fibonacci(3).unwrap());
        let (l, r) = lemma_double_binomial(&rel, 1, &mut t, 5, 2).unwrap();
        assert_eq!(l, r);
        for v in 1..=6 {
            let (l, r) = lemma_double_binomial(&rel, v, &mut t, 5, 0).unwrap();
            assert_eq!((l.clone(), r), (t(5), t(5)));
        }
        assert!(lemma_double_binomial(&rel, 7, &mut t, 0, 1).is_err());
        let two = LinearRelation::integer(&[2, -1], &[1, 4]).unwrap();
        assert_eq!(
            lemma_double_binomial(&two, 1, &mut t, 0, 1),
            Err(CatalogError::RelationArity { expected: 3, got: 2 })
        );
    }

    #[test]
    fn qpow_negative() {
        assert_eq!(qpow(&q(2), -3), BigRational::new(1.into(), 8.into()));
        assert_eq!(qpow(&q(-3), 3), q(-27));
        assert_eq!(qpow(&q(7), 0), q(1));
    }
}
