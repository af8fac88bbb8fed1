use super::ring::Ring;
use crate::error::FastEvalError;
use crate::sequence::SequenceSpec;

/// Largest `|r|` accepted by [`naive_term`].
pub const NAIVE_LIMIT: u64 = 10_000_000;

type Matrix<E> = Vec<Vec<E>>;

fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n).map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&a[i][k], &b[k][j])))).collect()
        })
        .collect()
}

fn mat_pow<R: Ring>(ring: &R, base: &Matrix<R::Elem>, mut e: u128) -> Matrix<R::Elem> {
    let n = base.len();
    let mut result: Option<Matrix<R::Elem>> = None;
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => sq.clone(),
                Some(acc) => mat_mul(ring, &acc, &sq),
            });
        }
        e >>= 1;
        if e > 0 {
            sq = mat_mul(ring, &sq, &sq);
        }
    }
    result.unwrap_or_else(|| identity(ring, n))
}

/// Maps the state `(W_m, ..., W_{m-n+1})` to `(W_{m+1}, ..., W_{m-n+2})`.
fn companion<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = vec![vec![ring.zero(); n]; n];
    m[0] = vec![ring.one(); n];
    for i in 1..n {
        m[i][i - 1] = ring.one();
    }
    m
}

/// Inverse of [`companion`]: steps the state one index down.
fn companion_inverse<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = vec![vec![ring.zero(); n]; n];
    for i in 0..n - 1 {
        m[i][i + 1] = ring.one();
    }
    let minus_one = ring.neg(&ring.one());
    m[n - 1] = (0..n).map(|j| if j == 0 { ring.one() } else { minus_one.clone() }).collect();
    m
}

/// Term `r` by binary powering of the `n x n` companion matrix.
///
/// Independent of the shift-vector route; `O(n^3 log |r|)` multiplications.
pub fn matrix_power_oracle<R: Ring>(spec: &SequenceSpec, r: i64, ring: &R) -> R::Elem {
    let n = spec.order();
    let top = spec.seed_base() + n as i64 - 1;
    let state: Vec<R::Elem> = spec.seed_block().iter().rev().map(|v| ring.embed(v)).collect();
    let e = r as i128 - top as i128;
    let m = if e >= 0 {
        mat_pow(ring, &companion(ring, n), e as u128)
    } else {
        mat_pow(ring, &companion_inverse(ring, n), e.unsigned_abs())
    };
    m[0].iter().zip(&state).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
}

/// Term `r` by stepping the order-`n` recurrence one index at a time.
pub fn naive_term<R: Ring>(spec: &SequenceSpec, r: i64, ring: &R) -> Result<R::Elem, FastEvalError> {
    if r.unsigned_abs() > NAIVE_LIMIT {
        return Err(FastEvalError::NaiveTooLarge(r.unsigned_abs()));
    }
    let n = spec.order();
    let base = spec.seed_base();
    let mut block: Vec<R::Elem> = spec.seed_block().iter().map(|v| ring.embed(v)).collect();
    if r >= base && r < base + n as i64 {
        return Ok(block[(r - base) as usize].clone());
    }
    if r >= base {
        let mut top = base + n as i64 - 1;
        // ring buffer of the last n terms; `head` is the oldest
        let mut head = 0;
        while top < r {
            let next = block.iter().fold(ring.zero(), |acc, x| ring.add(&acc, x));
            block[head] = next;
            head = (head + 1) % n;
            top += 1;
        }
        Ok(block[(head + n - 1) % n].clone())
    } else {
        let mut low = base;
        // `head` holds the lowest index; W_{m} = W_{m+n} - (W_{m+1} + ... + W_{m+n-1})
        let mut head = 0;
        while low > r {
            let top_slot = (head + n - 1) % n;
            let total = block.iter().fold(ring.zero(), |acc, x| ring.add(&acc, x));
            let next = ring.sub(&ring.double(&block[top_slot]), &total);
            block[top_slot] = next;
            head = top_slot;
            low -= 1;
        }
        Ok(block[head].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast_eval::ring::{Counting, Exact, Modular};
    use crate::sequence::TermCache;
    use num_bigint::BigInt;

    #[test]
    fn oracle_table_values() {
        assert_eq!(matrix_power_oracle(&SequenceSpec::fibonacci(4).unwrap(), 10, &Exact), BigInt::from(208));
        assert_eq!(matrix_power_oracle(&SequenceSpec::lucas(5).unwrap(), 10, &Exact), BigInt::from(863));
        assert_eq!(matrix_power_oracle(&SequenceSpec::fibonacci(2).unwrap(), -4, &Exact), BigInt::from(-3));
    }

    #[test]
    fn oracle_zero_index_is_w0() {
        for spec in [
            SequenceSpec::fibonacci(3).unwrap(),
            SequenceSpec::lucas(4).unwrap(),
            SequenceSpec::generalized([4, -2, 9]).unwrap(),
        ] {
            let w0 = TermCache::new(spec.clone()).value(0);
            assert_eq!(matrix_power_oracle(&spec, 0, &Exact), w0);
        }
    }

    #[test]
    fn naive_and_oracle_match_cache_both_directions() {
        for spec in [
            SequenceSpec::fibonacci(2).unwrap(),
            SequenceSpec::lucas(3).unwrap(),
            SequenceSpec::generalized([2, -7, 1, 5]).unwrap(),
        ] {
            let mut cache = TermCache::new(spec.clone());
            for r in -40..=40 {
                let expected = cache.value(r);
                assert_eq!(naive_term(&spec, r, &Exact).unwrap(), expected, "naive {spec} r={r}");
                assert_eq!(matrix_power_oracle(&spec, r, &Exact), expected, "matrix {spec} r={r}");
            }
        }
    }

    #[test]
    fn naive_guardrail() {
        let spec = SequenceSpec::fibonacci(2).unwrap();
        let ring = Modular::new(1_000_003).unwrap();
        assert!(naive_term(&spec, 10_000_000, &ring).is_ok());
        assert_eq!(naive_term(&spec, 10_000_001, &ring), Err(FastEvalError::NaiveTooLarge(10_000_001)));
        assert!(naive_term(&spec, -10_000_001, &ring).is_err());
    }

    #[test]
    fn naive_uses_no_multiplications() {
        let ring = Counting::new(Modular::new(1_000_003).unwrap());
        let _ = naive_term(&SequenceSpec::fibonacci(5).unwrap(), 5000, &ring).unwrap();
        let _ = naive_term(&SequenceSpec::fibonacci(5).unwrap(), -5000, &ring).unwrap();
        assert_eq!(ring.multiplications(), 0);
    }
}
