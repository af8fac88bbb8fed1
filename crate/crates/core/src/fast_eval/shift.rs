use super::ring::Ring;
use crate::error::FastEvalError;
use crate::sequence::{Family, SequenceSpec, TermCache, Window};

/// Coefficients expressing `W_{r+s}` over the window `(W_{r-1}, ..., W_{r-n})`:
///
/// `W_{r+s} = sum_{i=1..n} c_i W_{r-i}` with `c_i = sum_{j=0..n-i} U_{s-j+1}`.
///
/// The coefficients depend only on the order and the shift, never on the
/// sequence they are applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftVector<E> {
    order: usize,
    shift: i128,
    coeffs: Vec<E>,
}

impl<E: Clone> ShiftVector<E> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn shift(&self) -> i128 {
        self.shift
    }

    /// `coeffs()[i - 1]` is `c_i`.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Rebuilds the vector from `(U_{s+1}, U_s, ..., U_{s-n+2})`.
    fn from_u_window<R: Ring<Elem = E>>(ring: &R, shift: i128, u: &[E]) -> Self {
        let n = u.len();
        let mut coeffs = vec![ring.zero(); n];
        coeffs[n - 1] = u[0].clone();
        for i in (1..n).rev() {
            // c_i = c_{i+1} + U_{s-n+i+1}
            coeffs[i - 1] = ring.add(&coeffs[i], &u[n - i]);
        }
        ShiftVector { order: n, shift, coeffs }
    }

    /// The `n` consecutive U values `(U_{s+1}, ..., U_{s-n+2})` the vector encodes.
    fn u_window<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        let n = self.order;
        let mut u = Vec::with_capacity(2 * n);
        u.push(self.coeffs[n - 1].clone());
        for t in 1..n {
            u.push(ring.sub(&self.coeffs[n - t - 1], &self.coeffs[n - t]));
        }
        u
    }
}

/// Builds the shift vector for `s` directly from materialized U terms.
pub fn shift_vector<R: Ring>(u_cache: &mut TermCache, s: i64, ring: &R) -> Result<ShiftVector<R::Elem>, FastEvalError> {
    if u_cache.spec().family() != Family::U {
        return Err(FastEvalError::FamilyMismatch(u_cache.spec().family()));
    }
    let n = u_cache.order() as i64;
    let u: Vec<R::Elem> = (0..n).map(|t| ring.embed(u_cache.term(s + 1 - t))).collect();
    Ok(ShiftVector::from_u_window(ring, s as i128, &u))
}

/// `sum_i c_i W_{r-i}`, i.e. the term `shift` places above the window top.
pub fn apply_shift<R: Ring>(sv: &ShiftVector<R::Elem>, window: &Window, ring: &R) -> Result<R::Elem, FastEvalError> {
    if sv.order != window.order() {
        return Err(FastEvalError::OrderMismatch { left: sv.order, right: window.order() });
    }
    let terms: Vec<R::Elem> = window.terms().iter().map(|t| ring.embed(t)).collect();
    Ok(dot(ring, &sv.coeffs, &terms))
}

/// Shift vector for `a + b` from the vectors for `a` and `b`; `n^2` ring multiplications.
///
/// The U values that define `sv(a + b)` are obtained by applying `sv(a)` to
/// windows of U below `b + 1`, which are recovered from `sv(b)` by running the
/// recurrence backwards.
pub fn compose<R: Ring>(
    a: &ShiftVector<R::Elem>,
    b: &ShiftVector<R::Elem>,
    ring: &R,
) -> Result<ShiftVector<R::Elem>, FastEvalError> {
    if a.order != b.order {
        return Err(FastEvalError::OrderMismatch { left: a.order, right: b.order });
    }
    let n = a.order;
    // u[t] = U_{b+1-t}, extended from n to 2n entries
    let mut u = b.u_window(ring);
    let first = (1..n).fold(u[0].clone(), |acc, i| ring.sub(&acc, &u[n - i]));
    u.push(first);
    for t in n + 1..2 * n {
        // U_m = 2 U_{m+n} - U_{m+n+1}
        let next = ring.sub(&ring.double(&u[t - n]), &u[t - n - 1]);
        u.push(next);
    }
    let composed: Vec<R::Elem> = (0..n).map(|t| dot(ring, &a.coeffs, &u[t + 1..t + 1 + n])).collect();
    Ok(ShiftVector::from_u_window(ring, a.shift + b.shift, &composed))
}

fn dot<R: Ring>(ring: &R, xs: &[R::Elem], ys: &[R::Elem]) -> R::Elem {
    xs.iter().zip(ys).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

/// Logarithmic-index evaluator for one order and ring.
///
/// Caches `sv(±2^k)` so that repeated evaluations share the squarings.
pub struct DoublingEvaluator<'r, R: Ring> {
    ring: &'r R,
    order: usize,
    up: Vec<ShiftVector<R::Elem>>,
    down: Vec<ShiftVector<R::Elem>>,
}

impl<'r, R: Ring> DoublingEvaluator<'r, R> {
    pub fn new(order: usize, ring: &'r R) -> Result<Self, FastEvalError> {
        let mut u = TermCache::new(
            SequenceSpec::fibonacci(order).map_err(|_| FastEvalError::OrderMismatch { left: order, right: 2 })?,
        );
        let up = vec![shift_vector(&mut u, 1, ring)?];
        let down = vec![shift_vector(&mut u, -1, ring)?];
        Ok(DoublingEvaluator { ring, order, up, down })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn power(&mut self, negative: bool, k: usize) -> &ShiftVector<R::Elem> {
        let ring = self.ring;
        let table = if negative { &mut self.down } else { &mut self.up };
        while table.len() <= k {
            let last = table.last().expect("unit shift present");
            let sq = compose(last, last, ring).expect("equal orders");
            table.push(sq);
        }
        &table[k]
    }

    /// `sv(s)` by binary decomposition of `|s|` over unit shifts of the same sign.
    pub fn shift(&mut self, s: i128) -> ShiftVector<R::Elem> {
        if s == 0 {
            let ones = vec![self.ring.one(); self.order];
            return ShiftVector { order: self.order, shift: 0, coeffs: ones };
        }
        let negative = s < 0;
        let mag = s.unsigned_abs();
        let mut acc: Option<ShiftVector<R::Elem>> = None;
        for k in 0..(128 - mag.leading_zeros() as usize) {
            if mag >> k & 1 == 1 {
                let p = self.power(negative, k).clone();
                acc = Some(match acc {
                    None => p,
                    Some(prev) => compose(&prev, &p, self.ring).expect("equal orders"),
                });
            }
        }
        acc.expect("nonzero shift has a set bit")
    }

    /// Term `r` of `spec`, jumping from the seed window.
    pub fn term(&mut self, spec: &SequenceSpec, r: i64) -> R::Elem {
        assert_eq!(spec.order(), self.order, "evaluator order does not match spec");
        let window = Window::seed(spec);
        let sv = self.shift(r as i128 - window.top() as i128);
        apply_shift(&sv, &window, self.ring).expect("orders checked above")
    }
}

/// Term `r` of `spec` in `ring` using `O(n^2 log |r|)` ring multiplications.
pub fn term_at<R: Ring>(spec: &SequenceSpec, r: i64, ring: &R) -> R::Elem {
    DoublingEvaluator::new(spec.order(), ring).expect("spec order is at least 2").term(spec, r)
}

/// Upper bound on the multiplications [`term_at`] performs: two compositions
/// per bit of the shift plus the final application.
pub fn doubling_mult_bound(order: usize, shift: u128) -> u64 {
    let bits = 128 - shift.leading_zeros() as u64;
    let n2 = (order * order) as u64;
    2 * n2 * bits.saturating_sub(1) + order as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast_eval::ring::{Counting, Exact, Modular};
    use num_bigint::BigInt;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn u(n: usize) -> TermCache {
        TermCache::new(SequenceSpec::fibonacci(n).unwrap())
    }

    #[test]
    fn zero_shift_is_all_ones() {
        let sv = shift_vector(&mut u(4), 0, &Exact).unwrap();
        assert_eq!(sv.coeffs(), ints(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn order_two_matches_fibonacci_pair() {
        let mut f = u(2);
        for s in -10..=10 {
            let sv = shift_vector(&mut f, s, &Exact).unwrap();
            assert_eq!(sv.coeffs(), &[f.value(s + 2), f.value(s + 1)]);
        }
    }

    #[test]
    fn tribonacci_minus_nineteen() {
        let sv = shift_vector(&mut u(3), -19, &Exact).unwrap();
        assert_eq!(sv.coeffs(), ints(&[0, 56, -103]).as_slice());
    }

    #[test]
    fn family_mismatch() {
        let mut v = TermCache::new(SequenceSpec::lucas(3).unwrap());
        assert_eq!(shift_vector(&mut v, 1, &Exact), Err(FastEvalError::FamilyMismatch(Family::V)));
    }

    #[test]
    fn apply_backward_jump() {
        // T_{-9} from the window at r = 10 through sv(-19)
        let sv = shift_vector(&mut u(3), -19, &Exact).unwrap();
        let mut t = u(3);
        let w = t.window(10);
        assert_eq!(apply_shift(&sv, &w, &Exact).unwrap(), BigInt::from(-8));
        assert_eq!(t.value(-9), BigInt::from(-8));
    }

    #[test]
    fn apply_to_lucas_window() {
        let sv = shift_vector(&mut u(3), 4, &Exact).unwrap();
        assert_eq!(sv.coeffs(), ints(&[13, 11, 7]).as_slice());
        let mut k = TermCache::new(SequenceSpec::lucas(3).unwrap());
        let w = k.window(6);
        assert_eq!(apply_shift(&sv, &w, &Exact).unwrap(), BigInt::from(443));
    }

    #[test]
    fn apply_order_mismatch() {
        let sv = shift_vector(&mut u(3), 2, &Exact).unwrap();
        let w = u(4).window(0);
        assert_eq!(apply_shift(&sv, &w, &Exact), Err(FastEvalError::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let mut c = u(5);
        let id = shift_vector(&mut c, 0, &Exact).unwrap();
        let sv = shift_vector(&mut c, 13, &Exact).unwrap();
        assert_eq!(compose(&sv, &id, &Exact).unwrap(), sv);
        assert_eq!(compose(&id, &sv, &Exact).unwrap(), sv);
        let other = shift_vector(&mut u(4), 1, &Exact).unwrap();
        assert!(compose(&sv, &other, &Exact).is_err());
    }

    #[test]
    fn compose_modular_matches_reduced_exact() {
        let ring = Modular::new(97).unwrap();
        let mut c = u(3);
        let ten = shift_vector(&mut c, 10, &ring).unwrap();
        let twenty = compose(&ten, &ten, &ring).unwrap();
        let exact = shift_vector(&mut c, 20, &Exact).unwrap();
        let reduced: Vec<u64> = exact.coeffs().iter().map(|x| ring.embed(x)).collect();
        assert_eq!(twenty.coeffs(), reduced.as_slice());
        assert_eq!(twenty.shift(), 20);
    }

    #[test]
    fn term_at_table_values() {
        assert_eq!(term_at(&SequenceSpec::fibonacci(5).unwrap(), 10, &Exact), BigInt::from(236));
        assert_eq!(term_at(&SequenceSpec::fibonacci(3).unwrap(), -18, &Exact), BigInt::from(-103));
        assert_eq!(term_at(&SequenceSpec::lucas(4).unwrap(), -4, &Exact), BigInt::from(7));
        let w = SequenceSpec::generalized([3, 1, 3]).unwrap();
        assert_eq!(term_at(&w, 1, &Exact), BigInt::from(1));
    }

    #[test]
    fn shift_decomposition_tracks_shift() {
        let mut ev = DoublingEvaluator::new(4, &Exact).unwrap();
        for s in [-37i128, -1, 0, 1, 2, 37, 64] {
            assert_eq!(ev.shift(s).shift(), s);
        }
    }

    #[test]
    fn multiplication_bound_holds_for_large_index() {
        let ring = Counting::new(Modular::new((1 << 61) - 1).unwrap());
        let spec = SequenceSpec::fibonacci(10).unwrap();
        let r: i64 = 1_000_000_000_000_000_000;
        let _ = term_at(&spec, r, &ring);
        let shift = (r - 1) as u128;
        assert!(ring.multiplications() <= doubling_mult_bound(10, shift));
        assert!(ring.multiplications() <= 4 * 100 * 60);
    }
}
