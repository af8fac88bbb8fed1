//! Generating functions and weighted partial sums, all in exact rationals.

mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::{qpow, LinearRelation};
use crate::error::SeriesError;
use crate::sequence::{Family, SequenceSpec, TermCache};

pub use poly::Polynomial;

/// Evaluation points and sums are plain reduced rationals.
pub type ExactRational = BigRational;

/// `num / den` with `den(0) = 1`. Not reduced unless [`RationalFunction::reduced`]
/// is called.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        let c = den.coeff(0);
        if c.is_zero() {
            return Err(SeriesError::NonExpandable);
        }
        let inv = c.recip();
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Divides out the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        if g.is_zero() || g.degree() == Some(0) {
            return self.clone();
        }
        let (num, _) = self.num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = self.den.div_rem(&g).expect("gcd is nonzero");
        RationalFunction::new(num, den).expect("gcd of an expandable function keeps den(0) nonzero")
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, SeriesError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(SeriesError::SingularPoint(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }
}

/// First `count` power-series coefficients, by long division.
pub fn series_coeffs(rf: &RationalFunction, count: usize) -> Vec<BigRational> {
    // den(0) = 1, so a_i = num_i - sum_{j >= 1} den_j a_{i-j}
    let den = rf.den.coeffs();
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    for i in 0..count {
        let mut a = rf.num.coeff(i);
        for (j, d) in den.iter().enumerate().skip(1).take(i) {
            if !d.is_zero() {
                a -= d * &out[i - j];
            }
        }
        out.push(a);
    }
    out
}

fn q(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn qi(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `1 - 2x + x^(n+1)`.
pub fn characteristic(n: usize) -> Polynomial {
    &Polynomial::from_ints(&[1, -2]) + &Polynomial::monomial(qi(1), n + 1)
}

/// Generating function in the family-specific form: `x(1-x)` over the
/// characteristic polynomial for U, the `(1-x)`-multiplied form for V, and
/// the general seed form for W.
pub fn gf(spec: &SequenceSpec) -> RationalFunction {
    let n = spec.order();
    let den = characteristic(n);
    let rf = match spec.family() {
        Family::U => RationalFunction::new(Polynomial::from_ints(&[0, 1, -1]), den),
        Family::V => {
            let ni = n as i64;
            let num = &Polynomial::from_ints(&[ni, -(3 * ni - 1), 2 * ni]) - &Polynomial::monomial(qi(1), n + 1);
            RationalFunction::new(num, &Polynomial::from_ints(&[1, -1]) * &den)
        }
        Family::W => return gf_general(spec),
    };
    rf.expect("characteristic polynomial has constant term 1")
}

/// `(2W_{-1} - x^(n+1) sum_{j=1..n+1} x^(-j) W_{-j}) / (1 - 2x + x^(n+1))`,
/// valid for every family.
pub fn gf_general(spec: &SequenceSpec) -> RationalFunction {
    let n = spec.order();
    let mut cache = TermCache::new(spec.clone());
    let mut num = vec![BigRational::zero(); n + 1];
    num[0] = q(2 * cache.value(-1));
    for j in 1..=n + 1 {
        num[n + 1 - j] -= q(cache.value(-(j as i64)));
    }
    RationalFunction::new(Polynomial::new(num), characteristic(n)).expect("constant term 1")
}

/// `sum_{j=0..k} x^j W_j`, summed directly.
pub fn weighted_partial_sum(cache: &mut TermCache, x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for j in 0..=k as i64 {
        acc += &power * q(cache.value(j));
        power *= x;
    }
    acc
}

/// `sum_{j=lo..hi} x^j W_j`; `x` nonzero when `lo < 0`.
fn window_sum(cache: &mut TermCache, x: &BigRational, lo: i64, hi: i64) -> BigRational {
    (lo..=hi).map(|j| qpow(x, j) * q(cache.value(j))).sum()
}

/// Closed form of the weighted partial sum. At a root of the denominator it
/// switches to the derivative (limit) form, available at x = 1.
pub fn partial_sum_closed(cache: &mut TermCache, x: &BigRational, k: u32) -> Result<BigRational, SeriesError> {
    if x.is_zero() {
        return Err(SeriesError::ZeroEvaluationPoint);
    }
    let spec = cache.spec().clone();
    let n = spec.order() as i64;
    let ki = k as i64;
    let one = BigRational::one();
    let char_at = characteristic(spec.order()).eval(x);
    let den = match spec.family() {
        Family::V => (&one - x) * &char_at,
        _ => char_at,
    };
    if den.is_zero() {
        if x.is_one() {
            let (num, div) = limit_form(cache, k);
            return Ok(BigRational::new(num, div));
        }
        return Err(SeriesError::SingularPoint(x.to_string()));
    }
    let xn1 = qpow(x, n + 1);
    let tail = window_sum(cache, x, ki - n, ki);
    let wk = q(cache.value(ki));
    let xk1 = qpow(x, ki + 1);
    let num = match spec.family() {
        Family::U => x - x * x - qi(2) * &xk1 * &wk + &xn1 * &tail,
        Family::V => {
            let head = qi(n) - qi(3 * n - 1) * x + qi(2 * n) * x * x - &xn1;
            let om = &one - x;
            head - &om * &xk1 * qi(2) * &wk + &om * &xn1 * &tail
        }
        Family::W => {
            let seeds: BigRational = (1..=n + 1).map(|j| qpow(x, -j) * q(cache.value(-j))).sum();
            q(2 * cache.value(-1)) - qi(2) * &xk1 * &wk + &xn1 * &tail - &xn1 * seeds
        }
    };
    Ok(num / den)
}

/// Numerator and divisor of the x = 1 sum, family-specific. The numerator is
/// always an exact multiple of the divisor.
pub fn limit_form(cache: &mut TermCache, k: u32) -> (BigInt, BigInt) {
    let n = cache.order() as i64;
    let ki = k as i64;
    let weighted: BigInt = (ki - n..=ki).map(|j| j * cache.value(j)).sum();
    let wk = cache.value(ki);
    match cache.spec().family() {
        Family::U => (-1 + 2 * (n - ki) * wk + weighted, BigInt::from(n - 1)),
        Family::V => (n * (n - 3) + 4 * (n - ki) * wk + 2 * weighted, BigInt::from(2 * (n - 1))),
        Family::W => {
            let seeds: BigInt = (1..=n + 1).map(|j| j * cache.value(-j)).sum();
            let num = 2 * (n - ki) * wk - 2 * (n + 1) * cache.value(-1) + weighted + seeds;
            (num, BigInt::from(n - 1))
        }
    }
}

/// `sum_{j=0..k} W_j` through the limit form.
pub fn sum_first(cache: &mut TermCache, k: u32) -> BigInt {
    let (num, div) = limit_form(cache, k);
    let (quot, rem) = num.div_rem(&div);
    assert!(rem.is_zero(), "limit numerator {num} not divisible by {div}");
    quot
}

/// Partial sum through the generic n-term lemma for an arbitrary linear
/// relation with positive offsets.
pub fn lemma_partial_sum(
    relation: &LinearRelation,
    x: &BigRational,
    term: &mut impl FnMut(i64) -> BigRational,
    k: u32,
) -> Result<BigRational, SeriesError> {
    if x.is_zero() {
        return Err(SeriesError::ZeroEvaluationPoint);
    }
    let ki = k as i64;
    let mut num = BigRational::zero();
    let mut den = BigRational::one();
    for (f, &c) in relation.coeffs().iter().zip(relation.offsets()) {
        let w = qpow(x, c) * f;
        let before: BigRational = (1..=c).map(|j| qpow(x, -j) * term(-j)).sum();
        let after: BigRational = (ki - c + 1..=ki).map(|j| qpow(x, j) * term(j)).sum();
        num += &w * (before - after);
        den -= w;
    }
    if den.is_zero() {
        return Err(SeriesError::SingularPoint(x.to_string()));
    }
    Ok(num / den)
}
