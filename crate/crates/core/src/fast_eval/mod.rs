//! Logarithmic-index evaluation of n-step sequences.
//!
//! A [`ShiftVector`] for shift `s` turns any window of `n` consecutive terms
//! into the term `s` places above it. Shift vectors compose in `n^2` ring
//! multiplications, so `W_r` costs `O(n^2 log |r|)`. The companion-matrix
//! route in [`matrix_power_oracle`] is kept as an independent cross-check.

mod matrix;
mod ring;
mod shift;

pub use matrix::{matrix_power_oracle, naive_term, NAIVE_LIMIT};
pub use ring::{Counting, Exact, Modular, Ring, RingKind};
pub use shift::{apply_shift, compose, doubling_mult_bound, shift_vector, term_at, DoublingEvaluator, ShiftVector};

use num_bigint::BigInt;

use crate::sequence::SequenceSpec;

/// [`term_at`] for a ring chosen at runtime; the result is a canonical integer.
pub fn term_at_kind(spec: &SequenceSpec, r: i64, kind: RingKind) -> BigInt {
    match kind {
        RingKind::Exact => term_at(spec, r, &Exact),
        RingKind::Modular(m) => {
            let ring = Modular::new(m).expect("RingKind::modular validated the modulus");
            BigInt::from(term_at(spec, r, &ring))
        }
    }
}

/// [`matrix_power_oracle`] for a ring chosen at runtime.
pub fn matrix_power_kind(spec: &SequenceSpec, r: i64, kind: RingKind) -> BigInt {
    match kind {
        RingKind::Exact => matrix_power_oracle(spec, r, &Exact),
        RingKind::Modular(m) => {
            let ring = Modular::new(m).expect("RingKind::modular validated the modulus");
            BigInt::from(matrix_power_oracle(spec, r, &ring))
        }
    }
}
