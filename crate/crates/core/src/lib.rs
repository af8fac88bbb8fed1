//! Exact arithmetic for n-step Fibonacci, n-step Lucas and generalized
//! n-step sequences.

pub mod catalog;
pub mod error;
pub mod fast_eval;
pub mod sequence;
pub mod series;

pub use catalog::{check, registry, run_grid, CheckReport, Grid, LinearRelation, Params};
pub use error::{CatalogError, FastEvalError, SequenceError, SeriesError};
pub use fast_eval::{term_at, Exact, Modular, Ring, RingKind, ShiftVector};
pub use sequence::{Family, SequenceSpec, TermCache, Window};
pub use series::{
    gf, partial_sum_closed, series_coeffs, sum_first, weighted_partial_sum, Polynomial, RationalFunction,
};
