//! Value parsers shared by the subcommands.

use std::ops::RangeInclusive;
use std::str::FromStr;

use nstep_core::{Family, SequenceSpec};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Parses `a..b` (inclusive), `a` or a comma list of either, e.g. `2..4,7`.
/// The result is sorted and free of duplicates.
pub fn int_set(text: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(format!("empty item in `{text}`"));
        }
        match split_range(part) {
            Some((a, b)) => {
                let (a, b) = (int(a)?, int(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                if b - a > 1_000_000 {
                    return Err(format!("range `{part}` is too large"));
                }
                out.extend(a..=b);
            }
            None => out.push(int(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

// `..` not preceded by a sign, so `-4..-1` splits at the right place
fn split_range(part: &str) -> Option<(&str, &str)> {
    let at = part.get(1..)?.find("..")? + 1;
    Some((&part[..at], &part[at + 2..]))
}

fn int(s: &str) -> Result<i64, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not an integer"))
}

/// The set as one inclusive range, if it has no gaps.
pub fn contiguous(set: &[i64]) -> Option<RangeInclusive<i64>> {
    let (&first, &last) = (set.first()?, set.last()?);
    (last - first + 1 == set.len() as i64).then_some(first..=last)
}

/// Exact rational from `p/q` or an integer.
pub fn rational(text: &str) -> Result<BigRational, String> {
    BigRational::from_str(text.trim()).map_err(|e| format!("`{text}` is not a rational p/q: {e}"))
}

pub fn seeds(text: &str) -> Result<Vec<BigInt>, String> {
    text.split(',').map(|s| BigInt::from_str(s.trim()).map_err(|_| format!("`{s}` is not an integer seed"))).collect()
}

pub fn family(text: &str) -> Result<Family, String> {
    text.parse().map_err(|e: nstep_core::SequenceError| e.to_string())
}

pub fn spec(family: Family, n: usize, seeds: Option<Vec<BigInt>>) -> Result<SequenceSpec, String> {
    match (family, &seeds) {
        (Family::W, None) => return Err("family W needs --seeds".into()),
        (Family::U | Family::V, Some(_)) => return Err(format!("--seeds only applies to family W, not {family}")),
        _ => {}
    }
    SequenceSpec::new(family, n, seeds).map_err(|e| e.to_string())
}
