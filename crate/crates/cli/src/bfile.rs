//! OEIS b-file reader: `#` comment lines and `index value` data lines
//! separated by a single space.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileRecord {
    /// 1-based line number in the source file.
    pub line: usize,
    pub index: i64,
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses a whole file. Blank lines are skipped; indices must increase.
pub fn parse(text: &str) -> Result<Vec<BFileRecord>, ParseError> {
    let mut out: Vec<BFileRecord> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fail = |reason: String| ParseError { line, reason };
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut parts = raw.split(' ');
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(fail(format!("expected `index value`, got `{raw}`")));
        };
        let index = i64::from_str(idx).map_err(|_| fail(format!("bad index `{idx}`")))?;
        let value = BigInt::from_str(val).map_err(|_| fail(format!("bad value `{val}`")))?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(fail(format!("index {index} does not increase past {}", prev.index)));
            }
        }
        out.push(BFileRecord { line, index, value });
    }
    Ok(out)
}

impl fmt::Display for BFileRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.index, self.value)
    }
}
