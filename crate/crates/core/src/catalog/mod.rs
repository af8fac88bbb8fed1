//! Registry of summation and recurrence identities, with exact checkers.
//!
//! Every identity is an evaluator returning both sides as exact rationals.
//! Identities that come straight out of one of the generic lemmas in
//! [`lemmas`] are generated through the lemma engine rather than transcribed.

mod grid;
pub mod lemmas;
mod registry;

use std::fmt;
use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::CatalogError;
use crate::sequence::{Family, SequenceSpec, TermCache};

pub use grid::{grid_sequences, run_grid, Grid};
pub use lemmas::{
    binomial_row, lemma_binomial, lemma_double_binomial, lemma_mixed, lemma_three_term, qpow, z_sum, LinearRelation,
};
pub use registry::{registry, Registry};

/// Term access for one sequence together with the n-step Fibonacci numbers of
/// the same order.
pub struct EvalContext {
    w: TermCache,
    u: TermCache,
}

impl EvalContext {
    pub fn new(spec: SequenceSpec) -> Self {
        let n = spec.order();
        EvalContext {
            w: TermCache::new(spec),
            u: TermCache::new(SequenceSpec::fibonacci(n).expect("order already validated")),
        }
    }

    pub fn spec(&self) -> &SequenceSpec {
        self.w.spec()
    }

    pub fn order(&self) -> usize {
        self.w.order()
    }

    pub fn w(&mut self, r: i64) -> BigInt {
        self.w.value(r)
    }

    pub fn u(&mut self, r: i64) -> BigInt {
        self.u.value(r)
    }

    /// The sequence cache and the n-step Fibonacci cache, borrowed together.
    pub fn split(&mut self) -> (&mut TermCache, &mut TermCache) {
        (&mut self.w, &mut self.u)
    }
}

/// Resolved parameter point handed to evaluators. Parameters outside an
/// identity's signature are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub n: i64,
    pub r: i64,
    pub s: i64,
    pub k: i64,
}

/// Parameters as supplied by a caller.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub k: Option<u32>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn r(mut self, r: i64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(s) = self.s {
            parts.push(format!("s={s}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// Which of r, s, k an identity ranges over. `n` is always implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub r: bool,
    pub s: bool,
    pub k: bool,
}

impl Signature {
    pub fn parse(letters: &str) -> Self {
        Signature { r: letters.contains('r'), s: letters.contains('s'), k: letters.contains('k') }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("n")?;
        for (on, c) in [(self.r, ",r"), (self.s, ",s"), (self.k, ",k")] {
            if on {
                f.write_str(c)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Recurrence,
    IndexAddition,
    AlternatingSum,
    GeometricSum,
    FibonacciSum,
    TribonacciSum,
    Binomial,
    DoubleBinomial,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Recurrence => "recurrence",
            Group::IndexAddition => "index-addition",
            Group::AlternatingSum => "alternating-sum",
            Group::GeometricSum => "geometric-sum",
            Group::FibonacciSum => "fibonacci-sum",
            Group::TribonacciSum => "tribonacci-sum",
            Group::Binomial => "binomial",
            Group::DoubleBinomial => "double-binomial",
        }
    }
}

/// Orders an identity applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orders {
    Any,
    Even,
    Odd,
    Only(Vec<usize>),
}

impl Orders {
    pub fn contains(&self, n: usize) -> bool {
        match self {
            Orders::Any => true,
            Orders::Even => n.is_multiple_of(2),
            Orders::Odd => n % 2 == 1,
            Orders::Only(v) => v.contains(&n),
        }
    }
}

impl fmt::Display for Orders {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orders::Any => f.write_str("any"),
            Orders::Even => f.write_str("even"),
            Orders::Odd => f.write_str("odd"),
            Orders::Only(v) => {
                let s: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

/// Registered identity, or one competing reading of an ambiguous display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Identity,
    Reading { question: &'static str },
}

pub type Evaluator = Arc<dyn Fn(&mut EvalContext, &Point) -> (BigRational, BigRational) + Send + Sync>;

#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: String,
    pub group: Group,
    pub formula: String,
    pub families: Vec<Family>,
    pub orders: Orders,
    pub signature: Signature,
    pub role: Role,
    pub(crate) eval: Evaluator,
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("formula", &self.formula)
            .field("families", &self.families)
            .field("orders", &self.orders)
            .field("signature", &self.signature)
            .field("role", &self.role)
            .finish_non_exhaustive()
    }
}

impl IdentityDescriptor {
    pub fn applies_to(&self, spec: &SequenceSpec) -> bool {
        self.families.contains(&spec.family()) && self.orders.contains(spec.order())
    }

    pub fn is_reading(&self) -> bool {
        matches!(self.role, Role::Reading { .. })
    }

    /// Both sides at a resolved point.
    pub fn sides(&self, ctx: &mut EvalContext, point: &Point) -> (BigRational, BigRational) {
        (self.eval)(ctx, point)
    }

    fn resolve(&self, n: usize, params: &Params) -> Result<Point, CatalogError> {
        let missing =
            |p: &str| CatalogError::OutOfDomain { id: self.id.clone(), reason: format!("parameter {p} is required") };
        let sig = self.signature;
        Ok(Point {
            n: n as i64,
            r: if sig.r { params.r.ok_or_else(|| missing("r"))? } else { 0 },
            s: if sig.s { params.s.ok_or_else(|| missing("s"))? } else { 0 },
            k: if sig.k { params.k.ok_or_else(|| missing("k"))? as i64 } else { 0 },
        })
    }

    fn restrict(&self, params: &Params) -> Params {
        Params {
            r: params.r.filter(|_| self.signature.r),
            s: params.s.filter(|_| self.signature.s),
            k: params.k.filter(|_| self.signature.k),
        }
    }
}

/// Outcome of a single exact comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: String,
    pub params: Params,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates one identity at one point. Parameters outside the identity's
/// signature are ignored.
pub fn check(id: &str, spec: &SequenceSpec, params: &Params) -> Result<CheckOutcome, CatalogError> {
    let desc = registry().get(id)?;
    if !desc.applies_to(spec) {
        return Err(CatalogError::OutOfDomain {
            id: desc.id.clone(),
            reason: format!("{spec} is outside families {:?} and orders {}", desc.families, desc.orders),
        });
    }
    let point = desc.resolve(spec.order(), params)?;
    let mut ctx = EvalContext::new(spec.clone());
    let (lhs, rhs) = desc.sides(&mut ctx, &point);
    Ok(CheckOutcome { id: desc.id.clone(), params: desc.restrict(params), lhs, rhs })
}

/// A failing grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: usize,
    pub sequence: String,
    pub params: Params,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub cardinality: u64,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
