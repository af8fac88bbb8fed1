use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{registry, CheckReport, EvalContext, Failure, IdentityDescriptor, Params, Point};
use crate::error::CatalogError;
use crate::sequence::{Family, SequenceSpec};

/// Parameter box for [`run_grid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub orders: RangeInclusive<usize>,
    pub r: RangeInclusive<i64>,
    pub s: RangeInclusive<i64>,
    pub k: RangeInclusive<u32>,
    /// Random seed sets per order, in addition to U, V and the zero sequence.
    pub random_seeds: usize,
    /// Restricts the sequences to these families; `None` keeps all of them.
    pub families: Option<Vec<Family>>,
}

impl Grid {
    /// n in 2..=6, r and s in -10..=10, k in 0..=8, five random seed sets.
    pub fn standard() -> Self {
        Grid { orders: 2..=6, r: -10..=10, s: -10..=10, k: 0..=8, random_seeds: 5, families: None }
    }

    /// A single point for every parameter.
    pub fn point(n: usize, params: &Params) -> Self {
        let r = params.r.unwrap_or(0);
        let s = params.s.unwrap_or(0);
        let k = params.k.unwrap_or(0);
        Grid { orders: n..=n, r: r..=r, s: s..=s, k: k..=k, random_seeds: 0, families: None }
    }
}

/// Sequences exercised at order `n`: U, V, `count` seeded random W and the
/// all-zero W. The random seeds depend only on `n`.
pub fn grid_sequences(n: usize, count: usize) -> Vec<SequenceSpec> {
    let mut out = vec![SequenceSpec::fibonacci(n).expect("order >= 2"), SequenceSpec::lucas(n).expect("order >= 2")];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    for _ in 0..count {
        let seeds: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        out.push(SequenceSpec::generalized(seeds).expect("order >= 2"));
    }
    out.push(SequenceSpec::zero(n).expect("order >= 2"));
    out
}

struct Unit<'a> {
    id_index: usize,
    desc: &'a IdentityDescriptor,
    spec: SequenceSpec,
}

struct UnitResult {
    points: u64,
    failures: Vec<Failure>,
    elapsed: Duration,
}

fn run_unit(unit: &Unit<'_>, grid: &Grid) -> UnitResult {
    let start = Instant::now();
    let desc = unit.desc;
    let sig = desc.signature;
    let n = unit.spec.order();
    let mut ctx = EvalContext::new(unit.spec.clone());
    let label = unit.spec.to_string();
    let rs: Vec<i64> = if sig.r { grid.r.clone().collect() } else { vec![0] };
    let ss: Vec<i64> = if sig.s { grid.s.clone().collect() } else { vec![0] };
    let ks: Vec<u32> = if sig.k { grid.k.clone().collect() } else { vec![0] };
    let mut points = 0;
    let mut failures = Vec::new();
    for &r in &rs {
        for &s in &ss {
            for &k in &ks {
                let point = Point { n: n as i64, r, s, k: k as i64 };
                let (lhs, rhs) = desc.sides(&mut ctx, &point);
                points += 1;
                if lhs != rhs {
                    let params = Params { r: sig.r.then_some(r), s: sig.s.then_some(s), k: sig.k.then_some(k) };
                    failures.push(Failure { n, sequence: label.clone(), params, lhs, rhs });
                }
            }
        }
    }
    UnitResult { points, failures, elapsed: start.elapsed() }
}

/// Evaluates each id over every applicable (n, sequence, r, s, k) in `grid`.
///
/// `jobs` is the worker count, 0 for one per core. Each worker builds its own
/// term caches. Reports come back in the order of `ids`, failures ordered by
/// n, sequence, then parameters.
pub fn run_grid(ids: &[&str], grid: &Grid, jobs: usize) -> Result<Vec<CheckReport>, CatalogError> {
    let reg = registry();
    let descs = ids.iter().map(|id| reg.get(id)).collect::<Result<Vec<_>, _>>()?;
    let mut units = Vec::new();
    for n in grid.orders.clone() {
        for spec in grid_sequences(n, grid.random_seeds) {
            if grid.families.as_ref().is_some_and(|f| !f.contains(&spec.family())) {
                continue;
            }
            for (id_index, desc) in descs.iter().enumerate() {
                if desc.applies_to(&spec) {
                    units.push(Unit { id_index, desc, spec: spec.clone() });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let results: Vec<UnitResult> = pool.install(|| units.par_iter().map(|u| run_unit(u, grid)).collect());

    let mut reports: Vec<CheckReport> = descs
        .iter()
        .map(|d| CheckReport { id: d.id.clone(), cardinality: 0, failures: Vec::new(), elapsed: Duration::ZERO })
        .collect();
    for (unit, result) in units.iter().zip(results) {
        let report = &mut reports[unit.id_index];
        report.cardinality += result.points;
        report.failures.extend(result.failures);
        report.elapsed += result.elapsed;
    }
    Ok(reports)
}
