use std::time::{Duration, Instant};

use nstep_core::catalog::{grid_sequences, registry, run_grid, CheckReport, EvalContext, Grid, Params, Point, Role};
use nstep_core::fast_eval::{
    matrix_power_oracle, naive_term, term_at, term_at_kind, Counting, Exact, Modular, Ring, RingKind, NAIVE_LIMIT,
};
use nstep_core::series::{gf, partial_sum_closed, series_coeffs, weighted_partial_sum};
use nstep_core::{Family, SequenceSpec, TermCache};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::output::Report;
use crate::{args, bfile, row, Algo, Cli, Command, SeqArgs, EXACT_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        UsageError(s)
    }
}

/// What a command produced. `verified` is false when a comparison failed;
/// `notes` go to stderr.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub verified: bool,
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, verified: true, notes: Vec::new() }
    }
}

type Res = Result<Outcome, UsageError>;

pub fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Seq { seq, from, to } => cmd_seq(seq, *from, *to),
        Command::Table { n } => cmd_table(n),
        Command::Check { all, ids, list, readings, family, n, r, s, k, random, jobs } => {
            if *list {
                return Ok(cmd_list());
            }
            let families = family.as_deref().map(families).transpose()?;
            let box_ = CheckBox {
                n: orders(n)?,
                r: args::int_set(r)?,
                s: args::int_set(s)?,
                k: args::int_set(k)?,
                families,
                random: *random,
            };
            if *readings {
                return cmd_readings(&box_, *jobs);
            }
            cmd_check(*all, ids, &box_, *jobs)
        }
        Command::Term { seq, r, modulus } => cmd_term(seq, *r, *modulus),
        Command::Gf { seq, terms } => cmd_gf(seq, *terms),
        Command::Sum { seq, x, k } => cmd_sum(seq, x, *k),
        Command::Bench { seq, r, modulus, algo, repeat } => cmd_bench(seq, *r, *modulus, *algo, *repeat),
        Command::VerifyBfile { path, seq, offset } => cmd_verify_bfile(path, seq, *offset),
    }
}

fn build_spec(seq: &SeqArgs) -> Result<SequenceSpec, UsageError> {
    let family = args::family(&seq.family)?;
    let seeds = seq.seeds.as_deref().map(args::seeds).transpose()?;
    Ok(args::spec(family, seq.n, seeds)?)
}

fn seq_report(command: &str, spec: &SequenceSpec, header: &[&str]) -> Report {
    let mut rep = Report::new(command, header).param("family", spec.family()).param("n", spec.order());
    if spec.family() == Family::W {
        let seeds: Vec<String> = spec.seeds().iter().map(|s| s.to_string()).collect();
        rep = rep.param("seeds", seeds.join(","));
    }
    rep
}

fn cmd_seq(seq: &SeqArgs, from: i64, to: i64) -> Res {
    if from > to {
        return Err(UsageError(format!("--from {from} is past --to {to}")));
    }
    if to - from > 1_000_000 {
        return Err(UsageError("at most 1000001 terms per call".into()));
    }
    let spec = build_spec(seq)?;
    let mut rep = seq_report("seq", &spec, &["r", "value"]).param("from", from).param("to", to);
    let mut cache = TermCache::new(spec);
    for r in from..=to {
        rep.push(row![r, cache.term(r)]);
    }
    Ok(Outcome::ok(rep))
}

fn orders(text: &str) -> Result<Vec<usize>, UsageError> {
    args::int_set(text)?
        .into_iter()
        .map(|n| match usize::try_from(n) {
            Ok(n) if n >= 2 => Ok(n),
            _ => Err(UsageError(format!("order must be at least 2, got {n}"))),
        })
        .collect()
}

fn families(text: &str) -> Result<Vec<Family>, UsageError> {
    text.split(',').map(|f| args::family(f.trim()).map_err(UsageError)).collect()
}

/// (name, symbol) of the U and V members at order `n`.
fn names(n: usize) -> [(String, &'static str); 2] {
    let (stem, u, v) = match n {
        2 => return [("Fibonacci".into(), "F"), ("Lucas".into(), "L")],
        3 => return [("Tribonacci".into(), "T"), ("Trib-Lucas".into(), "K")],
        4 => return [("Tetranacci".into(), "M"), ("Tetra-Lucas".into(), "R")],
        5 => return [("Pentanacci".into(), "P"), ("Penta-Lucas".into(), "Q")],
        6 => ("Sextanacci", "S", "-"),
        7 => ("Heptanacci", "H", "-"),
        8 => ("Octanacci", "O", "-"),
        9 => ("Nanonacci", "N", "-"),
        _ => return [(format!("{n}-step Fibonacci"), "-"), (format!("{n}-step Lucas"), "-")],
    };
    [(stem.into(), u), (format!("{stem}-Lucas"), v)]
}

const TABLE_COLUMNS: std::ops::RangeInclusive<i64> = -4..=10;

fn cmd_table(n: &str) -> Res {
    let ns = orders(n)?;
    let mut header = vec!["n".to_string(), "name".into(), "symbol".into()];
    header.extend(TABLE_COLUMNS.map(|r| r.to_string()));
    let hdr: Vec<&str> = header.iter().map(String::as_str).collect();
    let list: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    let mut rep = Report::new("table", &hdr).param("n", list.join(","));
    for &n in &ns {
        let specs = [SequenceSpec::fibonacci(n), SequenceSpec::lucas(n)];
        for (spec, (name, sym)) in specs.into_iter().zip(names(n)) {
            let mut cache = TermCache::new(spec.expect("order checked"));
            let mut row = row![n, name, sym];
            row.extend(TABLE_COLUMNS.map(|r| cache.term(r).to_string()));
            rep.push(row);
        }
    }
    Ok(Outcome::ok(rep))
}

fn cmd_list() -> Outcome {
    let table = registry().index_table();
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().expect("header").split('\t').collect();
    let mut rep = Report::new("check", &header).param("list", true);
    for line in lines {
        rep.push(line.split('\t').map(str::to_string).collect());
    }
    Outcome::ok(rep)
}

struct CheckBox {
    n: Vec<usize>,
    r: Vec<i64>,
    s: Vec<i64>,
    k: Vec<i64>,
    families: Option<Vec<Family>>,
    random: usize,
}

impl CheckBox {
    fn grid(&self, n: usize) -> Result<Grid, UsageError> {
        let range = |name: &str, set: &[i64]| {
            args::contiguous(set).ok_or_else(|| UsageError(format!("--{name} must be a contiguous range")))
        };
        let k = range("k", &self.k)?;
        if *k.start() < 0 || *k.end() > u32::MAX as i64 {
            return Err(UsageError("--k must be non-negative".into()));
        }
        Ok(Grid {
            orders: n..=n,
            r: range("r", &self.r)?,
            s: range("s", &self.s)?,
            k: *k.start() as u32..=*k.end() as u32,
            random_seeds: self.random,
            families: self.families.clone(),
        })
    }

    fn describe(&self, rep: Report) -> Report {
        let join = |v: &[i64]| match args::contiguous(v) {
            Some(r) if v.len() > 1 => format!("{}..{}", r.start(), r.end()),
            _ => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        };
        let ns: Vec<i64> = self.n.iter().map(|&n| n as i64).collect();
        let mut rep =
            rep.param("n", join(&ns)).param("r", join(&self.r)).param("s", join(&self.s)).param("k", join(&self.k));
        if let Some(f) = &self.families {
            let f: Vec<String> = f.iter().map(|f| f.to_string()).collect();
            rep = rep.param("family", f.join(","));
        }
        rep.param("random", self.random)
    }

    /// Runs `ids` one order at a time and merges the reports per id.
    fn sweep(&self, ids: &[&str], jobs: usize) -> Result<Vec<CheckReport>, UsageError> {
        let mut merged: Vec<CheckReport> = Vec::new();
        for &n in &self.n {
            let reports = run_grid(ids, &self.grid(n)?, jobs).map_err(|e| UsageError(e.to_string()))?;
            if merged.is_empty() {
                merged = reports;
                continue;
            }
            for (acc, rep) in merged.iter_mut().zip(reports) {
                acc.cardinality += rep.cardinality;
                acc.failures.extend(rep.failures);
                acc.elapsed += rep.elapsed;
            }
        }
        Ok(merged)
    }
}

fn cmd_check(all: bool, ids: &[String], box_: &CheckBox, jobs: usize) -> Res {
    let reg = registry();
    let ids: Vec<&str> = if all {
        reg.identity_ids()
    } else if ids.is_empty() {
        return Err(UsageError("give --all, --id ID, --list or --readings".into()));
    } else {
        ids.iter().map(String::as_str).collect()
    };
    for id in &ids {
        reg.get(id).map_err(|e| UsageError(e.to_string()))?;
    }
    if let [id] = ids[..] {
        if !all && single_point(id, box_) {
            return check_point(id, box_);
        }
    }
    let start = Instant::now();
    let reports = box_.sweep(&ids, jobs)?;
    let elapsed = start.elapsed();
    let header = ["id", "points", "failures", "verdict", "n", "sequence", "params", "lhs", "rhs"];
    let mut rep = box_.describe(Report::new("check", &header));
    let mut notes = Vec::new();
    let mut failing = 0;
    for r in &reports {
        let verdict = match (r.cardinality, r.passed()) {
            (0, _) => "skipped",
            (_, true) => "pass",
            (_, false) => "FAIL",
        };
        let mut row = row![r.id, r.cardinality, r.failures.len(), verdict];
        match r.failures.first() {
            Some(f) => {
                failing += 1;
                row.extend(row![f.n, f.sequence, f.params, f.lhs, f.rhs]);
                for f in r.failures.iter().take(5) {
                    notes.push(format!("{} n={} {} {}: {} != {}", r.id, f.n, f.sequence, f.params, f.lhs, f.rhs));
                }
            }
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        rep.push(row);
    }
    let points: u64 = reports.iter().map(|r| r.cardinality).sum();
    notes.push(format!("{} ids, {points} points, {failing} failing, {:.2}s", reports.len(), elapsed.as_secs_f64()));
    Ok(Outcome { report: rep, verified: failing == 0, notes })
}

fn single_point(id: &str, box_: &CheckBox) -> bool {
    let sig = registry().get(id).expect("checked").signature;
    box_.n.len() == 1 && (!sig.r || box_.r.len() == 1) && (!sig.s || box_.s.len() == 1) && (!sig.k || box_.k.len() == 1)
}

/// Both sides for each applicable sequence at one point.
fn check_point(id: &str, box_: &CheckBox) -> Res {
    let desc = registry().get(id).expect("checked");
    let sig = desc.signature;
    let n = box_.n[0];
    let k = box_.k[0];
    if k < 0 {
        return Err(UsageError("--k must be non-negative".into()));
    }
    let params = Params { r: sig.r.then_some(box_.r[0]), s: sig.s.then_some(box_.s[0]), k: sig.k.then_some(k as u32) };
    let point = Point { n: n as i64, r: box_.r[0], s: box_.s[0], k };
    let header = ["id", "sequence", "params", "lhs", "rhs", "verdict"];
    let mut rep = box_.describe(Report::new("check", &header));
    let mut verified = true;
    for spec in grid_sequences(n, box_.random) {
        if !desc.applies_to(&spec) || box_.families.as_ref().is_some_and(|f| !f.contains(&spec.family())) {
            continue;
        }
        let (lhs, rhs) = desc.sides(&mut EvalContext::new(spec.clone()), &point);
        let pass = lhs == rhs;
        verified &= pass;
        rep.push(row![id, spec, params, lhs, rhs, if pass { "pass" } else { "FAIL" }]);
    }
    if rep.rows.is_empty() {
        return Err(UsageError(format!("{id} does not apply to any selected sequence of order {n}")));
    }
    Ok(Outcome { report: rep, verified, notes: Vec::new() })
}

/// Runs every reading fixture per order. Always exits 0: the point is the
/// verdict table, not a pass/fail gate.
fn cmd_readings(box_: &CheckBox, jobs: usize) -> Res {
    let reg = registry();
    let ids = reg.reading_ids();
    let header = ["id", "n", "points", "failures", "verdict", "question"];
    let mut rep = box_.describe(Report::new("check", &header)).param("readings", true);
    for &n in &box_.n {
        let single = CheckBox {
            n: vec![n],
            r: box_.r.clone(),
            s: box_.s.clone(),
            k: box_.k.clone(),
            families: box_.families.clone(),
            random: box_.random,
        };
        for r in single.sweep(&ids, jobs)? {
            if r.cardinality == 0 {
                continue;
            }
            let question = match reg.get(&r.id).expect("registered").role {
                Role::Reading { question } => question,
                Role::Identity => "",
            };
            let verdict = if r.passed() { "holds" } else { "fails" };
            rep.push(row![r.id, n, r.cardinality, r.failures.len(), verdict, question]);
        }
    }
    Ok(Outcome::ok(rep))
}

fn ring_kind(modulus: Option<u64>) -> Result<RingKind, UsageError> {
    match modulus {
        None => Ok(RingKind::Exact),
        Some(m) => RingKind::modular(m).map_err(|e| UsageError(e.to_string())),
    }
}

fn cmd_term(seq: &SeqArgs, r: i64, modulus: Option<u64>) -> Res {
    let spec = build_spec(seq)?;
    let kind = ring_kind(modulus)?;
    if kind == RingKind::Exact && r.unsigned_abs() > EXACT_LIMIT as u64 {
        return Err(UsageError(format!("|r| > {EXACT_LIMIT} needs --mod")));
    }
    let rep = seq_report("term", &spec, &["r", "value"]).param("ring", kind);
    let mut rep = rep.param("r", r);
    rep.push(row![r, term_at_kind(&spec, r, kind)]);
    Ok(Outcome::ok(rep))
}

fn cmd_gf(seq: &SeqArgs, terms: usize) -> Res {
    let spec = build_spec(seq)?;
    let f = gf(&spec);
    let mut rep = seq_report("gf", &spec, &["part", "index", "value"]).param("terms", terms);
    rep.push(row!["num", "", f.num()]);
    rep.push(row!["den", "", f.den()]);
    for (j, c) in series_coeffs(&f, terms).iter().enumerate() {
        rep.push(row!["coeff", j, c]);
    }
    Ok(Outcome::ok(rep))
}

fn cmd_sum(seq: &SeqArgs, x: &str, k: u32) -> Res {
    let spec = build_spec(seq)?;
    let x: BigRational = args::rational(x)?;
    let mut cache = TermCache::new(spec.clone());
    let closed = partial_sum_closed(&mut cache, &x, k).map_err(|e| UsageError(e.to_string()))?;
    let direct = weighted_partial_sum(&mut cache, &x, k);
    let mut rep = seq_report("sum", &spec, &["x", "k", "closed", "direct", "verdict"]).param("x", &x).param("k", k);
    let pass = closed == direct;
    rep.push(row![x, k, closed, direct, if pass { "pass" } else { "FAIL" }]);
    Ok(Outcome { report: rep, verified: pass, notes: Vec::new() })
}

/// `4 n^2 ceil(log2 |r|)`, the advertised multiplication budget.
pub fn mult_budget(n: usize, r: i64) -> u64 {
    let r = r.unsigned_abs().max(2);
    let ceil_log = 64 - (r - 1).leading_zeros() as u64;
    4 * (n * n) as u64 * ceil_log
}

fn timed<R: Ring>(
    ring: &Counting<R>,
    repeat: u32,
    mut f: impl FnMut(&Counting<R>) -> BigInt,
) -> (BigInt, Duration, u64) {
    let mut best = Duration::MAX;
    let mut value = BigInt::default();
    let mut muls = 0;
    for _ in 0..repeat.max(1) {
        ring.reset();
        let start = Instant::now();
        value = f(ring);
        best = best.min(start.elapsed());
        muls = ring.multiplications();
    }
    (value, best, muls)
}

fn bench_in<R: Ring>(
    spec: &SequenceSpec,
    r: i64,
    algos: &[Algo],
    repeat: u32,
    inner: R,
) -> Vec<(Algo, BigInt, Duration, u64)> {
    let ring = Counting::new(inner);
    algos
        .iter()
        .map(|&algo| {
            let (v, t, m) = match algo {
                Algo::Doubling => timed(&ring, repeat, |c| c.to_bigint(&term_at(spec, r, c))),
                Algo::Matrix => timed(&ring, repeat, |c| c.to_bigint(&matrix_power_oracle(spec, r, c))),
                _ => timed(&ring, repeat, |c| c.to_bigint(&naive_term(spec, r, c).expect("limit checked"))),
            };
            (algo, v, t, m)
        })
        .collect()
}

fn cmd_bench(seq: &SeqArgs, r: i64, modulus: Option<u64>, algo: Algo, repeat: u32) -> Res {
    let spec = build_spec(seq)?;
    let kind = ring_kind(modulus)?;
    if kind == RingKind::Exact && r.unsigned_abs() > EXACT_LIMIT as u64 {
        return Err(UsageError(format!("|r| > {EXACT_LIMIT} needs --mod")));
    }
    let naive_ok = r.unsigned_abs() <= NAIVE_LIMIT;
    let mut notes = Vec::new();
    let algos: Vec<Algo> = match algo {
        Algo::Naive if !naive_ok => {
            return Err(UsageError(format!(
                "naive evaluation refused for |r| = {} (limit {NAIVE_LIMIT})",
                r.unsigned_abs()
            )))
        }
        Algo::All => {
            let mut v = vec![Algo::Doubling, Algo::Matrix];
            if naive_ok {
                v.push(Algo::Naive);
            } else {
                notes.push(format!("naive skipped: |r| exceeds {NAIVE_LIMIT}"));
            }
            v
        }
        one => vec![one],
    };
    let results = match kind {
        RingKind::Exact => bench_in(&spec, r, &algos, repeat, Exact),
        RingKind::Modular(m) => bench_in(&spec, r, &algos, repeat, Modular::new(m).expect("validated")),
    };
    let budget = mult_budget(spec.order(), r);
    let header = ["algo", "value", "micros", "multiplications", "budget", "verdict"];
    let mut rep = seq_report("bench", &spec, &header).param("r", r).param("ring", kind).param("repeat", repeat);
    let mut verified = true;
    let reference = results[0].1.clone();
    for (algo, value, time, muls) in &results {
        let name = format!("{algo:?}").to_lowercase();
        let within = *algo != Algo::Doubling || *muls <= budget;
        let agrees = *value == reference;
        verified &= within && agrees;
        let verdict = match (within, agrees) {
            (true, true) => "ok",
            (false, _) => "over budget",
            (true, false) => "disagrees",
        };
        let budget_cell = if *algo == Algo::Doubling { budget.to_string() } else { String::new() };
        rep.push(row![name, value, time.as_micros(), muls, budget_cell, verdict]);
    }
    Ok(Outcome { report: rep, verified, notes })
}

fn cmd_verify_bfile(path: &std::path::Path, seq: &SeqArgs, offset: i64) -> Res {
    let spec = build_spec(seq)?;
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let records = bfile::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let header = ["line", "index", "r", "expected", "found", "verdict"];
    let mut rep = seq_report("verify-bfile", &spec, &header).param("path", path.display()).param("offset", offset);
    let mut cache = TermCache::new(spec);
    let mut notes = Vec::new();
    for rec in &records {
        let r =
            rec.index.checked_add(offset).ok_or_else(|| UsageError(format!("line {}: index overflows", rec.line)))?;
        if r.unsigned_abs() > EXACT_LIMIT as u64 {
            return Err(UsageError(format!("line {}: index {r} is beyond {EXACT_LIMIT}", rec.line)));
        }
        let expected = cache.term(r);
        let ok = *expected == rec.value;
        if !ok {
            notes.push(format!("line {}: index {} expected {expected}, found {}", rec.line, rec.index, rec.value));
        }
        rep.push(row![rec.line, rec.index, r, expected, rec.value, if ok { "match" } else { "MISMATCH" }]);
    }
    notes.push(format!(
        "{} comparisons, {} mismatches",
        records.len(),
        rep.rows.iter().filter(|r| r[5] != "match").count()
    ));
    let verified = rep.rows.iter().all(|r| r[5] == "match");
    Ok(Outcome { report: rep, verified, notes })
}
