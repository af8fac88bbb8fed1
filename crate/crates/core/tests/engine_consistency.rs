//! The specialised catalog entries must agree with the generic lemma engines
//! applied to the matching linear relation, up to a known scale factor.

use nstep_core::catalog::lemmas::{lemma_binomial, lemma_double_binomial, lemma_three_term, qpow, LinearRelation};
use nstep_core::catalog::{grid_sequences, registry, EvalContext, Point};
use nstep_core::{SequenceSpec, TermCache};
use num_rational::BigRational;

type Engine = fn(&LinearRelation, u8, &mut dyn FnMut(i64) -> BigRational, i64, u32) -> (BigRational, BigRational);

fn three(
    rel: &LinearRelation,
    v: u8,
    x: &mut dyn FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> (BigRational, BigRational) {
    lemma_three_term(rel, v, &mut |i| x(i), r, k).unwrap()
}

fn binom(
    rel: &LinearRelation,
    v: u8,
    x: &mut dyn FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> (BigRational, BigRational) {
    lemma_binomial(rel, v, &mut |i| x(i), r, k).unwrap()
}

fn double(
    rel: &LinearRelation,
    v: u8,
    x: &mut dyn FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> (BigRational, BigRational) {
    lemma_double_binomial(rel, v, &mut |i| x(i), r, k).unwrap()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

struct Case {
    id: &'static str,
    engine: Engine,
    variant: u8,
    relation: fn(i64) -> LinearRelation,
    // lemma r from (n, r, k)
    shift_r: fn(i64, i64, i64) -> i64,
    scale: fn(i64) -> BigRational,
}

fn two_step(n: i64) -> LinearRelation {
    LinearRelation::integer(&[2, -1], &[1, n + 1]).unwrap()
}

fn squared(n: i64) -> LinearRelation {
    LinearRelation::integer(&[4, -4, 1], &[1, 2, 2 * n + 2]).unwrap()
}

fn same(_: i64, r: i64, _: i64) -> i64 {
    r
}

fn cases() -> Vec<Case> {
    vec![
        Case { id: "GEO-1", engine: three, variant: 1, relation: two_step, shift_r: same, scale: |k| -qpow(&q(2), k) },
        Case { id: "GEO-2", engine: three, variant: 2, relation: two_step, shift_r: same, scale: |_| q(1) },
        Case {
            id: "GEO-3",
            engine: three,
            variant: 3,
            relation: two_step,
            shift_r: |n, r, k| r - (k + 1) * n,
            scale: |k| qpow(&q(2), k),
        },
        Case { id: "BINOM-1", engine: binom, variant: 1, relation: two_step, shift_r: same, scale: |_| q(1) },
        Case { id: "BINOM-2", engine: binom, variant: 2, relation: two_step, shift_r: same, scale: |_| q(1) },
        Case { id: "BINOM-3", engine: binom, variant: 3, relation: two_step, shift_r: same, scale: |k| qpow(&q(2), k) },
        Case { id: "DBL-1", engine: double, variant: 1, relation: squared, shift_r: same, scale: |_| q(1) },
        Case { id: "DBL-2", engine: double, variant: 2, relation: squared, shift_r: same, scale: |k| qpow(&q(-4), k) },
        Case { id: "DBL-3", engine: double, variant: 3, relation: squared, shift_r: same, scale: |k| qpow(&q(4), k) },
        Case { id: "DBL-4", engine: double, variant: 4, relation: squared, shift_r: same, scale: |k| qpow(&q(-4), -k) },
        Case { id: "DBL-5", engine: double, variant: 5, relation: squared, shift_r: same, scale: |k| qpow(&q(4), -k) },
        Case { id: "DBL-6", engine: double, variant: 6, relation: squared, shift_r: same, scale: |k| qpow(&q(4), k) },
    ]
}

#[test]
fn specialised_entries_match_lemma_engines() {
    let reg = registry();
    for case in cases() {
        let desc = reg.get(case.id).unwrap();
        for n in 2..=6usize {
            let ni = n as i64;
            let rel = (case.relation)(ni);
            for spec in grid_sequences(n, 2) {
                let mut ctx = EvalContext::new(spec.clone());
                let mut cache = TermCache::new(spec.clone());
                let mut x = |i: i64| BigRational::from_integer(cache.value(i));
                for r in -8..=8 {
                    for k in 0..=5i64 {
                        let (ls, rs) = desc.sides(&mut ctx, &Point { n: ni, r, s: 0, k });
                        let (ll, rl) = (case.engine)(&rel, case.variant, &mut x, (case.shift_r)(ni, r, k), k as u32);
                        let c = (case.scale)(k);
                        let at = format!("{} n={n} {spec} r={r} k={k}", case.id);
                        assert_eq!(ls, &ll * &c, "lhs {at}");
                        assert_eq!(rs, &rl * &c, "rhs {at}");
                    }
                }
            }
        }
    }
}

#[test]
fn tribonacci_103_sums_follow_from_the_lemma() {
    // T_r = 56 T_{r+17} - 103 T_{r+16}, read as a relation with negative offsets
    let rel = LinearRelation::integer(&[56, -103], &[-17, -16]).unwrap();
    let reg = registry();
    for spec in grid_sequences(3, 3) {
        let mut cache = TermCache::new(spec.clone());
        let mut x = |i: i64| BigRational::from_integer(cache.value(i));
        for r in -30..=30 {
            assert!(rel.holds_at(&mut x, r), "{spec} r={r}");
        }
        let mut ctx = EvalContext::new(spec.clone());
        for id in ["TRIB-103-SUM-1", "TRIB-103-SUM-2", "TRIB-103-SUM-3"] {
            let desc = reg.get(id).unwrap();
            for r in -6..=6 {
                for k in 0..=4 {
                    let (ls, rs) = desc.sides(&mut ctx, &Point { n: 3, r, s: 0, k });
                    assert_eq!(ls, rs, "{id} {spec} r={r} k={k}");
                }
            }
        }
    }
}

#[test]
fn lemma_engines_hold_on_their_own() {
    for n in 2..=6usize {
        let ni = n as i64;
        let spec = SequenceSpec::generalized((0..ni).map(|i| 2 * i * i - 5)).unwrap();
        let mut cache = TermCache::new(spec);
        let mut x = |i: i64| BigRational::from_integer(cache.value(i));
        for r in -6..=6 {
            for k in 0..=4u32 {
                for v in 1..=3 {
                    let (l, rt) = three(&two_step(ni), v, &mut x, r, k);
                    assert_eq!(l, rt);
                    let (l, rt) = binom(&two_step(ni), v, &mut x, r, k);
                    assert_eq!(l, rt);
                }
                for v in 1..=6 {
                    let (l, rt) = double(&squared(ni), v, &mut x, r, k);
                    assert_eq!(l, rt);
                }
            }
        }
    }
}
