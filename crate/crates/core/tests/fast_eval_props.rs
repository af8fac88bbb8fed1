use nstep_core::fast_eval::{
    apply_shift, compose, doubling_mult_bound, matrix_power_oracle, naive_term, shift_vector, term_at, Counting,
    DoublingEvaluator, Exact, Modular, Ring,
};
use nstep_core::{SequenceSpec, TermCache};
use num_bigint::BigInt;
use proptest::prelude::*;

fn specs() -> impl Strategy<Value = SequenceSpec> {
    (0u8..3, 2usize..=8, prop::collection::vec(-50i64..=50, 8)).prop_map(|(f, n, s)| match f {
        0 => SequenceSpec::fibonacci(n).unwrap(),
        1 => SequenceSpec::lucas(n).unwrap(),
        _ => SequenceSpec::generalized(s.into_iter().take(n)).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn three_routes_agree_exactly(spec in specs(), r in -400i64..=400) {
        let naive = naive_term(&spec, r, &Exact).unwrap();
        prop_assert_eq!(term_at(&spec, r, &Exact), naive.clone());
        prop_assert_eq!(matrix_power_oracle(&spec, r, &Exact), naive);
    }

    #[test]
    fn modular_routes_agree(spec in specs(), r in -5000i64..=5000, m in 2u64..=u64::MAX) {
        let ring = Modular::new(m).unwrap();
        let naive = naive_term(&spec, r, &ring).unwrap();
        prop_assert_eq!(term_at(&spec, r, &ring), naive);
        prop_assert_eq!(matrix_power_oracle(&spec, r, &ring), naive);
    }

    #[test]
    fn modular_is_exact_reduced(spec in specs(), r in -300i64..=300, m in 2u64..=1_000_000_007) {
        let exact = term_at(&spec, r, &Exact);
        let ring = Modular::new(m).unwrap();
        prop_assert_eq!(ring.embed(&exact), term_at(&spec, r, &ring));
    }

    #[test]
    fn composition_adds_shifts(n in 2usize..=8, a in -300i64..=300, b in -300i64..=300) {
        let mut u = TermCache::new(SequenceSpec::fibonacci(n).unwrap());
        let sa = shift_vector(&mut u, a, &Exact).unwrap();
        let sb = shift_vector(&mut u, b, &Exact).unwrap();
        let sab = shift_vector(&mut u, a + b, &Exact).unwrap();
        let ab = compose(&sa, &sb, &Exact).unwrap();
        let ba = compose(&sb, &sa, &Exact).unwrap();
        prop_assert_eq!(ab.coeffs(), sab.coeffs());
        prop_assert_eq!(ba.coeffs(), sab.coeffs());
        prop_assert_eq!(ab.shift(), (a + b) as i128);
    }

    #[test]
    fn applying_a_shift_moves_the_window(spec in specs(), top in -100i64..=100, s in -100i64..=100) {
        let n = spec.order();
        let mut u = TermCache::new(SequenceSpec::fibonacci(n).unwrap());
        let mut w = TermCache::new(spec);
        let sv = shift_vector(&mut u, s, &Exact).unwrap();
        let window = w.window(top);
        prop_assert_eq!(apply_shift(&sv, &window, &Exact).unwrap(), w.value(top + s));
    }

    #[test]
    fn multiplications_within_bound(n in 2usize..=10, r in 1i64..=i64::MAX / 2) {
        let ring = Counting::new(Modular::new((1 << 61) - 1).unwrap());
        let spec = SequenceSpec::fibonacci(n).unwrap();
        let _ = term_at(&spec, r, &ring);
        let shift = (r - 1) as u128;
        let ceil_log = 64 - (r as u64 - 1).leading_zeros() as u64;
        prop_assert!(ring.multiplications() <= doubling_mult_bound(n, shift));
        prop_assert!(ring.multiplications() <= 4 * (n * n) as u64 * ceil_log.max(1));
    }
}

#[test]
fn evaluator_is_shared_across_families() {
    for n in 2..=6usize {
        let mut ev = DoublingEvaluator::new(n, &Exact).unwrap();
        for spec in [
            SequenceSpec::fibonacci(n).unwrap(),
            SequenceSpec::lucas(n).unwrap(),
            SequenceSpec::generalized((0..n as i64).map(|i| 3 * i - 4)).unwrap(),
        ] {
            let mut c = TermCache::new(spec.clone());
            for r in -60..=60 {
                assert_eq!(ev.term(&spec, r), c.value(r), "{spec} r={r}");
            }
        }
    }
}

#[test]
fn large_index_modular_agreement() {
    let ring = Modular::new(1_000_000_007).unwrap();
    for n in 2..=6usize {
        let spec = SequenceSpec::lucas(n).unwrap();
        for r in [9_999_999i64, -9_999_999] {
            let naive = naive_term(&spec, r, &ring).unwrap();
            assert_eq!(term_at(&spec, r, &ring), naive);
            assert_eq!(matrix_power_oracle(&spec, r, &ring), naive);
        }
    }
}

#[test]
fn tribonacci_negative_values() {
    let t = SequenceSpec::fibonacci(3).unwrap();
    let got: Vec<BigInt> = [-17, -18, -19].iter().map(|&r| term_at(&t, r, &Exact)).collect();
    assert_eq!(got, vec![BigInt::from(0), BigInt::from(-103), BigInt::from(159)]);
}
