use num_complex::Complex64;
use proptest::prelude::*;
use rayon::prelude::*;

use asymfree::experiments::mc_trace_moment;
use asymfree::haar::{sample_tuple, sample_unitary};
use asymfree::matrix::{
    check_unitary, normalized_trace, ComplexMatrix, DiagonalObservable, DiagonalPattern, DEFAULT_UNITARY_TOL, TRACE_TOL,
};
use asymfree::parse::parse_expression;
use asymfree::rng::SeededStream;
use asymfree::weingarten::{entry_moment_vanishes, exact_entry_moment, EntryFactor, EntryMomentSpec};
use asymfree::word::{Letter, ReducedWord};

fn letters(max_gen: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=max_gen, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) }).collect())
}

fn complex_matrix(k: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), k * k).prop_map(move |v| {
        let rows = v.chunks(k).map(|r| r.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).collect();
        ComplexMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent(w in letters(3, 20)) {
        let once = ReducedWord::reduce(w);
        prop_assert_eq!(ReducedWord::reduce(once.letters().iter().copied()), once);
    }

    #[test]
    fn concatenation_never_lengthens(a in letters(3, 12), b in letters(3, 12)) {
        let (a, b) = (ReducedWord::reduce(a), ReducedWord::reduce(b));
        prop_assert!(a.concat(&b).len() <= a.len() + b.len());
        prop_assert!(a.concat(&a.inverse()).is_identity());
    }

    #[test]
    fn inverse_evaluates_to_adjoint(w in letters(2, 8), k in 1usize..5, seed in any::<u64>()) {
        let w = ReducedWord::reduce(w);
        let us = sample_tuple(k, 2, &SeededStream::new(seed, 0));
        let direct = w.evaluate(&us).unwrap();
        let inverse = w.inverse().evaluate(&us).unwrap();
        prop_assert!(inverse.max_abs_diff(&direct.adjoint()) <= 1e-12);
    }

    #[test]
    fn trace_is_conjugation_invariant(seed in any::<u64>(), a in (1usize..7).prop_flat_map(complex_matrix)) {
        let k = a.dim();
        let u = sample_unitary(k, &SeededStream::new(seed, 1));
        let conjugated = u.as_matrix().mul(&a).mul_adjoint(u.as_matrix());
        prop_assert!((normalized_trace(&conjugated) - normalized_trace(&a)).norm() <= 1e-10);
    }

    #[test]
    fn samples_are_unitary_to_tolerance(k in 1usize..12, seed in any::<u64>()) {
        let u = sample_unitary(k, &SeededStream::new(seed, 2));
        prop_assert!(check_unitary(u.as_matrix(), DEFAULT_UNITARY_TOL).passed);
        let gram = u.as_matrix().mul_adjoint(u.as_matrix());
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(k)) <= k as f64 * DEFAULT_UNITARY_TOL);
    }

    #[test]
    fn patterns_are_traceless(k in 1usize..40, norm in 0.1f64..5.0) {
        for pattern in [DiagonalPattern::Alternating, DiagonalPattern::Balanced, DiagonalPattern::RootsOfUnity] {
            let impossible = match pattern {
                DiagonalPattern::Alternating => k % 2 == 1,
                DiagonalPattern::RootsOfUnity => k == 1,
                _ => false,
            };
            if impossible {
                prop_assert!(DiagonalObservable::new(k, pattern.clone(), norm).is_err());
                continue;
            }
            let x = DiagonalObservable::new(k, pattern.clone(), norm).unwrap();
            let trace: Complex64 = x.diag().iter().sum();
            let tol = if pattern == DiagonalPattern::RootsOfUnity { 1e-12 * k as f64 * norm } else { 0.0 };
            prop_assert!(trace.norm() <= tol, "{pattern:?}: trace {trace}");
            prop_assert!(x.diag().iter().all(|z| z.norm() <= norm * (1.0 + 1e-15)));
        }
    }

    #[test]
    fn explicit_diagonals_within_trace_tolerance(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..10)) {
        let mut diag: Vec<Complex64> = v.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let mean = diag.iter().sum::<Complex64>() / diag.len() as f64;
        diag.iter_mut().for_each(|z| *z -= mean);
        let k = diag.len();
        let x = DiagonalObservable::new(k, DiagonalPattern::Explicit(diag), 3.0).unwrap();
        prop_assert!(x.diag().iter().sum::<Complex64>().norm() <= TRACE_TOL);
    }
}

fn spec_strategy() -> impl Strategy<Value = (EntryMomentSpec, Vec<usize>, Vec<usize>)> {
    (2usize..=5).prop_flat_map(|k| {
        let factor = (1..=k, 1..=k, 1usize..=2).prop_map(|(i, j, g)| EntryFactor::new(i, j, g));
        let factors = prop::collection::vec(factor, 0..=3);
        let perm = Just((0..k).collect::<Vec<usize>>()).prop_shuffle();
        (factors.clone(), factors, perm.clone(), perm)
            .prop_map(move |(p, c, rows, cols)| (EntryMomentSpec { k, plain: p, conjugated: c }, rows, cols))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_rows_and_columns_preserves_moments((spec, rows, cols) in spec_strategy()) {
        let relabel = |v: &[EntryFactor]| -> Vec<EntryFactor> {
            v.iter().map(|f| EntryFactor::new(rows[f.row - 1] + 1, cols[f.col - 1] + 1, f.generator)).collect()
        };
        let moved = EntryMomentSpec { k: spec.k, plain: relabel(&spec.plain), conjugated: relabel(&spec.conjugated) };
        prop_assert_eq!(entry_moment_vanishes(&spec), entry_moment_vanishes(&moved));
        match (exact_entry_moment(&spec), exact_entry_moment(&moved)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn vanishing_specs_have_zero_moment((spec, _, _) in spec_strategy()) {
        if entry_moment_vanishes(&spec) {
            if let Ok(v) = exact_entry_moment(&spec) {
                prop_assert_eq!(v, num_rational::BigRational::from_integer(0.into()));
            }
        }
    }
}

// Multiplying by a phase maps u^p to e^{ip theta} u^p, so E tau(u^p) = 0.
#[test]
fn traces_of_powers_have_zero_mean() {
    const N: usize = 20_000;
    for k in [1usize, 3, 5] {
        let base = SeededStream::new(11, k as u64);
        for p in [1i32, 2, 3, -1, -2] {
            let values: Vec<Complex64> = (0..N)
                .into_par_iter()
                .map(|i| {
                    let u = sample_unitary(k, &base.substream(i as u64));
                    let a = if p > 0 { u.as_matrix().clone() } else { u.as_matrix().adjoint() };
                    let mut power = a.clone();
                    for _ in 1..p.unsigned_abs() {
                        power = power.mul(&a);
                    }
                    normalized_trace(&power)
                })
                .collect();
            let mean = values.iter().sum::<Complex64>() / N as f64;
            let var = values.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (N - 1) as f64;
            let se = (var / N as f64).sqrt();
            assert!(mean.norm() <= 4.0 * se, "k = {k}, p = {p}: mean {mean}, se {se}");
        }
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let expr = parse_expression("h1 x1 h2 x2 h1^-1 x3 h2^-1 x4").unwrap();
    let x = DiagonalObservable::new(6, DiagonalPattern::RootsOfUnity, 1.0).unwrap();
    let xs = vec![x; 4];
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_trace_moment(&expr, &xs, 6, 2, 3_000, 42).unwrap())
    };
    let one = run(1);
    for threads in [2, 5, 8] {
        let other = run(threads);
        assert_eq!(one.mean.re.to_bits(), other.mean.re.to_bits());
        assert_eq!(one.mean.im.to_bits(), other.mean.im.to_bits());
        assert_eq!(one.second_abs_moment.to_bits(), other.second_abs_moment.to_bits());
        assert_eq!(one.std_error_mean.to_bits(), other.std_error_mean.to_bits());
        assert_eq!(one.std_error_second.to_bits(), other.std_error_second.to_bits());
    }
}
