mod common;

use finitude::fuchsian::{
    infinity_monodromy, simultaneous_triangularizable, small_norm_verdict, system_monodromy, FuchsianSystem,
    TriangularOutcome, Verdict, DEFAULT_TOL,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use common::{c, random_matrix, random_system, random_upper, rel};

#[test]
fn single_pole_matches_matrix_exponential() {
    let mut r = common::rng(81);
    for case in 0..20 {
        let n = r.gen_range(1..=4);
        let a = random_matrix(&mut r, n, 0.6);
        let pole = c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let sys = FuchsianSystem::new(vec![pole], vec![a.clone()]).unwrap();
        let m = system_monodromy(&sys, DEFAULT_TOL).unwrap();
        let expected = (&a * c(0.0, std::f64::consts::TAU)).exp();
        let err = rel(&m.loops[0].matrix, &expected);
        assert!(err < 1e-6, "case {case}: error {err}");
    }
}

#[test]
fn determinant_trace_relation() {
    let mut r = common::rng(82);
    for case in 0..20 {
        let sys = random_system(&mut r);
        let m = system_monodromy(&sys, DEFAULT_TOL).unwrap();
        assert_eq!(m.loops.len(), sys.poles().len());
        for l in &m.loops {
            let expected = (sys.residues()[l.pole].trace() * c(0.0, std::f64::consts::TAU)).exp();
            // LU: the closed-form small-matrix determinant cancels badly
            let det = l.matrix.clone().lu().determinant();
            assert!((det - expected).norm() <= 1e-6 * expected.norm().max(1.0), "case {case}: {det} vs {expected}");
        }
    }
}

#[test]
fn product_relation_at_infinity() {
    let mut r = common::rng(83);
    for case in 0..10 {
        let sys = random_system(&mut r);
        let m = system_monodromy(&sys, DEFAULT_TOL).unwrap();
        let inf = infinity_monodromy(&sys, m.base, DEFAULT_TOL).unwrap();
        let n = sys.dimension();
        let id = DMatrix::<Complex64>::identity(n, n);
        let prod = m.ordered_product();
        // the residual of a product scales with the norms of its factors
        let residual = (&prod * &inf - &id).norm() / (prod.norm() * inf.norm());
        assert!(residual < 1e-6, "case {case}: {residual}");
        // LU: the closed-form small-matrix inverse loses digits on ill-conditioned input
        let err = rel(&prod, &inf.clone().lu().try_inverse().unwrap());
        assert!(err < 1e-6, "case {case}: {err:e}");
    }
}

#[test]
fn sl2_pair_verdict() {
    let e = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1e-3, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let f = e.transpose();
    let sys = FuchsianSystem::new(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![e, f]).unwrap();
    match small_norm_verdict(&sys).unwrap() {
        Verdict::NotRepresentable { norms, obstruction, .. } => {
            assert_eq!(norms, vec![1e-3, 1e-3]);
            assert_eq!(obstruction.pair, Some((0, 1)));
        }
        v => panic!("unexpected {v:?}"),
    }
}

fn below_diagonal_ok(mats: &[DMatrix<Complex64>], tol: f64) -> bool {
    match simultaneous_triangularizable(mats, tol).unwrap().outcome {
        TriangularOutcome::Yes(t) => mats.iter().zip(&t.conjugated).all(|(m, c)| {
            let n = m.nrows();
            (0..n).all(|i| (0..i).all(|j| c[(i, j)].norm() <= tol * m.norm()))
        }),
        TriangularOutcome::No(_) => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commuting_tuples_triangularize(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=4) {
        let mut r = common::rng(seed);
        let s = random_matrix(&mut r, n, 1.0) + DMatrix::identity(n, n) * c(2.0, 0.0);
        let s_inv = s.clone().try_inverse().unwrap();
        // polynomials in one matrix commute
        let base = random_matrix(&mut r, n, 1.0);
        let mut mats = Vec::new();
        for _ in 0..k {
            let mut p = DMatrix::<Complex64>::zeros(n, n);
            let mut pw = DMatrix::<Complex64>::identity(n, n);
            for _ in 0..3 {
                p += &pw * c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
                pw = &pw * &base;
            }
            mats.push(p);
        }
        prop_assert!(below_diagonal_ok(&mats, 1e-8));
        // a common similarity of triangular matrices
        let tri: Vec<DMatrix<Complex64>> = (0..k).map(|_| &s * random_upper(&mut r, n) * &s_inv).collect();
        prop_assert!(below_diagonal_ok(&tri, 1e-8));
    }

    #[test]
    fn generic_pairs_are_not_triangularizable(seed in any::<u64>(), n in 2usize..=6) {
        let mut r = common::rng(seed);
        let mats = vec![random_matrix(&mut r, n, 1.0), random_matrix(&mut r, n, 1.0)];
        let report = simultaneous_triangularizable(&mats, 1e-8).unwrap();
        match report.outcome {
            TriangularOutcome::No(o) => prop_assert_eq!(o.subspace.ncols(), n),
            TriangularOutcome::Yes(_) => prop_assert!(false, "generic pair triangularized"),
        }
    }
}
