mod common;

use finitude::algebra::{parse_polynomial, BivariatePolynomial};
use finitude::monodromy::monodromy_group;
use finitude::solvability::{classify_primitive, invertible_by_radicals, ritt_decompose, PrimitiveClass, Status};

#[test]
fn cubic_towers() {
    common::check_towers(31, 3, 25).unwrap();
}

#[test]
fn quartic_towers() {
    common::check_towers(41, 4, 25).unwrap();
}

#[test]
fn ritt_closure() {
    let mut r = common::rng(5);
    for case in 0..50 {
        let f = common::ritt_composition(&mut r, 30);
        let chain = ritt_decompose(&f);
        assert_eq!(chain.compose(), f, "case {case}");
        let v = invertible_by_radicals(&f).unwrap();
        assert_eq!(v.status, Status::Representable, "case {case}: {f} -> {chain}");
    }
}

#[test]
fn decomposition_reproduces_input() {
    let mut r = common::rng(6);
    for _ in 0..30 {
        let a = common::ritt_factor(&mut r, 4);
        let b = common::ritt_factor(&mut r, 4);
        let f = a.compose(&b);
        assert_eq!(ritt_decompose(&f).compose(), f);
    }
}

/// Polynomials shared with the command-line regression corpus.
const DECOMPOSE_CASES: &[&str] = &[
    "x^5 + x",
    "x^5 - 5*x^3 + 5*x",
    "x^7 + 3*x^2 - 1",
    "x^6",
    "x^5 + x^2 + 1",
    "2*(x-1)^5 + 7",
    "16*x^5 - 20*x^3 + 5*x",
    "x^6 + x + 1",
    "x^4 + x + 1",
    "(x^2 + 1)^3 + x^2",
];

#[test]
fn other_factors_have_unsolvable_inverse_monodromy() {
    for s in DECOMPOSE_CASES {
        let f = parse_polynomial(s).unwrap();
        let chain = ritt_decompose(&f);
        let other = chain.factors.iter().any(|g| classify_primitive(g) == PrimitiveClass::Other);
        let group = monodromy_group(&BivariatePolynomial::inverse_curve(&f)).unwrap().group;
        if other {
            assert!(!group.is_solvable(), "{s}");
        } else {
            assert!(group.is_solvable(), "{s}");
        }
    }
}

#[test]
fn quintic_two_paths_agree() {
    let f = parse_polynomial("x^5 + x").unwrap();
    assert_eq!(classify_primitive(&f), PrimitiveClass::Other);
    let g = monodromy_group(&BivariatePolynomial::inverse_curve(&f)).unwrap().group;
    assert_eq!(g.order(), 120);
}
