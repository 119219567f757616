mod common;

use finitude::algebra::{GaussianRational, RationalFunction, UnivariatePolynomial};
use finitude::differential::{
    generalized_riccati, integrate_rational, rational_witness_search, verify_exp_integral_witness, LinearODE, LogTerm,
};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Value of `sum lambda r_i'/r_i` computed in floating point from the enclosure centres.
fn numeric_log_derivative(t: &LogTerm, x: Complex64) -> Complex64 {
    match t {
        LogTerm::Rational { lambda, argument } => {
            lambda.to_complex() * argument.derivative().eval_complex(x) / argument.eval_complex(x)
        }
        LogTerm::Algebraic(a) => a
            .enclosures
            .iter()
            .map(|e| {
                let l = e.center;
                let coeff = |k: usize| a.argument[k].eval_complex(l);
                let (mut s, mut sx) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                for k in (0..a.argument.len()).rev() {
                    s = s * x + coeff(k);
                }
                for k in (1..a.argument.len()).rev() {
                    sx = sx * x + coeff(k) * k as f64;
                }
                l * sx / s
            })
            .sum(),
    }
}

#[test]
fn integration_soundness() {
    let mut r = common::rng(71);
    for case in 0..200 {
        let f = common::random_rational(&mut r, 8, 8);
        let form = integrate_rational(&f);
        assert_eq!(form.derivative(), f, "case {case}: {f} -> {form}");

        let mut args = Vec::new();
        for t in &form.logs {
            match t {
                LogTerm::Rational { lambda, argument } => {
                    assert!(!lambda.is_zero());
                    assert!(argument.is_monic() && argument.is_squarefree() && argument.deg() >= 1);
                    args.push(argument.clone());
                }
                LogTerm::Algebraic(a) => {
                    assert!(a.defining_polynomial.is_squarefree());
                    assert!(!a.defining_polynomial.eval(&GaussianRational::zero()).is_zero());
                    assert!(a.argument.last().unwrap().is_one());
                    assert_eq!(a.enclosures.len(), a.defining_polynomial.deg(), "case {case}");
                }
            }
        }
        for i in 0..args.len() {
            for j in i + 1..args.len() {
                assert!(args[i].gcd(&args[j]).is_one(), "case {case}");
            }
        }

        // independent floating-point evaluation of the logarithmic part
        let x = Complex64::new(0.37, 0.21);
        let (g, h) = finitude::differential::hermite_reduce(&f);
        assert_eq!(&g.derivative() + &h, f);
        let expected = h.eval_complex(x);
        let got: Complex64 = form.logs.iter().map(|t| numeric_log_derivative(t, x)).sum();
        assert!((got - expected).norm() <= 1e-6 * (1.0 + expected.norm()), "case {case}: {got} vs {expected}");
    }
}

/// `u = y'/y` for a polynomial `y` with integer roots, and a second-order equation it solves.
fn backward_ode(r: &mut ChaCha8Rng) -> (LinearODE, RationalFunction) {
    let mut y = UnivariatePolynomial::one();
    for _ in 0..r.gen_range(1..=3) {
        y = &y * &UnivariatePolynomial::from_ints(&[r.gen_range(-3..=3), 1]);
    }
    let u = RationalFunction::new(y.derivative(), y);
    let a1 = match r.gen_range(0..3) {
        0 => RationalFunction::zero(),
        1 => RationalFunction::from_poly(UnivariatePolynomial::from_ints(&[r.gen_range(-2..=2), r.gen_range(-2..=2)])),
        _ => RationalFunction::new(
            UnivariatePolynomial::from_ints(&[r.gen_range(1..=3)]),
            UnivariatePolynomial::from_ints(&[r.gen_range(-2..=2), 1]),
        ),
    };
    let a2 = -(&(&u.derivative() + &(&u * &u)) + &(&a1 * &u));
    (LinearODE::new(vec![a1, a2]).unwrap(), u)
}

/// Rational `y` with `y'/y = w`, when `w` has only simple poles with integer residues.
fn exp_integral(w: &RationalFunction) -> Option<RationalFunction> {
    let form = integrate_rational(w);
    if !form.r0.is_zero() {
        return None;
    }
    let mut y = RationalFunction::one();
    for t in &form.logs {
        match t {
            LogTerm::Rational { lambda, argument } if lambda.is_real() && lambda.re.is_integer() => {
                let e: i32 = lambda.re.to_integer().try_into().ok()?;
                y = &y * &RationalFunction::from_poly(argument.clone()).pow(e);
            }
            _ => return None,
        }
    }
    Some(y)
}

/// Whether the Wronskian of `fs` vanishes, i.e. the functions are linearly dependent.
fn dependent(fs: &[RationalFunction]) -> bool {
    let d = |f: &RationalFunction| f.derivative();
    match fs {
        [a, b] => (&(a * &d(b)) - &(&d(a) * b)).is_zero(),
        [a, b, c] => {
            let rows: Vec<[RationalFunction; 3]> =
                vec![[a.clone(), b.clone(), c.clone()], [d(a), d(b), d(c)], [d(&d(a)), d(&d(b)), d(&d(c))]];
            let m = |i: usize, j: usize| &rows[i][j];
            let minor = |j1: usize, j2: usize| &(m(1, j1) * m(2, j2)) - &(m(1, j2) * m(2, j1));
            let det = &(&(m(0, 0) * &minor(1, 2)) - &(m(0, 1) * &minor(0, 2))) + &(m(0, 2) * &minor(0, 1));
            det.is_zero()
        }
        _ => false,
    }
}

#[test]
fn riccati_correspondence() {
    let mut r = common::rng(72);
    for case in 0..40 {
        let (ode, u) = backward_ode(&mut r);
        assert!(verify_exp_integral_witness(&ode, &u), "case {case}");
        let p = generalized_riccati(&ode).unwrap();
        assert!(p.substitute(&u).unwrap().is_zero());
        let w = rational_witness_search(&ode).unwrap_or_else(|e| panic!("case {case}: {ode}: {e}"));
        if w.contains(&u) {
            continue;
        }
        // a two-dimensional family of rational solutions: y lies in the span of the returned ones
        let y = exp_integral(&u).unwrap();
        let mut fs = vec![y];
        fs.extend(w.iter().filter_map(exp_integral));
        assert!(fs.len() == 3 && dependent(&fs), "case {case}: {ode}: {u} not represented by {w:?}");
    }
    // third order: y = x^2 + 1 solves y''' + a_1 y'' + a_2 y' + a_3 y = 0 for a_3 chosen to fit
    let y = UnivariatePolynomial::from_ints(&[1, 0, 1]);
    let u = RationalFunction::new(y.derivative(), y.clone());
    let a1 = RationalFunction::x();
    let a2 = RationalFunction::from_int(3);
    let yr = RationalFunction::from_poly(y.clone());
    let d1 = yr.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let a3 = -(&(&(&d3 + &(&a1 * &d2)) + &(&a2 * &d1)) / &yr);
    let ode = LinearODE::new(vec![a1, a2, a3]).unwrap();
    assert!(verify_exp_integral_witness(&ode, &u));
    assert!(generalized_riccati(&ode).unwrap().substitute(&u).unwrap().is_zero());
}

#[test]
fn witness_soundness() {
    let mut r = common::rng(73);
    for _ in 0..60 {
        let a1 = common::random_rational(&mut r, 1, 1);
        let a2 = common::random_rational(&mut r, 2, 2);
        let ode = LinearODE::new(vec![a1, a2]).unwrap();
        if let Ok(w) = rational_witness_search(&ode) {
            for u in &w {
                assert!(verify_exp_integral_witness(&ode, u), "{ode}: {u}");
            }
        }
    }
    for _ in 0..20 {
        let (ode, _) = backward_ode(&mut r);
        for u in rational_witness_search(&ode).unwrap() {
            assert!(verify_exp_integral_witness(&ode, &u));
        }
    }
}
