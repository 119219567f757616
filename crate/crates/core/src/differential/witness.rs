//! Rational logarithmic derivatives of solutions of `y'' + a_1 y' + a_2 y = 0`.
//!
//! The substitution `y = z exp(-1/2 int a_1)` gives `z'' = r z` with
//! `r = a_1^2/4 + a_1'/2 - a_2`. A rational `v = z'/z` has the form `v = w + P'/P` where the
//! rational function `w` is assembled from the local behaviour of `r` at each pole and at
//! infinity, and `P` is monic of a degree fixed by the local exponents. `P` solves the linear
//! equation `P'' + 2w P' + (w' + w^2 - r) P = 0`, which is solved exactly over Q(i). The
//! witness is `u = v - a_1/2`.
//!
//! Only witnesses with coefficients in Q(i) are sought; local data outside Q(i) is dropped.

use rayon::prelude::*;
use thiserror::Error;

use num_traits::{One, Signed, Zero};

use crate::algebra::linear::solve;
use crate::algebra::{GaussianRational, RationalFunction, UnivariatePolynomial};

use super::{gaussian_roots, verify_exp_integral_witness, LinearODE};

/// Status reported for the reduction-of-order condition, which is not checked.
pub const REDUCTION_OF_ORDER: &str = "not evaluated";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("the rational witness search needs order 2, got {0}")]
    OrderNotTwo(usize),
    #[error("no rational witness with polynomial factor of degree at most {bound}")]
    NoneFound { bound: usize },
    #[error("a candidate needs a polynomial factor of degree {needed}, above the bound {bound}")]
    BoundExceeded { needed: usize, bound: usize },
    #[error("pole of order {order} at a root of {factor} outside Q(i)")]
    IrrationalPole { factor: String, order: usize },
}

#[derive(Clone, Debug, Default)]
pub struct WitnessOptions {
    /// Degree bound for the polynomial factor; `None` selects the automatic bound.
    pub degree_bound: Option<usize>,
}

/// One admissible choice at a place: the contribution to `w` and the exponent.
#[derive(Clone)]
struct Choice {
    part: RationalFunction,
    alpha: GaussianRational,
}

fn half() -> GaussianRational {
    GaussianRational::from_frac(1, 2)
}

/// `1/2 +- 1/2 sqrt(1 + 4b)` when the root lies in Q(i).
fn regular_exponents(b: &GaussianRational) -> Vec<GaussianRational> {
    let disc = &GaussianRational::one() + &(b * &GaussianRational::from_int(4));
    match disc.sqrt_exact() {
        Some(s) => {
            let h = half();
            let mut v = vec![&h + &(&h * &s), &h - &(&h * &s)];
            v.dedup();
            v
        }
        None => Vec::new(),
    }
}

/// First `count` coefficients of the power series `num / den` (`den(0) != 0`).
fn series_quotient(num: &UnivariatePolynomial, den: &UnivariatePolynomial, count: usize) -> Vec<GaussianRational> {
    let h0inv = den.coeff(0).inv().expect("nonzero constant term");
    let mut q: Vec<GaussianRational> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = num.coeff(j);
        for i in 1..=j {
            acc -= &(&den.coeff(i) * &q[j - i]);
        }
        q.push(&acc * &h0inv);
    }
    q
}

/// First `count` coefficients of the square root of a power series with leading term
/// `c[0]`, when `sqrt(c[0])` lies in Q(i).
fn series_sqrt(c: &[GaussianRational], count: usize) -> Option<Vec<GaussianRational>> {
    let s0 = c[0].sqrt_exact()?;
    let inv = (&s0 * &GaussianRational::from_int(2)).inv()?;
    let mut s = vec![s0];
    for k in 1..count {
        let mut acc = c.get(k).cloned().unwrap_or_else(GaussianRational::zero);
        for i in 1..k {
            acc -= &(&s[i] * &s[k - i]);
        }
        s.push(&acc * &inv);
    }
    Some(s)
}

/// Choices at a pole `c` of order `m >= 2` of `r = num/den`.
fn pole_choices(r: &RationalFunction, c: &GaussianRational, m: usize) -> Vec<Choice> {
    if m % 2 == 1 {
        return Vec::new();
    }
    let nu = m / 2;
    let t = UnivariatePolynomial::linear(GaussianRational::one(), -c.clone());
    let h = r.denominator().exact_div(&t.pow(m as u32));
    let num = r.numerator().shift(c);
    let h = h.shift(c);
    let coeffs = series_quotient(&num, &h, nu + 1);
    let simple = |a: &GaussianRational| RationalFunction::new(UnivariatePolynomial::constant(a.clone()), t.clone());
    if nu == 1 {
        return regular_exponents(&coeffs[0]).into_iter().map(|a| Choice { part: simple(&a), alpha: a }).collect();
    }
    let Some(s) = series_sqrt(&coeffs, nu - 1) else {
        return Vec::new();
    };
    let mut cross = GaussianRational::zero();
    for i in 0..=nu - 1 {
        let k = nu - 1 - i;
        if i <= nu - 2 && k <= nu - 2 {
            cross += &(&s[i] * &s[k]);
        }
    }
    let b = &coeffs[nu - 1] - &cross;
    let ratio = &b * &s[0].inv().unwrap();
    let nu_g = GaussianRational::from_int(nu as i64);
    // sum_j s_j (x - c)^j / (x - c)^nu, for j <= nu - 2
    let shifted = UnivariatePolynomial::new(s.clone()).shift(&-c.clone());
    let sqrt_part = RationalFunction::new(shifted, t.pow(nu as u32));
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let sg = GaussianRational::from_int(sign);
        let alpha = &half() * &(&(&sg * &ratio) + &nu_g);
        let part = &sqrt_part.scale(&sg) + &simple(&alpha);
        out.push(Choice { part, alpha });
    }
    out
}

/// Choices at infinity.
fn infinity_choices(r: &RationalFunction) -> Vec<Choice> {
    if r.is_zero() {
        return vec![
            Choice { part: RationalFunction::zero(), alpha: GaussianRational::zero() },
            Choice { part: RationalFunction::zero(), alpha: GaussianRational::one() },
        ];
    }
    let o = r.order_at_infinity();
    if o > 2 {
        return vec![
            Choice { part: RationalFunction::zero(), alpha: GaussianRational::zero() },
            Choice { part: RationalFunction::zero(), alpha: GaussianRational::one() },
        ];
    }
    if o == 2 {
        let b = &r.numerator().leading_coeff() * &r.denominator().leading_coeff().inv().unwrap();
        return regular_exponents(&b)
            .into_iter()
            .map(|a| Choice { part: RationalFunction::zero(), alpha: a })
            .collect();
    }
    if o % 2 != 0 {
        return Vec::new();
    }
    let nu = (-o / 2) as usize;
    let reverse = |p: &UnivariatePolynomial| UnivariatePolynomial::new(p.coeffs().iter().rev().cloned().collect());
    let c = series_quotient(&reverse(r.numerator()), &reverse(r.denominator()), nu + 2);
    let Some(s) = series_sqrt(&c, nu + 1) else {
        return Vec::new();
    };
    let mut cross = GaussianRational::zero();
    for i in 0..=nu {
        let k = nu + 1 - i;
        if k <= nu {
            cross += &(&s[i] * &s[k]);
        }
    }
    let b = &c[nu + 1] - &cross;
    let ratio = &b * &s[0].inv().unwrap();
    let nu_g = GaussianRational::from_int(nu as i64);
    // sum_j s_j x^(nu - j) for j <= nu
    let poly = UnivariatePolynomial::new(s[..=nu].iter().rev().cloned().collect());
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let sg = GaussianRational::from_int(sign);
        let alpha = &half() * &(&(&sg * &ratio) - &nu_g);
        out.push(Choice { part: RationalFunction::from_poly(poly.scale(&sg)), alpha });
    }
    out
}

/// Monic `P` of degree `d` with `P'' + 2w P' + (w' + w^2 - r) P = 0`.
fn polynomial_factor(w: &RationalFunction, r: &RationalFunction, d: usize) -> Option<UnivariatePolynomial> {
    let l = &(&w.derivative() + &(w * w)) - r;
    let m = {
        let (a, b) = (w.denominator(), l.denominator());
        (a * b).exact_div(&a.gcd(b))
    };
    let mr = RationalFunction::from_poly(m.clone());
    let a1 = (&w.scale(&GaussianRational::from_int(2)) * &mr).numerator().clone();
    let a0 = (&l * &mr).numerator().clone();
    let apply =
        |p: &UnivariatePolynomial| &(&(&m * &p.derivative().derivative()) + &(&a1 * &p.derivative())) + &(&a0 * p);
    let columns: Vec<UnivariatePolynomial> =
        (0..=d).map(|j| apply(&UnivariatePolynomial::monomial(GaussianRational::one(), j))).collect();
    let rows = columns.iter().map(|c| c.degree().map_or(0, |k| k + 1)).max().unwrap_or(0);
    if rows == 0 {
        return Some(UnivariatePolynomial::monomial(GaussianRational::one(), d));
    }
    let matrix: Vec<Vec<GaussianRational>> = (0..rows).map(|i| (0..d).map(|j| columns[j].coeff(i)).collect()).collect();
    let rhs: Vec<GaussianRational> = (0..rows).map(|i| -columns[d].coeff(i)).collect();
    if d == 0 {
        return rhs.iter().all(|v| v.is_zero()).then(UnivariatePolynomial::one);
    }
    let mut p = solve(&matrix, &rhs)?;
    p.push(GaussianRational::one());
    Some(UnivariatePolynomial::new(p))
}

/// Rational `u` with `u' + u^2 + a_1 u + a_2 = 0`, using the automatic degree bound.
pub fn rational_witness_search(ode: &LinearODE) -> Result<Vec<RationalFunction>, WitnessError> {
    rational_witness_search_with(ode, &WitnessOptions::default())
}

pub fn rational_witness_search_with(
    ode: &LinearODE,
    options: &WitnessOptions,
) -> Result<Vec<RationalFunction>, WitnessError> {
    if ode.order() != 2 {
        return Err(WitnessError::OrderNotTwo(ode.order()));
    }
    let a1 = ode.coefficient(1);
    let a2 = ode.coefficient(2);
    let quarter = GaussianRational::from_frac(1, 4);
    let r = &(&(&a1 * &a1).scale(&quarter) + &a1.derivative().scale(&half())) - &a2;

    let mut fixed = RationalFunction::zero();
    let mut fixed_alpha = GaussianRational::zero();
    let mut places: Vec<Vec<Choice>> = Vec::new();
    let mut pole_orders = 0usize;
    for (f, m) in r.denominator().squarefree_factorization() {
        pole_orders += m * f.deg();
        if m == 1 {
            fixed = &fixed + &RationalFunction::new(f.derivative(), f.clone());
            fixed_alpha += &GaussianRational::from_int(f.deg() as i64);
            continue;
        }
        let (roots, rest) = gaussian_roots(&f);
        if !rest.is_constant() {
            return Err(WitnessError::IrrationalPole { factor: f.to_string(), order: m });
        }
        for c in roots {
            places.push(pole_choices(&r, &c, m));
        }
    }
    places.push(infinity_choices(&r));
    let at_infinity = if r.is_zero() { 0 } else { r.order_at_infinity().unsigned_abs() as usize };
    let bound = options.degree_bound.unwrap_or_else(|| (pole_orders + at_infinity + 2).max(10));

    let mut families: Vec<Vec<usize>> = vec![Vec::new()];
    for p in &places {
        families =
            families.into_iter().flat_map(|f| (0..p.len()).map(move |i| [f.clone(), vec![i]].concat())).collect();
    }
    let half_a1 = a1.scale(&half());
    let results: Vec<Result<Option<RationalFunction>, usize>> = families
        .par_iter()
        .map(|fam| {
            let last = places.len() - 1;
            let mut d = places[last][fam[last]].alpha.clone() - &fixed_alpha;
            let mut w = fixed.clone();
            for (k, &i) in fam.iter().enumerate() {
                let ch = &places[k][i];
                if k != last {
                    d -= &ch.alpha;
                }
                w = &w + &ch.part;
            }
            if !d.is_real() || !d.re.is_integer() || d.re.is_negative() {
                return Ok(None);
            }
            let d: usize = match d.re.to_integer().try_into() {
                Ok(v) => v,
                Err(_) => return Err(usize::MAX),
            };
            if d > bound {
                return Err(d);
            }
            let Some(p) = polynomial_factor(&w, &r, d) else {
                return Ok(None);
            };
            let v = &w + &RationalFunction::new(p.derivative(), p);
            let u = &v - &half_a1;
            Ok(verify_exp_integral_witness(ode, &u).then_some(u))
        })
        .collect();

    let mut found: Vec<RationalFunction> = Vec::new();
    let mut needed = None;
    for res in results {
        match res {
            Ok(Some(u)) => {
                if !found.contains(&u) {
                    found.push(u);
                }
            }
            Ok(None) => {}
            Err(d) => needed = Some(needed.map_or(d, |n: usize| n.max(d))),
        }
    }
    if found.is_empty() {
        return Err(match needed {
            Some(needed) => WitnessError::BoundExceeded { needed, bound },
            None => WitnessError::NoneFound { bound },
        });
    }
    found.sort_by_cached_key(|u| u.to_string());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational_function;

    fn ode(cs: &[&str]) -> LinearODE {
        LinearODE::new(cs.iter().map(|s| parse_rational_function(s).unwrap()).collect()).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    #[test]
    fn exponentials() {
        assert_eq!(rational_witness_search(&ode(&["0", "-1"])).unwrap(), vec![rf("-1"), rf("1")]);
        let w = rational_witness_search(&ode(&["0", "1"])).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.contains(&RationalFunction::constant(GaussianRational::i())));
    }

    #[test]
    fn euler_equation() {
        let w = rational_witness_search(&ode(&["1/x", "-1/x^2"])).unwrap();
        assert!(w.contains(&rf("1/x")));
        assert!(w.contains(&rf("-1/x")));
    }

    #[test]
    fn airy_has_none() {
        assert!(matches!(rational_witness_search(&ode(&["0", "-x"])), Err(WitnessError::NoneFound { .. })));
        assert_eq!(rational_witness_search(&ode(&["0", "0", "1"])), Err(WitnessError::OrderNotTwo(3)));
    }

    #[test]
    fn polynomial_solutions() {
        // y'' = 0 has y = 1 and y = x
        let w = rational_witness_search(&ode(&["0", "0"])).unwrap();
        assert_eq!(w, vec![rf("0"), rf("1/x")]);
        // Hermite: y'' - 2x y' + 6y = 0 has y = 8x^3 - 12x
        let w = rational_witness_search(&ode(&["-2*x", "6"])).unwrap();
        assert!(w.contains(&rf("(24*x^2 - 12)/(8*x^3 - 12*x)")));
        // y = exp(x^2) and y = x exp(x^2) type: u = 2x
        let w = rational_witness_search(&ode(&["0", "-4*x^2 - 2"])).unwrap();
        assert!(w.contains(&rf("2*x")));
    }

    #[test]
    fn higher_order_pole() {
        // y = exp(-1/x): u = 1/x^2
        let u = rf("1/x^2");
        let a1 = rf("1/x");
        let a2 = -(&(&u.derivative() + &(&u * &u)) + &(&a1 * &u));
        let e = LinearODE::new(vec![a1, a2]).unwrap();
        assert!(rational_witness_search(&e).unwrap().contains(&u));
    }

    #[test]
    fn small_bound() {
        let e = ode(&["-2*x", "6"]);
        let opts = WitnessOptions { degree_bound: Some(1) };
        assert_eq!(rational_witness_search_with(&e, &opts), Err(WitnessError::BoundExceeded { needed: 3, bound: 1 }));
    }
}
