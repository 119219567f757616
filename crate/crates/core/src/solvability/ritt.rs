//! Decomposition of polynomials into primitive factors and Ritt's classification.
//!
//! Right factors are searched exactly over `Q(i)`: a monic right factor `h` with `h(0) = 0`
//! of degree `s` is determined by the top coefficients of `f` (it is the polynomial part of
//! `f^(1/r)`), and `f = g o h` holds exactly when the `h`-adic expansion of `f` has constant
//! digits.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{GaussianRational, Rational, RationalFunction, UnivariatePolynomial};

use super::expr::RadicalExpression;

/// Factors listed innermost first: `f = factors[k-1] o ... o factors[1] o factors[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionChain {
    pub factors: Vec<UnivariatePolynomial>,
    /// `primitive[i]` is set when no right factor of intermediate degree exists.
    pub primitive: Vec<bool>,
}

impl CompositionChain {
    pub fn compose(&self) -> UnivariatePolynomial {
        self.factors.iter().fold(UnivariatePolynomial::x(), |acc, f| f.compose(&acc))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.deg()).collect()
    }
}

impl fmt::Display for CompositionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().rev().map(|p| format!("({p})")).collect();
        f.write_str(&parts.join(" o "))
    }
}

/// Affine map `a*v + b` with coefficients that may involve a square root.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub a: RadicalExpression,
    pub b: RadicalExpression,
}

impl LinearMap {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Self {
        LinearMap { a: RadicalExpression::constant(a), b: RadicalExpression::constant(b) }
    }

    pub fn is_identity(&self) -> bool {
        self.a == RadicalExpression::int(1) && self.b == RadicalExpression::int(0)
    }

    pub fn display_with(&self, var: &str) -> String {
        if let (RadicalExpression::Field(a), RadicalExpression::Field(b)) = (&self.a, &self.b) {
            if let (Some(a), Some(b)) = (a.as_constant(), b.as_constant()) {
                return UnivariatePolynomial::linear(a, b).display_with(var);
            }
        }
        let a = match &self.a {
            RadicalExpression::Field(r) if r.as_constant().is_some_and(|c| c.is_one()) => var.to_string(),
            a => format!("{a}*{var}"),
        };
        match &self.b {
            RadicalExpression::Field(r) if r.is_zero() => a,
            b => format!("{a} + {b}"),
        }
    }
}

impl Serialize for LinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.display_with("z"))
    }
}

/// Ritt's classes of primitive polynomials; `outer o P o inner` with `P` the normal form.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class")]
pub enum PrimitiveClass {
    Linear,
    PowerConjugate { n: usize, outer: LinearMap, inner: LinearMap },
    ChebyshevConjugate { n: usize, outer: LinearMap, inner: LinearMap },
    DegreeAtMost4,
    Other,
}

impl PrimitiveClass {
    pub fn is_radical(&self) -> bool {
        !matches!(self, PrimitiveClass::Other)
    }

    pub fn name(&self) -> &'static str {
        match self {
            PrimitiveClass::Linear => "linear",
            PrimitiveClass::PowerConjugate { .. } => "power",
            PrimitiveClass::ChebyshevConjugate { .. } => "chebyshev",
            PrimitiveClass::DegreeAtMost4 => "degree<=4",
            PrimitiveClass::Other => "other",
        }
    }
}

/// `f^(1/r)` to `s` terms, as a monic polynomial of degree `s` with zero constant term.
fn approximate_root(f: &UnivariatePolynomial, r: usize, s: usize) -> UnivariatePolynomial {
    let n = f.deg();
    let lc_inv = f.leading_coeff().inv().unwrap();
    // reversed monic series A(t) = t^n f(1/t) / lc
    let a: Vec<GaussianRational> = (0..s).map(|j| &f.coeff(n - j) * &lc_inv).collect();
    let alpha = GaussianRational::from_rational(Rational::new(1.into(), (r as i64).into()));
    let alpha1 = &alpha + &GaussianRational::one();
    let mut b = vec![GaussianRational::one()];
    for k in 1..s {
        let mut acc = GaussianRational::zero();
        for j in 1..=k {
            let w = &(&alpha1 * &GaussianRational::from_int(j as i64)) - &GaussianRational::from_int(k as i64);
            acc += &(&(&w * &a[j]) * &b[k - j]);
        }
        b.push(&acc / &GaussianRational::from_int(k as i64));
    }
    let mut coeffs = vec![GaussianRational::zero(); s + 1];
    for (k, c) in b.into_iter().enumerate() {
        coeffs[s - k] = c;
    }
    UnivariatePolynomial::new(coeffs)
}

/// Left factor `g` with `f = g o h` when the `h`-adic digits of `f` are constants.
fn left_factor(f: &UnivariatePolynomial, h: &UnivariatePolynomial) -> Option<UnivariatePolynomial> {
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(h);
        if r.deg() > 0 {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(UnivariatePolynomial::new(digits))
}

/// Monic right factor of degree `s` with zero constant term, with its left factor.
pub fn right_factor(f: &UnivariatePolynomial, s: usize) -> Option<(UnivariatePolynomial, UnivariatePolynomial)> {
    let n = f.deg();
    if s == 0 || !n.is_multiple_of(s) {
        return None;
    }
    let h = approximate_root(f, n / s, s);
    let g = left_factor(f, &h)?;
    (g.compose(&h) == *f).then_some((g, h))
}

/// Full decomposition, smallest right factors first.
pub fn ritt_decompose(f: &UnivariatePolynomial) -> CompositionChain {
    let n = f.deg();
    if n > 1 {
        for s in (2..n).filter(|s| n.is_multiple_of(*s)) {
            if let Some((g, h)) = right_factor(f, s) {
                let mut rest = ritt_decompose(&g);
                rest.factors.insert(0, h);
                rest.primitive.insert(0, true);
                return rest;
            }
        }
    }
    CompositionChain { factors: vec![f.clone()], primitive: vec![true] }
}

fn binomial(n: u64, k: u64) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r *= Rational::new((n - i).into(), (i + 1).into());
    }
    r
}

/// Coefficients of `T_n` from the closed form of its expansion.
pub fn chebyshev_coefficients(n: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); n + 1];
    if n == 0 {
        c[0] = Rational::one();
        return c;
    }
    let two = Rational::from_integer(2.into());
    for m in 0..=n / 2 {
        let k = n - 2 * m;
        // (-1)^m n/(n-m) C(n-m, m) 2^(n-2m-1)
        let mut v = Rational::new((n as i64).into(), ((n - m) as i64).into()) * binomial((n - m) as u64, m as u64);
        v = if k == 0 { v / &two } else { v * num_traits::pow(two.clone(), k - 1) };
        if m % 2 == 1 {
            v = -v;
        }
        c[k] = v;
    }
    c
}

fn gr_pow(c: &GaussianRational, e: i64) -> GaussianRational {
    if e >= 0 {
        c.pow(e)
    } else {
        c.inv().unwrap().pow(-e)
    }
}

/// Square root as a radical expression, exact when possible.
fn sqrt_expr(c: &GaussianRational) -> RadicalExpression {
    match c.sqrt_exact() {
        Some(s) => RadicalExpression::constant(s),
        None => RadicalExpression::root(2, RadicalExpression::constant(c.clone())),
    }
}

/// Classify a primitive polynomial. Linear maps are recovered from the normalized center
/// `c = -f_(n-1)/(n f_n)`, where power and Chebyshev normal forms have no `x^(n-1)` term.
pub fn classify_primitive(f: &UnivariatePolynomial) -> PrimitiveClass {
    let n = f.deg();
    if n <= 1 {
        return PrimitiveClass::Linear;
    }
    if n == 2 {
        return PrimitiveClass::DegreeAtMost4;
    }
    let lc = f.leading_coeff();
    let c = -(&f.coeff(n - 1) / &(&lc * &GaussianRational::from_int(n as i64)));
    let g = f.shift(&c);
    let fc = g.coeff(0);
    // power: g = lc x^n + f(c)
    if (1..n).all(|k| g.coeff(k).is_zero()) {
        return PrimitiveClass::PowerConjugate {
            n,
            outer: LinearMap::new(lc, fc),
            inner: LinearMap::new(GaussianRational::one(), -c),
        };
    }
    if let Some(class) = chebyshev_conjugate(&g, &c) {
        return class;
    }
    if n <= 4 {
        PrimitiveClass::DegreeAtMost4
    } else {
        PrimitiveClass::Other
    }
}

/// `g = gamma T_n(alpha x) + delta` with `g` centred; coefficients of the same parity as `n`
/// satisfy `g_k = Gamma t_k (alpha^2)^((k-n)/2)` with `Gamma = gamma alpha^n`.
fn chebyshev_conjugate(g: &UnivariatePolynomial, c: &GaussianRational) -> Option<PrimitiveClass> {
    let n = g.deg();
    let t: Vec<GaussianRational> = chebyshev_coefficients(n).into_iter().map(GaussianRational::from_rational).collect();
    let gn2 = g.coeff(n - 2);
    if gn2.is_zero() {
        return None;
    }
    let a2 = -(&(&g.coeff(n) * &GaussianRational::from_int(n as i64)) / &(&gn2 * &GaussianRational::from_int(4)));
    let big_gamma = &g.coeff(n) / &t[n];
    let mut delta = g.coeff(0);
    for k in 0..n {
        let expected = if (n - k).is_multiple_of(2) {
            &(&big_gamma * &t[k]) * &gr_pow(&a2, -(((n - k) / 2) as i64))
        } else {
            GaussianRational::zero()
        };
        if k == 0 {
            delta = &delta - &expected;
        } else if g.coeff(k) != expected {
            return None;
        }
    }
    let alpha = sqrt_expr(&a2);
    // gamma = Gamma / alpha^n
    let gamma = if n.is_multiple_of(2) {
        RadicalExpression::constant(&big_gamma * &gr_pow(&a2, -((n / 2) as i64)))
    } else {
        RadicalExpression::constant(&big_gamma * &gr_pow(&a2, -((n / 2) as i64))) / alpha.clone()
    };
    let inner_b = RadicalExpression::int(-1) * alpha.clone() * RadicalExpression::constant(c.clone());
    Some(PrimitiveClass::ChebyshevConjugate {
        n,
        outer: LinearMap { a: gamma, b: RadicalExpression::constant(delta) },
        inner: LinearMap { a: alpha, b: simplify_constant(inner_b) },
    })
}

fn simplify_constant(e: RadicalExpression) -> RadicalExpression {
    match &e {
        RadicalExpression::Product(v) if v.iter().any(|f| matches!(f, RadicalExpression::Field(r) if r.is_zero())) => {
            RadicalExpression::Field(RationalFunction::zero())
        }
        _ => e,
    }
}
