//! Integration of rational functions as `r_0 + sum lambda_i ln r_i`.
//!
//! Hermite reduction splits off the rational part and leaves a proper integrand `a/d` with
//! square-free `d`. The constants `lambda` are the roots of the resultant
//! `R(z) = Res_x(d, a - z d')`, with arguments `gcd(a - lambda d', d)`. Roots in Q(i) are kept
//! as numbers. The remaining roots of each factor of `R` are grouped: a square-free
//! polynomial `G(z)` together with one argument `S(z, x)` valid for every root of `G`,
//! computed by a Euclidean algorithm over Q(i)[z]/(G) that splits `G` whenever a leading
//! coefficient is a zero divisor.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::linear::determinant;
use crate::algebra::resultant::interpolate;
use crate::algebra::{
    complex_roots, resultant, resultant_y, BivariatePolynomial, ComplexInterval, GaussianRational, RationalFunction,
    UnivariatePolynomial,
};

use super::gaussian_roots;

/// `sum over the roots lambda of defining_polynomial of lambda ln S(lambda, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicLog {
    /// Monic and square-free in `z`; its roots are the constants of this group.
    pub defining_polynomial: UnivariatePolynomial,
    /// `S(z, x)`: coefficients of `x^0, x^1, ...`, each a polynomial in `z` reduced modulo
    /// the defining polynomial. Monic in `x`.
    pub argument: Vec<UnivariatePolynomial>,
    /// Certified disks around the roots of the defining polynomial.
    pub enclosures: Vec<ComplexInterval>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LogTerm {
    Rational { lambda: GaussianRational, argument: UnivariatePolynomial },
    Algebraic(AlgebraicLog),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleForm {
    pub r0: RationalFunction,
    pub logs: Vec<LogTerm>,
}

/// `(g, h)` with `integral f = g + integral h`, `h` proper with square-free denominator.
pub fn hermite_reduce(f: &RationalFunction) -> (RationalFunction, RationalFunction) {
    let (q, mut a) = f.polynomial_part();
    let d = f.denominator().clone();
    let mut g = RationalFunction::from_poly(q.integral());
    let mut d_minus = d.gcd(&d.derivative());
    let d_star = d.exact_div(&d_minus);
    while d_minus.deg() > 0 {
        let d_minus2 = d_minus.gcd(&d_minus.derivative());
        let d_minus_star = d_minus.exact_div(&d_minus2);
        let lhs = -(&d_star * &d_minus.derivative()).exact_div(&d_minus);
        let (b, c) = UnivariatePolynomial::diophantine(&lhs, &d_minus_star, &a).expect("coprime by square-freeness");
        a = &c - &(&b.derivative() * &d_star).exact_div(&d_minus_star);
        g = &g + &RationalFunction::new(b, d_minus.clone());
        d_minus = d_minus2;
    }
    (g, RationalFunction::new(a, d_star))
}

/// Polynomials in `x` over Q(i)[z]/(modulus), coefficients listed from `x^0`.
type ExtPoly = Vec<UnivariatePolynomial>;

fn reduce(p: &mut ExtPoly, modulus: &UnivariatePolynomial) {
    for c in p.iter_mut() {
        *c = c.rem(modulus);
    }
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Inverse of `c` modulo `m`, or a proper monic factor of `m` exposing a zero divisor.
fn invert(c: &UnivariatePolynomial, m: &UnivariatePolynomial) -> Result<UnivariatePolynomial, UnivariatePolynomial> {
    let (h, s, _) = c.extended_gcd(m);
    if h.deg() == 0 {
        Ok(s.scale(&h.coeff(0).inv().unwrap()).rem(m))
    } else {
        Err(h.monic())
    }
}

/// Monic gcd of `a` and `b` over Q(i)[z]/(m) for square-free `m`, as a list of
/// `(factor of m, gcd over that factor)`.
fn ext_gcd(m: &UnivariatePolynomial, a: &ExtPoly, b: &ExtPoly) -> Vec<(UnivariatePolynomial, ExtPoly)> {
    let (mut a, mut b) = (a.clone(), b.clone());
    reduce(&mut a, m);
    reduce(&mut b, m);
    let split = |h: UnivariatePolynomial, a: &ExtPoly, b: &ExtPoly| {
        let other = m.exact_div(&h);
        let mut out = ext_gcd(&h, a, b);
        out.extend(ext_gcd(&other, a, b));
        out
    };
    loop {
        if b.is_empty() {
            let Some(lc) = a.last() else {
                return vec![(m.clone(), a)];
            };
            return match invert(lc, m) {
                Ok(inv) => {
                    let mut monic: ExtPoly = a.iter().map(|c| (c * &inv).rem(m)).collect();
                    reduce(&mut monic, m);
                    vec![(m.clone(), monic)]
                }
                Err(h) => split(h, &a, &b),
            };
        }
        let inv = match invert(b.last().unwrap(), m) {
            Ok(inv) => inv,
            Err(h) => return split(h, &a, &b),
        };
        // a mod b
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let q = (a.last().unwrap() * &inv).rem(m);
            for (j, bj) in b.iter().enumerate() {
                a[k + j] = (&a[k + j] - &(&q * bj)).rem(m);
            }
            reduce(&mut a, m);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Subresultant of index `i` of `a` and `b` taken with formal degrees `n` and `m`
/// (`n > m > i`), from the determinant definition.
fn subresultant(
    a: &UnivariatePolynomial,
    n: usize,
    b: &UnivariatePolynomial,
    m: usize,
    i: usize,
) -> UnivariatePolynomial {
    let size = n + m - 2 * i;
    let top = n + m - i - 1;
    let mut rows: Vec<(&UnivariatePolynomial, usize)> = (0..m - i).rev().map(|k| (a, k)).collect();
    rows.extend((0..n - i).rev().map(|k| (b, k)));
    let coeff = |p: &UnivariatePolynomial, shift: usize, power: usize| {
        if power < shift {
            GaussianRational::zero()
        } else {
            p.coeff(power - shift)
        }
    };
    let mut out = Vec::with_capacity(i + 1);
    for j in 0..=i {
        let matrix: Vec<Vec<GaussianRational>> = rows
            .iter()
            .map(|&(p, shift)| {
                let mut row: Vec<GaussianRational> = (0..size - 1).map(|c| coeff(p, shift, top - c)).collect();
                row.push(coeff(p, shift, j));
                row
            })
            .collect();
        out.push(determinant(&matrix));
    }
    UnivariatePolynomial::new(out)
}

/// Monic argument `S(z, x)` of degree `i` in `x` for the roots of `g`, from the `i`-th
/// subresultant of `d` and `a - z d'` interpolated in `z`. `None` when its leading
/// coefficient is not invertible modulo `g`.
fn subresultant_argument(
    a: &UnivariatePolynomial,
    d: &UnivariatePolynomial,
    g: &UnivariatePolynomial,
    i: usize,
) -> Option<ExtPoly> {
    let n = d.deg();
    if i >= n {
        return Some(d.monic().coeffs().iter().map(|c| UnivariatePolynomial::constant(c.clone())).collect());
    }
    let dd = d.derivative();
    let zs: Vec<GaussianRational> = (0..=(n - i) as i64).map(GaussianRational::from_int).collect();
    let values: Vec<UnivariatePolynomial> =
        zs.iter().map(|z0| subresultant(d, n, &(a - &dd.scale(z0)), n - 1, i)).collect();
    let mut s: ExtPoly =
        (0..=i).map(|j| interpolate(&zs, &values.iter().map(|v| v.coeff(j)).collect::<Vec<_>>()).rem(g)).collect();
    if s.len() != i + 1 || s[i].is_zero() {
        return None;
    }
    let inv = invert(&s[i], g).ok()?;
    for c in s.iter_mut() {
        *c = (&*c * &inv).rem(g);
    }
    Some(s)
}

fn gaussian_key(g: &GaussianRational) -> (f64, f64) {
    let c = g.to_complex();
    (c.re, c.im)
}

/// Rothstein-Trager logarithmic part of a proper `a/d` with square-free `d`.
fn logarithmic_part(a: &UnivariatePolynomial, d: &UnivariatePolynomial) -> Vec<LogTerm> {
    if a.is_zero() {
        return Vec::new();
    }
    let dd = d.derivative();
    // the first slot of the bivariate type plays z, the second x
    let d_bi = BivariatePolynomial::from_y_poly(d);
    let a_bi =
        &BivariatePolynomial::from_y_poly(a) - &(&BivariatePolynomial::x() * &BivariatePolynomial::from_y_poly(&dd));
    let r = resultant_y(&d_bi, &a_bi).expect("nonzero inputs");
    let mut rational = Vec::new();
    let mut algebraic = Vec::new();
    for (factor, mult) in r.squarefree_factorization() {
        let (roots, rest) = gaussian_roots(&factor);
        for lambda in roots {
            let arg = (a - &dd.scale(&lambda)).gcd(d).monic();
            rational.push(LogTerm::Rational { lambda, argument: arg });
        }
        if rest.deg() == 0 {
            continue;
        }
        if let Some(s) = subresultant_argument(a, d, &rest, mult) {
            let enclosures = complex_roots(&rest, 1e-12).unwrap_or_default();
            algebraic.push(LogTerm::Algebraic(AlgebraicLog { defining_polynomial: rest, argument: s, enclosures }));
            continue;
        }
        let ad: ExtPoly = d.coeffs().iter().map(|c| UnivariatePolynomial::constant(c.clone())).collect();
        let n = a.coeffs().len().max(dd.coeffs().len());
        let bd: ExtPoly = (0..n).map(|k| UnivariatePolynomial::new(vec![a.coeff(k), -dd.coeff(k)])).collect();
        for (g, s) in ext_gcd(&rest, &ad, &bd) {
            let enclosures = complex_roots(&g, 1e-12).unwrap_or_default();
            algebraic.push(LogTerm::Algebraic(AlgebraicLog { defining_polynomial: g, argument: s, enclosures }));
        }
    }
    rational.sort_by(|x, y| match (x, y) {
        (LogTerm::Rational { lambda: a, .. }, LogTerm::Rational { lambda: b, .. }) => {
            let (ka, kb) = (gaussian_key(a), gaussian_key(b));
            kb.0.total_cmp(&ka.0).then(kb.1.total_cmp(&ka.1))
        }
        _ => std::cmp::Ordering::Equal,
    });
    rational.extend(algebraic);
    rational
}

/// Antiderivative of `f` in the form `r_0 + sum lambda_i ln r_i`.
pub fn integrate_rational(f: &RationalFunction) -> LiouvilleForm {
    let (r0, h) = hermite_reduce(f);
    let logs = logarithmic_part(h.numerator(), h.denominator());
    LiouvilleForm { r0, logs }
}

impl AlgebraicLog {
    /// `S(z, x0)` as a polynomial in `z`.
    fn argument_at(&self, x0: &GaussianRational) -> UnivariatePolynomial {
        let mut acc = UnivariatePolynomial::zero();
        for c in self.argument.iter().rev() {
            acc = &acc.scale(x0) + c;
        }
        acc.rem(&self.defining_polynomial)
    }

    fn argument_dx_at(&self, x0: &GaussianRational) -> UnivariatePolynomial {
        let mut acc = UnivariatePolynomial::zero();
        for (k, c) in self.argument.iter().enumerate().skip(1).rev() {
            acc = &acc.scale(x0) + &c.scale(&GaussianRational::from_int(k as i64));
        }
        acc.rem(&self.defining_polynomial)
    }

    /// Power sums `p_0, ..., p_(m-1)` of the roots of the defining polynomial.
    fn power_sums(&self) -> Vec<GaussianRational> {
        let g = &self.defining_polynomial;
        let m = g.deg();
        let c = |k: usize| g.coeff(k);
        let mut p = vec![GaussianRational::from_int(m as i64)];
        for k in 1..m {
            let mut acc = &GaussianRational::from_int(k as i64) * &c(m - k);
            for i in 1..k {
                acc += &(&c(m - i) * &p[k - i]);
            }
            p.push(-acc);
        }
        p
    }

    /// Exact derivative `sum lambda S_x(lambda, x) / S(lambda, x)` as a rational function,
    /// recovered by interpolation from exact values.
    pub fn derivative(&self) -> RationalFunction {
        let g = &self.defining_polynomial;
        let deg_n = g.deg() * (self.argument.len() - 1);
        let sums = self.power_sums();
        let trace = |e: &UnivariatePolynomial| {
            let mut t = GaussianRational::zero();
            for (j, c) in e.coeffs().iter().enumerate() {
                t += &(c * &sums[j]);
            }
            t
        };
        let z = UnivariatePolynomial::x();
        let (mut xs_n, mut ys_n, mut xs_m, mut ys_m) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut k = 0i64;
        while xs_n.len() <= deg_n || xs_m.len() < deg_n.max(1) {
            let x0 = GaussianRational::from_int(k);
            k += 1;
            let s = self.argument_at(&x0);
            let norm = if s.is_zero() { GaussianRational::zero() } else { resultant(g, &s) };
            if xs_n.len() <= deg_n {
                xs_n.push(x0.clone());
                ys_n.push(norm.clone());
            }
            if norm.is_zero() || xs_m.len() >= deg_n.max(1) {
                continue;
            }
            let inv = s.inverse_mod(g).expect("nonzero norm");
            let e = (&(&z * &self.argument_dx_at(&x0)) * &inv).rem(g);
            xs_m.push(x0);
            ys_m.push(&norm * &trace(&e));
        }
        let n = interpolate(&xs_n, &ys_n);
        let m = interpolate(&xs_m, &ys_m);
        RationalFunction::new(m, n)
    }

    fn argument_text(&self) -> String {
        BivariatePolynomial::new(self.argument.clone()).display_with("z", "x")
    }
}

impl LogTerm {
    pub fn derivative(&self) -> RationalFunction {
        match self {
            LogTerm::Rational { lambda, argument } => {
                RationalFunction::new(argument.derivative().scale(lambda), argument.clone())
            }
            LogTerm::Algebraic(a) => a.derivative(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LogTerm::Rational { lambda, argument } => {
                json!({ "lambda": lambda.to_string(), "arg": argument.to_string() })
            }
            LogTerm::Algebraic(a) => json!({
                "lambda": format!("RootOf({})", a.defining_polynomial.display_with("z")),
                "arg": a.argument_text(),
                "enclosures": a.enclosures.iter().map(|e| json!([e.center.re, e.center.im, e.radius])).collect::<Vec<_>>(),
            }),
        }
    }
}

impl LiouvilleForm {
    /// Exact derivative of the whole expression.
    pub fn derivative(&self) -> RationalFunction {
        let mut acc = self.r0.derivative();
        for l in &self.logs {
            acc = &acc + &l.derivative();
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({ "r0": self.r0.to_string(), "logs": self.logs.iter().map(LogTerm::to_json).collect::<Vec<_>>() })
    }
}

impl fmt::Display for LiouvilleForm {
    /// Groups of conjugate constants print as `sum(z: G(z) = 0, z*ln(S(z, x)))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.r0.is_zero() || self.logs.is_empty() {
            parts.push(self.r0.to_string());
        }
        for l in &self.logs {
            parts.push(match l {
                LogTerm::Rational { lambda, argument } if lambda.is_one() => format!("ln({argument})"),
                LogTerm::Rational { lambda, argument } => format!("{lambda}*ln({argument})"),
                LogTerm::Algebraic(a) => {
                    format!("sum(z: {} = 0, z*ln({}))", a.defining_polynomial.display_with("z"), a.argument_text())
                }
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational_function;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    fn rational_logs(form: &LiouvilleForm) -> Vec<(String, String)> {
        form.logs
            .iter()
            .filter_map(|l| match l {
                LogTerm::Rational { lambda, argument } => Some((lambda.to_string(), argument.to_string())),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn examples() {
        let f = integrate_rational(&rf("1/x"));
        assert!(f.r0.is_zero());
        assert_eq!(rational_logs(&f), vec![("1".to_string(), "x".to_string())]);
        let f = integrate_rational(&rf("1/x^2"));
        assert_eq!(f.r0, rf("-1/x"));
        assert!(f.logs.is_empty());
        let f = integrate_rational(&rf("1/(x^2-1)"));
        assert!(f.r0.is_zero());
        assert_eq!(
            rational_logs(&f),
            vec![("1/2".to_string(), "x - 1".to_string()), ("-1/2".to_string(), "x + 1".to_string())]
        );
        assert_eq!(f.to_string(), "1/2*ln(x - 1) - 1/2*ln(x + 1)");
    }

    #[test]
    fn algebraic_constants() {
        // 1/(x^2 - 2): lambda = +-1/(2 sqrt 2)
        let f = rf("1/(x^2-2)");
        let form = integrate_rational(&f);
        assert_eq!(form.logs.len(), 1);
        let LogTerm::Algebraic(a) = &form.logs[0] else { panic!("expected a root sum") };
        assert_eq!(
            a.defining_polynomial,
            UnivariatePolynomial::new(vec![
                GaussianRational::from_frac(-1, 8),
                GaussianRational::zero(),
                GaussianRational::one()
            ])
        );
        assert_eq!(a.enclosures.len(), 2);
        assert_eq!(form.derivative(), f);
        // 1/(x^2 + 1) over Q(i) splits: lambda = +-i/2
        let form = integrate_rational(&rf("1/(x^2+1)"));
        assert_eq!(rational_logs(&form).len(), 2);
        // splitting during the Euclidean algorithm: (x^4 - 10x^2 + 1) has roots +-sqrt2 +- sqrt3
        let f = rf("(x^3 + 2)/(x^4 - 10*x^2 + 1)");
        assert_eq!(integrate_rational(&f).derivative(), f);
    }

    #[test]
    fn euclid_splits_on_zero_divisors() {
        let c = |v: &[i64]| UnivariatePolynomial::from_ints(v);
        // modulus (z - 1)(z - 2); b = (z - 1) x + 1 has a zero-divisor leading coefficient
        let m = c(&[2, -3, 1]);
        let a = vec![c(&[-1]), c(&[0]), c(&[1])];
        let b = vec![c(&[1]), c(&[-1, 1])];
        let mut parts = ext_gcd(&m, &a, &b);
        parts.sort_by_key(|(g, _)| g.coeff(0).to_string());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (c(&[-1, 1]), vec![c(&[1])]));
        assert_eq!(parts[1], (c(&[-2, 1]), vec![c(&[1]), c(&[1])]));
    }

    #[test]
    fn hermite_part() {
        let f = rf("(x^4 + 3*x + 1)/((x-1)^3*(x^2+1)^2)");
        let (g, h) = hermite_reduce(&f);
        assert!(h.denominator().is_squarefree());
        assert_eq!(&g.derivative() + &h, f);
        assert!(h.numerator().deg() < h.denominator().deg() || h.is_zero());
    }

    #[test]
    fn json_shape() {
        let v = integrate_rational(&rf("1/(x^2-1)")).to_json();
        assert_eq!(v["r0"], "0");
        assert_eq!(v["logs"][0]["lambda"], "1/2");
        assert_eq!(v["logs"][1]["arg"], "x + 1");
    }
}
