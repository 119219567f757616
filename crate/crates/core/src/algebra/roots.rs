//! Certified numeric roots of univariate polynomials.
//!
//! Roots are located by Aberth–Ehrlich simultaneous iteration seeded with companion-matrix
//! eigenvalues, then enclosed by the inclusion disks
//! `|z - z_i| <= m (|p(z_i)| + e_i) / |lc * prod_{j != i} (z_i - z_j)|`, whose union contains
//! every root of a degree-`m` square-free `p` and whose pairwise disjointness proves that each
//! disk holds exactly one root. `e_i` bounds the rounding error of the Horner evaluation.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::UnivariatePolynomial;
use super::rational::{GaussianRational, Rational};
use super::AlgebraError;

const EPS: f64 = f64::EPSILON;

/// Closed disk in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub center: Complex64,
    pub radius: f64,
}

impl ComplexInterval {
    pub fn new(center: Complex64, radius: f64) -> Self {
        assert!(radius.is_finite() && radius >= 0.0, "invalid interval radius {radius}");
        ComplexInterval { center, radius }
    }

    pub fn point(z: Complex64) -> Self {
        ComplexInterval { center: z, radius: 0.0 }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    pub fn overlaps(&self, other: &ComplexInterval) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }

    fn widen(center: Complex64, radius: f64) -> Self {
        ComplexInterval::new(center, radius * (1.0 + 4.0 * EPS) + 2.0 * EPS * center.norm())
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval::widen(self.center + rhs.center, self.radius + rhs.radius)
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval::widen(self.center - rhs.center, self.radius + rhs.radius)
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval { center: -self.center, radius: self.radius }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: ComplexInterval) -> ComplexInterval {
        let r = self.center.norm() * rhs.radius + rhs.center.norm() * self.radius + self.radius * rhs.radius;
        ComplexInterval::widen(self.center * rhs.center, r)
    }
}

/// Horner evaluation of `p` and `p'` with a running bound on the rounding error of `p(z)`.
pub fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        abs_sum = abs_sum * az + c.norm();
    }
    let err = 4.0 * (coeffs.len() as f64 + 1.0) * EPS * abs_sum;
    (p, dp, err)
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == Complex64::new(0.0, 0.0) {
        n -= 1;
    }
    &coeffs[..n]
}

/// Eigenvalues of the companion matrix of `coeffs` (lowest degree first).
fn companion_seeds(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let lc = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lc;
    }
    let eig = m.try_schur(1e-14, 10_000)?.eigenvalues()?;
    let v: Vec<Complex64> = eig.iter().copied().collect();
    if v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(v)
    } else {
        None
    }
}

fn circle_seeds(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].norm();
    // Cauchy bound
    let r = 1.0 + coeffs[..n].iter().map(|c| c.norm() / lc).fold(0.0, f64::max);
    let r = r.clamp(1e-3, 1e6) * 0.5;
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Aberth–Ehrlich iteration. Returns the approximations and whether the iteration met its
/// stopping criterion.
pub fn aberth(coeffs: &[Complex64], seeds: Option<&[Complex64]>, max_iter: usize) -> (Vec<Complex64>, bool) {
    let coeffs = trim(coeffs);
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return (Vec::new(), true);
    }
    if n == 1 {
        return (vec![-coeffs[0] / coeffs[1]], true);
    }
    let mut z: Vec<Complex64> = match seeds {
        Some(s) if s.len() == n => s.to_vec(),
        _ => companion_seeds(coeffs).unwrap_or_else(|| circle_seeds(coeffs)),
    };
    // separate coincident seeds
    for i in 0..n {
        for j in 0..i {
            if (z[i] - z[j]).norm() < 1e-12 * (1.0 + z[i].norm()) {
                let bump = Complex64::new(1e-7, 1.3e-7) * (1.0 + z[i].norm()) * (i as f64 + 1.0);
                z[i] += bump;
            }
        }
    }
    let mut converged = vec![false; n];
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp, err) = horner_with_derivative(coeffs, z[i]);
            if p.norm() <= err {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                all = false;
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * EPS * z[i].norm().max(1e-300) {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return (z, true);
        }
    }
    let ok = converged.iter().all(|&c| c);
    (z, ok)
}

/// Numeric roots of a polynomial with complex coefficients (lowest degree first), without
/// certification.
pub fn numeric_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    aberth(coeffs, None, 500).0
}

/// Inclusion radii for approximations `z` of all roots of the square-free `coeffs`.
pub fn inclusion_radii(coeffs: &[Complex64], z: &[Complex64]) -> Vec<f64> {
    let coeffs = trim(coeffs);
    let n = z.len();
    let lc = coeffs[coeffs.len() - 1];
    (0..n)
        .map(|i| {
            let (p, _, err) = horner_with_derivative(coeffs, z[i]);
            let mut den = lc;
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let r = n as f64 * (p.norm() + err) / den.norm();
            if r.is_finite() {
                r * (1.0 + 1e-12)
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

/// Certified enclosures of the roots of a square-free polynomial with complex coefficients.
pub fn certified_roots_squarefree(
    coeffs: &[Complex64],
    tol: f64,
) -> Result<Vec<ComplexInterval>, Vec<ComplexInterval>> {
    let coeffs = trim(coeffs);
    let (mut z, _) = aberth(coeffs, None, 800);
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = horner_with_derivative(coeffs, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if step.re.is_finite() && step.im.is_finite() {
                *zi -= step;
            }
        }
    }
    let radii = inclusion_radii(coeffs, &z);
    let intervals: Vec<ComplexInterval> = z
        .iter()
        .zip(&radii)
        .map(|(&c, &r)| ComplexInterval { center: c, radius: if r.is_finite() { r } else { f64::MAX } })
        .collect();
    let mut ok = intervals.iter().all(|iv| iv.radius <= tol * iv.center.norm().max(1.0));
    for i in 0..intervals.len() {
        for j in 0..i {
            if intervals[i].overlaps(&intervals[j]) {
                ok = false;
            }
        }
    }
    if ok {
        Ok(intervals)
    } else {
        Err(intervals)
    }
}

fn exact_point(z: Complex64) -> GaussianRational {
    GaussianRational::new(
        Rational::from_float(z.re).unwrap_or_default(),
        Rational::from_float(z.im).unwrap_or_default(),
    )
}

/// Newton refinement with exactly evaluated residuals, then inclusion disks whose numerators
/// are the exact `|p(z_i)|`; the coefficients never pass through floating point.
fn refine_exact(
    p: &UnivariatePolynomial,
    z: &mut [Complex64],
    tol: f64,
) -> Result<Vec<ComplexInterval>, Vec<ComplexInterval>> {
    let dp = p.derivative();
    let n = z.len();
    let mut residual = vec![0.0; n];
    for (zi, res) in z.iter_mut().zip(residual.iter_mut()) {
        for _ in 0..3 {
            let g = exact_point(*zi);
            let v = p.eval(&g).to_complex();
            *res = v.norm();
            let d = dp.eval(&g).to_complex();
            let step = v / d;
            if !(step.re.is_finite() && step.im.is_finite()) || step.norm() <= EPS * zi.norm() {
                break;
            }
            *zi -= step;
            *res = p.eval(&exact_point(*zi)).to_complex().norm();
        }
    }
    let lc = p.leading_coeff().to_complex();
    let intervals: Vec<ComplexInterval> = (0..n)
        .map(|i| {
            let mut den = lc;
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            // relative slack covers rounding of the residual and of the product
            let r = n as f64 * residual[i] / den.norm() * (1.0 + 1e-10);
            ComplexInterval { center: z[i], radius: if r.is_finite() { r } else { f64::MAX } }
        })
        .collect();
    let mut ok = intervals.iter().all(|iv| iv.radius <= tol * iv.center.norm().max(1.0));
    for i in 0..n {
        for j in 0..i {
            if intervals[i].overlaps(&intervals[j]) {
                ok = false;
            }
        }
    }
    if ok {
        Ok(intervals)
    } else {
        Err(intervals)
    }
}

/// Distinct roots with multiplicities: `(enclosure, multiplicity)`.
pub fn complex_roots_grouped(
    p: &UnivariatePolynomial,
    tol: f64,
) -> Result<Vec<(ComplexInterval, usize)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let mut failed = false;
    for (factor, mult) in p.squarefree_factorization() {
        let approx = match certified_roots_squarefree(&factor.to_complex_coeffs(), tol) {
            Ok(ivs) | Err(ivs) => ivs,
        };
        let mut z: Vec<Complex64> = approx.iter().map(|iv| iv.center).collect();
        match refine_exact(&factor, &mut z, tol) {
            Ok(ivs) => out.extend(ivs.into_iter().map(|iv| (iv, mult))),
            Err(ivs) => {
                failed = true;
                out.extend(ivs.into_iter().map(|iv| (iv, mult)));
            }
        }
    }
    for i in 0..out.len() {
        for j in 0..i {
            if out[i].0.overlaps(&out[j].0) {
                failed = true;
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.center.re, a.0.center.im).partial_cmp(&(b.0.center.re, b.0.center.im)).unwrap_or(std::cmp::Ordering::Equal)
    });
    if failed {
        let best = out.iter().flat_map(|(iv, m)| std::iter::repeat_n(*iv, *m)).collect();
        return Err(AlgebraError::IterationLimitExceeded { best });
    }
    Ok(out)
}

/// All `deg p` roots as enclosures, repeated according to multiplicity. Each radius is at
/// most `tol * max(1, |center|)`.
pub fn complex_roots(p: &UnivariatePolynomial, tol: f64) -> Result<Vec<ComplexInterval>, AlgebraError> {
    Ok(complex_roots_grouped(p, tol)?.into_iter().flat_map(|(iv, m)| std::iter::repeat_n(iv, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::GaussianRational;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_ints(c)
    }

    fn has_root(r: &[ComplexInterval], z: Complex64) -> bool {
        r.iter().any(|iv| iv.contains(z))
    }

    /// `z` is a rounded oracle value within `slack` of a true root.
    fn has_root_near(r: &[ComplexInterval], z: Complex64, slack: f64) -> bool {
        r.iter().any(|iv| (iv.center - z).norm() <= iv.radius + slack)
    }

    #[test]
    fn examples() {
        let r = complex_roots(&p(&[1, 0, 1]), 1e-12).unwrap();
        assert_eq!(r.len(), 2);
        assert!(has_root(&r, Complex64::i()) && has_root(&r, -Complex64::i()));

        let r = complex_roots(&p(&[-1, 0, 0, 1]), 1e-12).unwrap();
        assert_eq!(r.len(), 3);
        for k in 0..3 {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 3.0);
            assert!(has_root_near(&r, w, 4.0 * EPS));
        }

        // (x-2)^2 (x+1)
        let f = &p(&[-2, 1]).pow(2) * &p(&[1, 1]);
        let g = complex_roots_grouped(&f, 1e-12).unwrap();
        assert_eq!(g.len(), 2);
        let two = g.iter().find(|(iv, _)| iv.contains(Complex64::new(2.0, 0.0))).unwrap();
        assert_eq!(two.1, 2);
        assert_eq!(complex_roots(&f, 1e-12).unwrap().len(), 3);
    }

    #[test]
    fn certification_bound_holds() {
        let f = p(&[7, -3, 0, 5, 2, -1, 1]);
        let tol = 1e-10;
        let r = complex_roots(&f, tol).unwrap();
        let coeffs = f.to_complex_coeffs();
        let maxc = f.max_coeff_abs();
        let n = f.deg() as f64;
        for iv in &r {
            let val = horner(&coeffs, iv.center).norm();
            assert!(val <= n * tol * maxc * iv.center.norm().max(1.0).powf(n));
            assert!(iv.radius <= tol * iv.center.norm().max(1.0));
        }
    }

    #[test]
    fn gaussian_coefficients() {
        // (x - i)(x + 2)
        let f = &UnivariatePolynomial::linear(GaussianRational::from_int(1), -GaussianRational::i()) * &p(&[2, 1]);
        let r = complex_roots(&f, 1e-12).unwrap();
        assert!(has_root(&r, Complex64::i()));
        assert!(has_root(&r, Complex64::new(-2.0, 0.0)));
    }

    #[test]
    fn interval_arithmetic_encloses() {
        let a = ComplexInterval::new(Complex64::new(1.0, 2.0), 0.1);
        let b = ComplexInterval::new(Complex64::new(-0.5, 0.25), 0.05);
        let za = Complex64::new(1.05, 1.93);
        let zb = Complex64::new(-0.47, 0.27);
        assert!((a * b).contains(za * zb));
        assert!((a + b).contains(za + zb));
        assert!((a - b).contains(za - zb));
    }
}
