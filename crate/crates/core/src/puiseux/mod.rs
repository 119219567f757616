//! Newton polygons and Puiseux expansions of the branches of `P(x, y) = 0`.
//!
//! Expansions are computed in floating point with exact rational exponents. At infinity the
//! substitution `x = 1/t` is made and the expansion runs in `t`; exponents are reported in
//! powers of `x` (so they descend), while the requested order and residuals refer to `t`.

pub mod grid;
pub mod residual;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::roots::{aberth, horner_with_derivative};
use crate::algebra::{BivariatePolynomial, GaussianRational, Rational};

use grid::{lower_hull, Grid};
pub use residual::series_residual;

/// Maximum number of multiple-root refinements along one branch.
pub const MAX_MULTIPLE_DEPTH: usize = 8;
const MAX_STEPS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PuiseuxError {
    #[error("degree in y is {0}, at least 1 required")]
    DegreeTooLow(usize),
    #[error("centre {0} has no exact Gaussian rational form")]
    NonExactCenter(Complex64),
    #[error("order {order} is below the leading exponent {leading}")]
    OrderTooSmall { order: Rational, leading: Rational },
    #[error("coefficient solve ill-conditioned (condition estimate {condition:e})")]
    NumericBreakdown { condition: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum PuiseuxPoint {
    /// Exactly recentred.
    Exact(GaussianRational),
    /// Recentred in floating point.
    Numeric(Complex64),
    Infinity,
}

impl PuiseuxPoint {
    /// Exact point from a float, if it is a Gaussian rational with denominator at most 10^6.
    pub fn exact_from_complex(z: Complex64) -> Result<Self, PuiseuxError> {
        GaussianRational::rationalize(z, 0.0, 1_000_000).map(PuiseuxPoint::Exact).ok_or(PuiseuxError::NonExactCenter(z))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, PuiseuxPoint::Numeric(_))
    }

    fn grid(&self, p: &BivariatePolynomial) -> Grid {
        match self {
            PuiseuxPoint::Exact(a) => Grid::from_bivariate(&p.shift_x(a)),
            PuiseuxPoint::Numeric(z) => Grid::shifted(p, *z),
            PuiseuxPoint::Infinity => Grid::at_infinity(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonEdge {
    /// Branch exponent `gamma`: the edge carries branches `y ~ c x^gamma` (in `x` at infinity).
    #[serde(serialize_with = "ser_rat")]
    pub slope: Rational,
    /// Extent in the `y` direction, i.e. the number of branches on the edge.
    pub length: usize,
}

/// Lower convex hull of the support; vertices are `(y-exponent, x-exponent)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, usize)>,
    pub edges: Vec<PolygonEdge>,
    /// False when the centre was recentred numerically.
    pub exact: bool,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.edges.iter().map(|e| e.length).sum()
    }
}

fn support(g: &Grid) -> Vec<(usize, usize)> {
    (0..=g.degree_y()).filter_map(|j| g.lowest(j).map(|i| (j, i))).collect()
}

fn edge_gamma(a: (usize, usize), b: (usize, usize)) -> Rational {
    Rational::new(((a.1 as i64) - (b.1 as i64)).into(), ((b.0 - a.0) as i64).into())
}

pub fn newton_polygon(p: &BivariatePolynomial, point: &PuiseuxPoint) -> Result<NewtonPolygon, PuiseuxError> {
    if p.degree_y() < 1 {
        return Err(PuiseuxError::DegreeTooLow(p.degree_y()));
    }
    let g = point.grid(p);
    let vertices = lower_hull(&support(&g));
    let infinity = matches!(point, PuiseuxPoint::Infinity);
    let edges = vertices
        .windows(2)
        .map(|w| {
            let s = edge_gamma(w[0], w[1]);
            PolygonEdge { slope: if infinity { -s } else { s }, length: w[1].0 - w[0].0 }
        })
        .collect();
    Ok(NewtonPolygon { vertices, edges, exact: point.is_exact() })
}

/// One branch: `y = sum_k coefficients[k] * x^(leading + k/p)` at a finite point (in powers
/// of `x - x0`), or `sum_k coefficients[k] * x^(leading - k/p)` at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    pub ramification: u64,
    pub leading: Rational,
    pub coefficients: Vec<Complex64>,
    /// Residual of the truncation has no exponent `<= order` (in `x - x0`, or `1/x` at infinity).
    pub order: Rational,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PuiseuxJson {
    pub ramification: u64,
    pub exponents: Vec<String>,
    pub coefficients: Vec<[f64; 2]>,
}

fn rat_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(r))
}

impl PuiseuxSeries {
    pub fn exponents(&self) -> Vec<Rational> {
        let step = Rational::new(1.into(), (self.ramification as i64).into());
        (0..self.coefficients.len())
            .map(|k| {
                let d = &step * Rational::from_integer((k as i64).into());
                if self.at_infinity {
                    &self.leading - d
                } else {
                    &self.leading + d
                }
            })
            .collect()
    }

    /// Non-zero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(Rational, Complex64)> {
        self.exponents()
            .into_iter()
            .zip(self.coefficients.iter().copied())
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .collect()
    }

    /// Evaluate with the root `s` of `x - x0` (or of `x` at infinity) of order `1/p`, i.e. `s^p = x - x0`.
    pub fn eval_at_root(&self, s: Complex64) -> Complex64 {
        let p = self.ramification as i64;
        self.terms()
            .iter()
            .map(|(e, c)| {
                let k = (e * Rational::from_integer(p.into())).to_integer().to_i64().unwrap();
                c * s.powi(k as i32)
            })
            .sum()
    }

    pub fn to_json(&self) -> PuiseuxJson {
        PuiseuxJson {
            ramification: self.ramification,
            exponents: self.exponents().iter().map(rat_string).collect(),
            coefficients: self.coefficients.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

#[derive(Clone)]
struct Branch {
    grid: Grid,
    /// `x_k = x^(1/ram)`.
    ram: i64,
    /// `P(x, y) = x^shift Q_k(x_k, y_k)`.
    shift: Rational,
    /// Exponent of `x` multiplying `y_k` in `y = S + x^gap y_k`.
    gap: Rational,
    terms: Vec<(Rational, Complex64)>,
    multiple_depth: usize,
    /// Number of branches carried by this node.
    count: usize,
}

struct Leaf {
    ram: i64,
    terms: Vec<(Rational, Complex64)>,
}

/// Roots of `sum_t coeffs[t] w^t` grouped into clusters `(root, multiplicity)`.
fn clustered_roots(coeffs: &[Complex64]) -> Vec<(Complex64, usize)> {
    if coeffs.len() == 2 {
        return vec![(-coeffs[0] / coeffs[1], 1)];
    }
    let (z, _) = aberth(coeffs, None, 2000);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut used = vec![false; z.len()];
    let mut out = Vec::new();
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        let tol = 1e-4 * (1.0 + z[i].norm());
        let members: Vec<usize> = (i..z.len()).filter(|&k| !used[k] && (z[k] - z[i]).norm() <= tol).collect();
        for &k in &members {
            used[k] = true;
        }
        let mu = members.len();
        let mut w = members.iter().map(|&k| z[k]).sum::<Complex64>() / mu as f64;
        if mu > 1 {
            // the cluster centre is a simple root of the (mu-1)-th derivative
            let mut d: Vec<Complex64> = coeffs.to_vec();
            for _ in 1..mu {
                d = d.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
            }
            for _ in 0..20 {
                let (v, dv, _) = horner_with_derivative(&d, w);
                if dv.norm() <= 1e-300 * scale {
                    break;
                }
                let step = v / dv;
                w -= step;
                if step.norm() <= 1e-16 * (1.0 + w.norm()) {
                    break;
                }
            }
        } else {
            for _ in 0..6 {
                let (v, dv, _) = horner_with_derivative(coeffs, w);
                if dv.norm() == 0.0 {
                    break;
                }
                w -= v / dv;
            }
        }
        out.push((w, mu));
    }
    out
}

fn expand_branch(
    b: Branch,
    first: bool,
    order: &Rational,
    out: &mut Vec<Leaf>,
    steps: &mut usize,
) -> Result<(), PuiseuxError> {
    *steps += 1;
    if *steps > MAX_STEPS {
        return Err(PuiseuxError::NumericBreakdown { condition: f64::INFINITY });
    }
    let g = &b.grid;
    let col0 = g.lowest(0);
    let resolved = b.count == 1;
    if resolved {
        let done = match col0 {
            None => true,
            Some(i0) => &b.shift + Rational::new((i0 as i64).into(), b.ram.into()) > *order,
        };
        if done && !b.terms.is_empty() {
            out.push(Leaf { ram: b.ram, terms: b.terms });
            return Ok(());
        }
    }
    let pts = support(g);
    if !first && col0.is_none() {
        // y_k = 0 is an exact root: the series terminates
        if b.count > 1 {
            return Err(PuiseuxError::NumericBreakdown { condition: f64::INFINITY });
        }
        out.push(Leaf { ram: b.ram, terms: b.terms });
        return Ok(());
    }
    if first {
        if let Some(&(j_min, _)) = pts.first() {
            // y = 0 is a root of multiplicity j_min
            for _ in 0..j_min {
                out.push(Leaf { ram: 1, terms: Vec::new() });
            }
        }
    }
    let hull = lower_hull(&pts);
    let mut carried = 0;
    for w in hull.windows(2) {
        let (p0, p1) = (w[0], w[1]);
        let gamma = edge_gamma(p0, p1);
        if !first && !gamma.is_positive() {
            break;
        }
        let q = gamma.denom().to_i64().unwrap();
        let a = gamma.numer().to_i64().unwrap();
        let beta = q * p0.1 as i64 + a * p0.0 as i64;
        let len_t = (p1.0 - p0.0) / q as usize;
        let psi: Vec<Complex64> = (0..=len_t)
            .map(|t| {
                let j = p0.0 + q as usize * t;
                match g.lowest(j) {
                    Some(i) if q * i as i64 + a * j as i64 == beta => g.get(j, i),
                    _ => Complex64::new(0.0, 0.0),
                }
            })
            .collect();
        for (w_root, mu) in clustered_roots(&psi) {
            let r = w_root.norm().powf(1.0 / q as f64);
            for l in 0..q {
                let c = Complex64::from_polar(r, (w_root.arg() + std::f64::consts::TAU * l as f64) / q as f64);
                let (mut ng, _) = g.substitute(q, a, c);
                for col in ng.c.iter_mut().take(mu) {
                    if let Some(z) = col.first_mut() {
                        *z = Complex64::new(0.0, 0.0);
                    }
                }
                let lead = ng.c.get(mu).and_then(|col| col.first()).copied().unwrap_or_default();
                let lead_rel = ng.relative(mu, 0);
                if lead == Complex64::new(0.0, 0.0) || lead_rel < 1e-12 {
                    return Err(PuiseuxError::NumericBreakdown { condition: 1.0 / lead_rel.max(f64::MIN_POSITIVE) });
                }
                let ram = b.ram * q;
                let step = Rational::new(a.into(), ram.into());
                let exponent = &b.gap + &step;
                let mut terms = b.terms.clone();
                terms.push((exponent.clone(), c));
                let depth = b.multiple_depth + usize::from(mu > 1);
                if depth > MAX_MULTIPLE_DEPTH {
                    return Err(PuiseuxError::NumericBreakdown { condition: 1.0 / lead_rel });
                }
                let shift = &b.shift + Rational::new(beta.into(), ram.into());
                let child = Branch { grid: ng, ram, shift, gap: exponent, terms, multiple_depth: depth, count: mu };
                carried += mu;
                expand_branch(child, false, order, out, steps)?;
            }
        }
    }
    if !first && carried != b.count {
        return Err(PuiseuxError::NumericBreakdown { condition: f64::INFINITY });
    }
    Ok(())
}

fn to_series(leaf: Leaf, order: &Rational, infinity: bool) -> PuiseuxSeries {
    // the true ramification is the common denominator of the exponents
    let mut p: i64 = 1;
    for (e, _) in &leaf.terms {
        p = p.lcm(&e.denom().to_i64().unwrap());
    }
    debug_assert!(leaf.ram % p == 0);
    let sign = if infinity { -Rational::one() } else { Rational::one() };
    let lead = leaf.terms.first().map(|(e, _)| e.clone()).unwrap_or_else(Rational::zero);
    let pr = Rational::from_integer(p.into());
    let mut coefficients = Vec::new();
    for (e, c) in &leaf.terms {
        let k = ((e - &lead) * &pr).to_integer().to_usize().unwrap();
        if coefficients.len() <= k {
            coefficients.resize(k + 1, Complex64::new(0.0, 0.0));
        }
        coefficients[k] += c;
    }
    if coefficients.is_empty() {
        coefficients.push(Complex64::new(0.0, 0.0));
    }
    PuiseuxSeries {
        ramification: p as u64,
        leading: &sign * &lead,
        coefficients,
        order: order.clone(),
        at_infinity: infinity,
    }
}

/// All `deg_y P` branch expansions at `point`, each with residual of exponent beyond `order`.
pub fn puiseux_expand(
    p: &BivariatePolynomial,
    point: &PuiseuxPoint,
    order: &Rational,
) -> Result<Vec<PuiseuxSeries>, PuiseuxError> {
    if p.degree_y() < 1 {
        return Err(PuiseuxError::DegreeTooLow(p.degree_y()));
    }
    let infinity = matches!(point, PuiseuxPoint::Infinity);
    let root = Branch {
        grid: point.grid(p),
        ram: 1,
        shift: Rational::zero(),
        gap: Rational::zero(),
        terms: Vec::new(),
        multiple_depth: 0,
        count: p.degree_y(),
    };
    let mut leaves = Vec::new();
    let mut steps = 0;
    expand_branch(root, true, order, &mut leaves, &mut steps)?;
    let mut out: Vec<PuiseuxSeries> = leaves.into_iter().map(|l| to_series(l, order, infinity)).collect();
    for s in &out {
        // leading exponent in the expansion variable
        let lead_t = if infinity { -s.leading.clone() } else { s.leading.clone() };
        if s.coefficients[0] != Complex64::new(0.0, 0.0) && lead_t > *order {
            return Err(PuiseuxError::OrderTooSmall { order: order.clone(), leading: lead_t });
        }
    }
    out.sort_by(|a, b| {
        let (ea, eb) =
            if infinity { (-a.leading.clone(), -b.leading.clone()) } else { (a.leading.clone(), b.leading.clone()) };
        ea.cmp(&eb)
            .then(a.coefficients[0].re.total_cmp(&b.coefficients[0].re))
            .then(a.coefficients[0].im.total_cmp(&b.coefficients[0].im))
    });
    Ok(out)
}

/// Ramification indices of the branch cycles, descending (the cycle type of local monodromy).
pub fn ramification_multiset(series: &[PuiseuxSeries]) -> Vec<usize> {
    let mut counts = std::collections::BTreeMap::new();
    for s in series {
        *counts.entry(s.ramification as usize).or_insert(0usize) += 1;
    }
    let mut out = Vec::new();
    for (p, c) in counts {
        for _ in 0..c / p {
            out.push(p);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_bivariate;
    use crate::algebra::rational::rat;

    fn origin() -> PuiseuxPoint {
        PuiseuxPoint::Exact(GaussianRational::from_int(0))
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn polygons() {
        let np = newton_polygon(&parse_bivariate("y^2 - x").unwrap(), &origin()).unwrap();
        assert_eq!(np.edges, vec![PolygonEdge { slope: rat(1, 2), length: 2 }]);
        let np = newton_polygon(&parse_bivariate("y^3 - x^2").unwrap(), &origin()).unwrap();
        assert_eq!(np.edges, vec![PolygonEdge { slope: rat(2, 3), length: 3 }]);
        let np = newton_polygon(&parse_bivariate("y^5 + y - x").unwrap(), &PuiseuxPoint::Infinity).unwrap();
        assert_eq!(np.edges[0], PolygonEdge { slope: rat(1, 5), length: 5 });
        assert_eq!(np.total_length(), 5);
    }

    #[test]
    fn square_root() {
        let s = puiseux_expand(&parse_bivariate("y^2 - x").unwrap(), &origin(), &rat(3, 1)).unwrap();
        assert_eq!(s.len(), 2);
        for b in &s {
            assert_eq!(b.ramification, 2);
            assert_eq!(b.leading, rat(1, 2));
            assert_eq!(b.coefficients.len(), 1);
        }
        assert!(close(s[0].coefficients[0], Complex64::new(-1.0, 0.0)));
        assert!(close(s[1].coefficients[0], Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn binomial_series() {
        let s = puiseux_expand(&parse_bivariate("y^2 - (1 + x)").unwrap(), &origin(), &rat(2, 1)).unwrap();
        assert_eq!(s.len(), 2);
        let want = [1.0, 0.5, -0.125];
        for (b, sign) in s.iter().zip([-1.0, 1.0]) {
            assert_eq!(b.ramification, 1);
            for (k, w) in want.iter().enumerate() {
                assert!(close(b.coefficients[k], Complex64::new(sign * w, 0.0)));
            }
        }
    }

    #[test]
    fn cyclic_branches() {
        for n in 2..=7u32 {
            let s = puiseux_expand(&parse_bivariate(&format!("y^{n} - x")).unwrap(), &origin(), &rat(1, 1)).unwrap();
            assert_eq!(s.len(), n as usize);
            assert_eq!(ramification_multiset(&s), vec![n as usize]);
            for b in &s {
                assert!((b.coefficients[0].norm() - 1.0).abs() < 1e-12);
                assert!((b.coefficients[0].powu(n) - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn infinity_quintic() {
        let p = parse_bivariate("y^5 + y - x").unwrap();
        let s = puiseux_expand(&p, &PuiseuxPoint::Infinity, &rat(1, 1)).unwrap();
        assert_eq!(s.len(), 5);
        for b in &s {
            assert_eq!(b.leading, rat(1, 5));
            assert_eq!(b.ramification, 5);
            assert!(series_residual(&p, &PuiseuxPoint::Infinity, b) <= 1e-10);
        }
    }

    #[test]
    fn node_and_cusp() {
        // node at the origin: two smooth branches y = +-x sqrt(1+x)
        let p = parse_bivariate("y^2 - x^2 - x^3").unwrap();
        let s = puiseux_expand(&p, &origin(), &rat(4, 1)).unwrap();
        assert_eq!(ramification_multiset(&s), vec![1, 1]);
        // (y - x)^2 = x^5 separates only at exponent 5/2
        let p = parse_bivariate("(y - x)^2 - x^5").unwrap();
        let s = puiseux_expand(&p, &origin(), &rat(3, 1)).unwrap();
        assert_eq!(ramification_multiset(&s), vec![2]);
        for b in &s {
            assert_eq!(b.leading, rat(1, 1));
            assert!(series_residual(&p, &origin(), b) <= 1e-10);
        }
    }

    #[test]
    fn pole_branch() {
        // x y^2 - 1: two branches y = +-x^(-1/2)
        let p = parse_bivariate("x*y^2 - 1").unwrap();
        let s = puiseux_expand(&p, &origin(), &rat(1, 1)).unwrap();
        assert_eq!(ramification_multiset(&s), vec![2]);
        assert_eq!(s[0].leading, rat(-1, 2));
    }

    #[test]
    fn order_too_small() {
        let p = parse_bivariate("y^2 - x^3").unwrap();
        assert!(matches!(puiseux_expand(&p, &origin(), &rat(1, 1)), Err(PuiseuxError::OrderTooSmall { .. })));
        assert!(matches!(
            PuiseuxPoint::exact_from_complex(Complex64::new(std::f64::consts::PI, 0.0)),
            Err(PuiseuxError::NonExactCenter(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = puiseux_expand(&parse_bivariate("y^2 - x").unwrap(), &origin(), &rat(1, 1)).unwrap();
        let j = serde_json::to_value(s[1].to_json()).unwrap();
        assert_eq!(j["ramification"], 2);
        assert_eq!(j["exponents"][0], "1/2");
        assert_eq!(j["coefficients"][0][0], 1.0);
    }
}
