//! Simultaneous predictor–corrector continuation of all roots of `P(x, .)`.
//!
//! Predictor: Euler step along `dy/dx = -P_x / P_y`. Corrector: Newton on `P(x, .)`. A step
//! is accepted when, for every branch, the corrector contracts by a factor of at least 4
//! within three iterations and the corrected roots stay separated; otherwise the step is
//! halved.

use num_complex::Complex64;

use crate::algebra::roots::{aberth, horner_with_derivative};
use crate::algebra::BivariatePolynomial;
use crate::perm::Permutation;

use super::loops::Loop;
use super::MonodromyError;

const MIN_STEP: f64 = 1e-13;

/// `P` with complex coefficients, evaluated in `x` then `y`.
#[derive(Clone, Debug)]
pub struct NumericCurve {
    /// `coeffs[j]` = coefficients in `x` of the `y^j` coefficient.
    coeffs: Vec<Vec<Complex64>>,
    dcoeffs: Vec<Vec<Complex64>>,
}

impl NumericCurve {
    pub fn new(p: &BivariatePolynomial) -> Self {
        let coeffs: Vec<Vec<Complex64>> = p.y_coeffs().iter().map(|c| c.to_complex_coeffs()).collect();
        let dcoeffs = p.y_coeffs().iter().map(|c| c.derivative().to_complex_coeffs()).collect();
        NumericCurve { coeffs, dcoeffs }
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients in `y` of `P(x, .)` and `P_x(x, .)`.
    pub fn at(&self, x: Complex64) -> (Vec<Complex64>, Vec<Complex64>) {
        let ev = |c: &Vec<Complex64>| c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &b| a * x + b);
        (self.coeffs.iter().map(ev).collect(), self.dcoeffs.iter().map(ev).collect())
    }

    /// Roots of `P(x, .)`, polished by Newton.
    pub fn roots_at(&self, x: Complex64) -> Vec<Complex64> {
        let (c, _) = self.at(x);
        let (mut z, _) = aberth(&c, None, 1000);
        for zi in z.iter_mut() {
            for _ in 0..4 {
                let (p, dp, _) = horner_with_derivative(&c, *zi);
                if dp.norm() == 0.0 {
                    break;
                }
                let d = p / dp;
                if d.re.is_finite() && d.im.is_finite() {
                    *zi -= d;
                }
            }
        }
        z
    }
}

/// Sort roots by real part descending, then imaginary part descending.
pub fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| {
        let scale = 1e-12 * (1.0 + a.norm().max(b.norm()));
        if (a.re - b.re).abs() > scale {
            b.re.total_cmp(&a.re)
        } else {
            b.im.total_cmp(&a.im)
        }
    });
}

pub fn min_separation(z: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..z.len() {
        for j in 0..i {
            m = m.min((z[i] - z[j]).norm());
        }
    }
    m
}

fn newton_step(c: &[Complex64], y: Complex64) -> Option<Complex64> {
    let (p, dp, _) = horner_with_derivative(c, y);
    let d = p / dp;
    (d.re.is_finite() && d.im.is_finite()).then_some(d)
}

/// Track `ys` from `x0` to `x1` along the straight segment.
pub fn track_segment(
    curve: &NumericCurve,
    x0: Complex64,
    x1: Complex64,
    ys: &mut [Complex64],
) -> Result<(), MonodromyError> {
    let n = ys.len();
    let dx = x1 - x0;
    let mut s = 0.0f64;
    let mut h = 1.0f64;
    while s < 1.0 {
        h = h.min(1.0 - s);
        if h < MIN_STEP {
            return Err(MonodromyError::PathCollision { x: x0 + dx * s });
        }
        let x = x0 + dx * s;
        let xn = x0 + dx * (s + h);
        let (c, cx) = curve.at(x);
        let (cn, _) = curve.at(xn);
        let sep = min_separation(ys);
        let mut new = Vec::with_capacity(n);
        let mut ok = true;
        for &y in ys.iter() {
            let (_, py, _) = horner_with_derivative(&c, y);
            let (px, _, _) = horner_with_derivative(&cx, y);
            if py.norm() == 0.0 {
                return Err(MonodromyError::SingularOnPath { x });
            }
            let pred = y - px / py * (xn - x);
            let scale = 1.0 + pred.norm();
            let mut z = pred;
            let mut prev = f64::INFINITY;
            let mut contracted = false;
            let mut first = 0.0;
            for it in 0..3 {
                let Some(d) = newton_step(&cn, z) else {
                    break;
                };
                z -= d;
                let dn = d.norm();
                if it == 0 {
                    first = dn;
                }
                if dn <= 1e-14 * scale || (it > 0 && dn <= prev / 4.0) {
                    contracted = true;
                    break;
                }
                prev = dn;
            }
            if !contracted || first > sep / 8.0 || (z - y).norm() > sep / 3.0 {
                ok = false;
                break;
            }
            for _ in 0..4 {
                match newton_step(&cn, z) {
                    Some(d) if d.norm() > 1e-15 * scale => z -= d,
                    _ => break,
                }
            }
            new.push(z);
        }
        if ok {
            let new_sep = min_separation(&new);
            if !(new_sep > 0.0) || new.iter().zip(ys.iter()).any(|(a, b)| (a - b).norm() > new_sep / 3.0) {
                ok = false;
            }
        }
        if ok {
            ys.copy_from_slice(&new);
            s += h;
            h = (h * 2.0).min(1.0);
        } else {
            h /= 2.0;
        }
    }
    Ok(())
}

/// Minimal-cost perfect matching (Hungarian algorithm); `assign[i]` is the column of row `i`.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

/// Default end-matching margin as a fraction of the minimal root separation.
pub const MATCHING_MARGIN: f64 = 1.0 / 3.0;

/// Track `ys` along a polyline. `ys` must hold every root: steps are accepted against their
/// minimal separation, so a subset can jump branches.
pub fn track_path(curve: &NumericCurve, waypoints: &[Complex64], ys: &mut [Complex64]) -> Result<(), MonodromyError> {
    for w in waypoints.windows(2) {
        if w[0] != w[1] {
            track_segment(curve, w[0], w[1], ys)?;
        }
    }
    Ok(())
}

/// Continue the labelled roots `start` along `l`; `sigma(i) = j` when branch `i` ends at
/// start root `j`.
pub fn continue_roots(curve: &NumericCurve, l: &Loop, start: &[Complex64]) -> Result<Permutation, MonodromyError> {
    continue_roots_with(curve, l, start, MATCHING_MARGIN)
}

/// As [`continue_roots`], accepting an end match when its distance is below `margin` times
/// the minimal separation of the start roots.
pub fn continue_roots_with(
    curve: &NumericCurve,
    l: &Loop,
    start: &[Complex64],
    margin: f64,
) -> Result<Permutation, MonodromyError> {
    let mut ys = start.to_vec();
    track_path(curve, &l.waypoints, &mut ys)?;
    let cost: Vec<Vec<f64>> = ys.iter().map(|y| start.iter().map(|s| (y - s).norm()).collect()).collect();
    let assign = hungarian(&cost);
    let sep = min_separation(start);
    for (i, &j) in assign.iter().enumerate() {
        if cost[i][j] >= sep * margin {
            return Err(MonodromyError::MatchingFailed { distance: cost[i][j], separation: sep });
        }
    }
    Ok(Permutation::from_images(assign).expect("assignment is a bijection"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hungarian_beats_greedy() {
        // greedy picks (0,0) then is forced into (1,1) = 100
        let cost = vec![vec![1.0, 2.0], vec![2.0, 100.0]];
        assert_eq!(hungarian(&cost), vec![1, 0]);
        let cost = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        let a = hungarian(&cost);
        let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
        assert_eq!(total, 5.0);
    }

    #[test]
    fn square_root_swaps() {
        let p = crate::algebra::parse_bivariate("y^2 - x").unwrap();
        let c = NumericCurve::new(&p);
        let base = Complex64::new(2.0, 0.0);
        let mut start = c.roots_at(base);
        sort_roots(&mut start);
        let l = super::super::loops::circle_loop(base, Complex64::new(0.0, 0.0), 64);
        let sigma = continue_roots(&c, &l, &start).unwrap();
        assert_eq!(sigma.to_string(), "(1 2)");
        let small = super::super::loops::circle_loop(base, Complex64::new(3.0, 0.0), 64);
        assert!(continue_roots(&c, &small, &start).unwrap().is_identity());
    }
}
