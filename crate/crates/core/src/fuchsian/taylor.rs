//! Taylor-series stepping for `Y' = A(x) Y`, `A(x) = sum A_i / (x - a_i)`.
//!
//! At a point `x` the coefficients of `A(x + h)` are `B_m = sum A_i (-1)^m / (x - a_i)^(m+1)`,
//! and `Y(x + h) = sum Y_m h^m` with `(m + 1) Y_(m+1) = sum_(j <= m) B_j Y_(m-j)`. Truncations
//! at orders `P - 1` and `P + 1` form an embedded pair; the step length is chosen from the two
//! trailing terms and a step is rejected (halved) while their estimate exceeds the tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Truncation order of the series.
pub const ORDER: usize = 28;
/// Largest step as a fraction of the distance to the nearest pole.
pub const RADIUS_FRACTION: f64 = 0.6;
const SAFETY: f64 = 0.8;
const MIN_STEP: f64 = 1e-13;

pub(crate) struct Field<'a> {
    pub poles: &'a [Complex64],
    pub residues: &'a [DMatrix<Complex64>],
}

impl Field<'_> {
    fn is_zero(&self) -> bool {
        self.residues.iter().all(|a| a.iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }

    /// `Y_0, ..., Y_(ORDER+1)` at `x`.
    fn series(&self, x: Complex64, y: &DMatrix<Complex64>) -> Vec<DMatrix<Complex64>> {
        let n = y.nrows();
        let inv: Vec<Complex64> = self.poles.iter().map(|a| 1.0 / (x - a)).collect();
        let mut pw = inv.clone();
        let mut b = Vec::with_capacity(ORDER + 1);
        for m in 0..=ORDER {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let mut bm = DMatrix::<Complex64>::zeros(n, n);
            for (a, p) in self.residues.iter().zip(&pw) {
                bm += a * (*p * sign);
            }
            b.push(bm);
            for (p, c) in pw.iter_mut().zip(&inv) {
                *p *= c;
            }
        }
        let mut ys = vec![y.clone()];
        for m in 0..=ORDER {
            let mut acc = DMatrix::<Complex64>::zeros(n, n);
            for j in 0..=m {
                acc += &b[j] * &ys[m - j];
            }
            ys.push(acc / Complex64::new((m + 1) as f64, 0.0));
        }
        ys
    }

    /// Advances `y` from `from` to `to` along the segment. Returns the number of accepted
    /// steps, or the point where the step length fell below the floor.
    pub fn segment(
        &self,
        y: &mut DMatrix<Complex64>,
        from: Complex64,
        to: Complex64,
        tol: f64,
    ) -> Result<usize, Complex64> {
        if self.is_zero() {
            return Ok(0);
        }
        let len_scale = 1.0 + from.norm().max(to.norm());
        let mut x = from;
        let mut steps = 0;
        while (to - x).norm() > 1e-15 * len_scale {
            let rest = to - x;
            let rho = self.poles.iter().map(|a| (x - a).norm()).fold(f64::INFINITY, f64::min);
            let ys = self.series(x, y);
            let target = tol * y.norm().max(1.0);
            let p = ORDER as f64;
            let (np, nq) = (ys[ORDER].norm(), ys[ORDER + 1].norm());
            let mut s = rest.norm().min(RADIUS_FRACTION * rho);
            if np > 0.0 {
                s = s.min(SAFETY * (target / np).powf(1.0 / p));
            }
            if nq > 0.0 {
                s = s.min(SAFETY * (target / nq).powf(1.0 / (p + 1.0)));
            }
            while np * s.powf(p) + nq * s.powf(p + 1.0) > target {
                s *= 0.5;
                if s < MIN_STEP * len_scale {
                    return Err(x);
                }
            }
            if s < MIN_STEP * len_scale {
                return Err(x);
            }
            let last = s >= rest.norm();
            let h = if last { rest } else { rest * (s / rest.norm()) };
            let mut acc = ys[ORDER + 1].clone();
            for m in (0..=ORDER).rev() {
                acc = acc * h + &ys[m];
            }
            *y = acc;
            x = if last { to } else { x + h };
            steps += 1;
        }
        Ok(steps)
    }

    /// Transports the identity around a closed polyline.
    pub fn transport(&self, n: usize, path: &[Complex64], tol: f64) -> Result<(DMatrix<Complex64>, usize), Complex64> {
        let mut y = DMatrix::<Complex64>::identity(n, n);
        let mut steps = 0;
        for w in path.windows(2) {
            steps += self.segment(&mut y, w[0], w[1], tol)?;
        }
        Ok((y, steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_power() {
        // y' = (1/2) y / x from 1 to 4 gives y = 2
        let poles = [c(0.0, 0.0)];
        let res = [DMatrix::from_element(1, 1, c(0.5, 0.0))];
        let f = Field { poles: &poles, residues: &res };
        let mut y = DMatrix::identity(1, 1);
        f.segment(&mut y, c(1.0, 0.0), c(4.0, 0.0), 1e-12).unwrap();
        assert!((y[(0, 0)] - c(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn underflow_on_pole() {
        let poles = [c(0.0, 0.0)];
        let res = [DMatrix::from_element(1, 1, c(1.0, 0.0))];
        let f = Field { poles: &poles, residues: &res };
        let mut y = DMatrix::identity(1, 1);
        assert!(f.segment(&mut y, c(1.0, 0.0), c(-1.0, 0.0), 1e-10).is_err());
    }
}
