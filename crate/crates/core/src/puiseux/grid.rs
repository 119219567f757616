//! Floating-point bivariate polynomials with running magnitude bounds.
//!
//! `c[j][i]` is the coefficient of `x^i y^j`; `m[j][i]` bounds the sum of the absolute values
//! of everything that contributed to it, so `|c| <= ZERO_REL * m` marks cancellation noise.

use num_complex::Complex64;

use crate::algebra::BivariatePolynomial;

pub const ZERO_REL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Grid {
    pub c: Vec<Vec<Complex64>>,
    pub m: Vec<Vec<f64>>,
}

fn binomials(n: usize) -> Vec<Vec<f64>> {
    let mut b = vec![vec![1.0]];
    for k in 1..=n {
        let mut row = vec![1.0; k + 1];
        for l in 1..k {
            row[l] = b[k - 1][l - 1] + b[k - 1][l];
        }
        b.push(row);
    }
    b
}

impl Grid {
    pub fn from_bivariate(p: &BivariatePolynomial) -> Self {
        let c: Vec<Vec<Complex64>> = p.y_coeffs().iter().map(|a| a.to_complex_coeffs()).collect();
        let m = c.iter().map(|col| col.iter().map(|z| z.norm()).collect()).collect();
        Grid { c, m }
    }

    /// `P(x0 + x, y)` by Taylor shift of each column.
    pub fn shifted(p: &BivariatePolynomial, x0: Complex64) -> Self {
        let mut g = Grid::from_bivariate(p);
        let a0 = x0.norm();
        for (col, mag) in g.c.iter_mut().zip(g.m.iter_mut()) {
            let n = col.len();
            for k in 0..n {
                for i in (k..n.saturating_sub(1)).rev() {
                    let add = col[i + 1] * x0;
                    col[i] += add;
                    mag[i] += mag[i + 1] * a0;
                }
            }
        }
        g
    }

    /// `t^deg_x P(1/t, y)`.
    pub fn at_infinity(p: &BivariatePolynomial) -> Self {
        let d = p.degree_x();
        let mut g = Grid::from_bivariate(p);
        for (col, mag) in g.c.iter_mut().zip(g.m.iter_mut()) {
            col.resize(d + 1, Complex64::new(0.0, 0.0));
            mag.resize(d + 1, 0.0);
            col.reverse();
            mag.reverse();
        }
        g
    }

    pub fn degree_y(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn get(&self, j: usize, i: usize) -> Complex64 {
        self.c.get(j).and_then(|col| col.get(i)).copied().unwrap_or_default()
    }

    pub fn is_zero_at(&self, j: usize, i: usize) -> bool {
        match self.c.get(j).and_then(|col| col.get(i)) {
            None => true,
            Some(z) => *z == Complex64::new(0.0, 0.0) || z.norm() <= ZERO_REL * self.m[j][i],
        }
    }

    /// Lowest `x`-exponent with a non-negligible coefficient in column `j`.
    pub fn lowest(&self, j: usize) -> Option<usize> {
        (0..self.c.get(j).map_or(0, |c| c.len())).find(|&i| !self.is_zero_at(j, i))
    }

    /// Relative size of a coefficient against its magnitude bound.
    pub fn relative(&self, j: usize, i: usize) -> f64 {
        let m = self.m[j][i];
        if m == 0.0 {
            0.0
        } else {
            self.c[j][i].norm() / m
        }
    }

    /// `x1^(-beta) Q(x1^q, x1^a (c + y1))` with `beta` the minimal exponent over the support.
    /// Negligible coefficients are dropped. Returns the new grid and `beta`.
    pub fn substitute(&self, q: i64, a: i64, c: Complex64) -> (Grid, i64) {
        let n = self.degree_y();
        let mut beta = i64::MAX;
        for j in 0..=n {
            for i in 0..self.c[j].len() {
                if !self.is_zero_at(j, i) {
                    beta = beta.min(q * i as i64 + a * j as i64);
                }
            }
        }
        let mut width = 0usize;
        for j in 0..=n {
            for i in 0..self.c[j].len() {
                if !self.is_zero_at(j, i) {
                    width = width.max((q * i as i64 + a * j as i64 - beta) as usize + 1);
                }
            }
        }
        let binom = binomials(n);
        let mut cpow = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=n {
            cpow.push(cpow[k - 1] * c);
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut out = Grid { c: vec![vec![zero; width]; n + 1], m: vec![vec![0.0; width]; n + 1] };
        for j in 0..=n {
            for i in 0..self.c[j].len() {
                if self.is_zero_at(j, i) {
                    continue;
                }
                let e = (q * i as i64 + a * j as i64 - beta) as usize;
                let (v, mv) = (self.c[j][i], self.m[j][i]);
                for l in 0..=j {
                    let f = binom[j][l];
                    out.c[l][e] += v * cpow[j - l] * f;
                    out.m[l][e] += mv * cpow[j - l].norm() * f;
                }
            }
        }
        (out, beta)
    }
}

/// Lower convex hull of `(j, i)` points sorted by `j`.
pub fn lower_hull(points: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut h: Vec<(usize, usize)> = Vec::new();
    for &p in points {
        while h.len() >= 2 {
            let (a, b) = (h[h.len() - 2], h[h.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
            if cross <= 0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}
