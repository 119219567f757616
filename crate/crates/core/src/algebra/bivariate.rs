//! Dense polynomials in two variables `x`, `y`, stored as polynomials in `y` whose
//! coefficients are polynomials in `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::{push_term, UnivariatePolynomial};
use super::rational::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BivariatePolynomial {
    /// `y_coeffs[j]` is the coefficient `P_j(x)` of `y^j`; trailing zeros trimmed.
    y_coeffs: Vec<UnivariatePolynomial>,
}

impl BivariatePolynomial {
    pub fn new(mut y_coeffs: Vec<UnivariatePolynomial>) -> Self {
        while y_coeffs.last().is_some_and(|c| c.is_zero()) {
            y_coeffs.pop();
        }
        BivariatePolynomial { y_coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from a grid `grid[j][i]` = coefficient of `x^i y^j`.
    pub fn from_grid(grid: Vec<Vec<GaussianRational>>) -> Self {
        Self::new(grid.into_iter().map(UnivariatePolynomial::new).collect())
    }

    pub fn from_int_grid(grid: &[&[i64]]) -> Self {
        Self::new(grid.iter().map(|r| UnivariatePolynomial::from_ints(r)).collect())
    }

    /// Polynomial in `y` alone with constant coefficients.
    pub fn from_y_poly(p: &UnivariatePolynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| UnivariatePolynomial::constant(c.clone())).collect())
    }

    pub fn from_x_poly(p: &UnivariatePolynomial) -> Self {
        Self::new(vec![p.clone()])
    }

    pub fn y() -> Self {
        Self::new(vec![UnivariatePolynomial::zero(), UnivariatePolynomial::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![UnivariatePolynomial::x()])
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![UnivariatePolynomial::constant(c)])
    }

    /// `f(y) - x`, the curve whose solution is the inverse function of `f`.
    pub fn inverse_curve(f: &UnivariatePolynomial) -> Self {
        &Self::from_y_poly(f) - &Self::x()
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_coeffs(&self) -> &[UnivariatePolynomial] {
        &self.y_coeffs
    }

    pub fn y_coeff(&self, j: usize) -> UnivariatePolynomial {
        self.y_coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize, j: usize) -> GaussianRational {
        self.y_coeffs.get(j).map(|p| p.coeff(i)).unwrap_or_else(GaussianRational::zero)
    }

    pub fn degree_y(&self) -> usize {
        self.y_coeffs.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.y_coeffs.iter().map(|p| p.deg()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.y_coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| j + p.deg()).max().unwrap_or(0)
    }

    /// Leading coefficient in `y`, a polynomial in `x`.
    pub fn leading_coeff_y(&self) -> UnivariatePolynomial {
        self.y_coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.y_coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&GaussianRational::from_int(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(self.y_coeffs.iter().map(|p| p.derivative()).collect())
    }

    /// Specialize `x` to an exact value, giving a polynomial in `y`.
    pub fn eval_x(&self, x: &GaussianRational) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.y_coeffs.iter().map(|p| p.eval(x)).collect())
    }

    /// Complex coefficients of `P(x, y)` as a polynomial in `y`, lowest degree first.
    pub fn eval_x_complex(&self, x: Complex64) -> Vec<Complex64> {
        self.y_coeffs.iter().map(|p| p.eval_complex(x)).collect()
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in self.y_coeffs.iter().rev() {
            acc = acc * y + p.eval_complex(x);
        }
        acc
    }

    /// `P(x + shift, y)`.
    pub fn shift_x(&self, shift: &GaussianRational) -> Self {
        Self::new(self.y_coeffs.iter().map(|p| p.shift(shift)).collect())
    }

    /// Substitute `y -> g(x)`, giving a polynomial in `x`.
    pub fn substitute_y(&self, g: &UnivariatePolynomial) -> UnivariatePolynomial {
        let mut acc = UnivariatePolynomial::zero();
        for p in self.y_coeffs.iter().rev() {
            acc = &(&acc * g) + p;
        }
        acc
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap_variables(&self) -> Self {
        let dx = self.degree_x();
        let mut grid = vec![vec![GaussianRational::zero(); self.y_coeffs.len()]; dx + 1];
        for (j, p) in self.y_coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                grid[i][j] = c.clone();
            }
        }
        Self::from_grid(grid)
    }

    /// Content in `y`: monic gcd of all coefficients `P_j(x)`.
    pub fn content_y(&self) -> UnivariatePolynomial {
        let mut g = UnivariatePolynomial::zero();
        for p in &self.y_coeffs {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content in `y`.
    pub fn primitive_part_y(&self) -> Self {
        let c = self.content_y();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.y_coeffs.iter().map(|p| p.exact_div(&c)).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.y_coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_x_poly(&self, q: &UnivariatePolynomial) -> Self {
        Self::new(self.y_coeffs.iter().map(|p| p * q).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(GaussianRational::from_int(1));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nonzero monomials as `(deg_x, deg_y, coefficient)`.
    pub fn support(&self) -> Vec<(usize, usize, GaussianRational)> {
        let mut out = Vec::new();
        for (j, p) in self.y_coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    /// Render in the expression grammar.
    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        let mut s = String::new();
        for (j, p) in self.y_coeffs.iter().enumerate().rev() {
            for (i, c) in p.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                match j {
                    0 => {}
                    1 => mono.push(yv.to_string()),
                    _ => mono.push(format!("{yv}^{j}")),
                }
                match i {
                    0 => {}
                    1 => mono.push(xv.to_string()),
                    _ => mono.push(format!("{xv}^{i}")),
                }
                push_term(&mut s, c, &mono.join("*"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let n = self.y_coeffs.len().max(rhs.y_coeffs.len());
        BivariatePolynomial::new((0..n).map(|j| &self.y_coeff(j) + &rhs.y_coeff(j)).collect())
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial::new(self.y_coeffs.iter().map(|p| -p).collect())
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let mut out = vec![UnivariatePolynomial::zero(); self.y_coeffs.len() + rhs.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            for (j, b) in rhs.y_coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BivariatePolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_printing() {
        // y^5 + y - x
        let p = BivariatePolynomial::from_int_grid(&[&[0, -1], &[1], &[], &[], &[], &[1]]);
        assert_eq!(p.degree_y(), 5);
        assert_eq!(p.degree_x(), 1);
        assert_eq!(p.to_string(), "y^5 + y - x");
        assert_eq!(p.swap_variables().swap_variables(), p);
    }

    #[test]
    fn primitive_part_removes_x_content() {
        // x*y^2 - x^2 = x (y^2 - x)
        let p = BivariatePolynomial::from_int_grid(&[&[0, 0, -1], &[], &[0, 1]]);
        let q = BivariatePolynomial::from_int_grid(&[&[0, -1], &[], &[1]]);
        assert_eq!(p.primitive_part_y(), q);
    }
}
