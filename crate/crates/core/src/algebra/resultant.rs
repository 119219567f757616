//! Resultants and discriminants.
//!
//! The resultant is the Sylvester determinant with the rows of the first argument on top,
//! i.e. `Res(P, Q) = lc(P)^deg Q * prod Q(alpha)` over the roots `alpha` of `P`. With this
//! convention `Res_y(y - a, y - b) = a - b` and `Res_y(y^2 - x, 2y) = -4x`.

use num_traits::{One, Zero};

use super::bivariate::BivariatePolynomial;
use super::poly::UnivariatePolynomial;
use super::rational::GaussianRational;
use super::AlgebraError;

/// Resultant of two univariate polynomials over Q(i), computed by the Euclidean remainder
/// sequence.
pub fn resultant(a: &UnivariatePolynomial, b: &UnivariatePolynomial) -> GaussianRational {
    if a.is_zero() || b.is_zero() {
        return GaussianRational::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = GaussianRational::one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return &acc * &b.leading_coeff().pow(m as i64);
        }
        if m == 0 {
            // Res(a, b) with a constant = a^n
            return &acc * &a.leading_coeff().pow(n as i64);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return GaussianRational::zero();
        }
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        let k = r.deg();
        let mut factor = b.leading_coeff().pow((m - k) as i64);
        if (m * n) % 2 == 1 {
            factor = -factor;
        }
        acc = &acc * &factor;
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(xs[k], ys[k])`.
pub fn interpolate(xs: &[GaussianRational], ys: &[GaussianRational]) -> UnivariatePolynomial {
    let n = xs.len();
    let mut dd: Vec<GaussianRational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = &num / &den;
        }
    }
    let mut p = UnivariatePolynomial::zero();
    for i in (0..n).rev() {
        p = &(&p * &UnivariatePolynomial::linear(GaussianRational::one(), -&xs[i]))
            + &UnivariatePolynomial::constant(dd[i].clone());
    }
    p
}

/// Resultant with respect to `y`, a polynomial in `x`.
pub fn resultant_y(p: &BivariatePolynomial, q: &BivariatePolynomial) -> Result<UnivariatePolynomial, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (m, n) = (p.degree_y(), q.degree_y());
    if m == 0 && n == 0 {
        return Ok(UnivariatePolynomial::one());
    }
    let bound = p.degree_x() * n + q.degree_x() * m;
    let lp = p.leading_coeff_y();
    let lq = q.leading_coeff_y();
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x0 = GaussianRational::from_int(k);
        k += 1;
        if lp.eval(&x0).is_zero() || lq.eval(&x0).is_zero() {
            continue;
        }
        ys.push(resultant(&p.eval_x(&x0), &q.eval_x(&x0)));
        xs.push(x0);
    }
    Ok(interpolate(&xs, &ys))
}

/// Discriminant in `y`: `(-1)^{n(n-1)/2} Res_y(P, dP/dy) / lc_y(P)`.
pub fn discriminant_y(p: &BivariatePolynomial) -> Result<UnivariatePolynomial, AlgebraError> {
    let n = p.degree_y();
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if n < 2 {
        return Err(AlgebraError::DegreeTooLow { degree: n, required: 2 });
    }
    let res = resultant_y(p, &p.derivative_y())?;
    let lc = p.leading_coeff_y();
    let mut d = res.exact_div(&lc);
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    Ok(d)
}

/// Discriminant of a univariate polynomial.
pub fn discriminant(p: &UnivariatePolynomial) -> GaussianRational {
    let n = p.deg();
    let r = resultant(p, &p.derivative());
    let mut d = &r / &p.leading_coeff();
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    fn biv(grid: &[&[i64]]) -> BivariatePolynomial {
        BivariatePolynomial::from_int_grid(grid)
    }

    /// Sylvester determinant over Q(i)[x] evaluated pointwise, by Gaussian elimination: an
    /// independent route to the resultant.
    fn sylvester_det(a: &UnivariatePolynomial, b: &UnivariatePolynomial) -> GaussianRational {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut mat = vec![vec![GaussianRational::zero(); size]; size];
        for r in 0..n {
            for (k, c) in a.coeffs().iter().enumerate() {
                mat[r][r + m - k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in b.coeffs().iter().enumerate() {
                mat[n + r][r + n - k] = c.clone();
            }
        }
        let mut det = GaussianRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return GaussianRational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det = &det * &mat[col][col];
            let inv = mat[col][col].inv().unwrap();
            for r in col + 1..size {
                let f = &mat[r][col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..size {
                    let t = &f * &mat[col][c];
                    mat[r][c] -= &t;
                }
            }
        }
        det
    }

    #[test]
    fn sylvester_examples() {
        // Res_y(y^2 - x, 2y) = -4x
        let p = biv(&[&[0, -1], &[], &[1]]);
        let q = biv(&[&[], &[2]]);
        assert_eq!(resultant_y(&p, &q).unwrap(), UnivariatePolynomial::from_ints(&[0, -4]));
        // common factor
        let p = biv(&[&[0, -1], &[1]]);
        assert!(resultant_y(&p, &p).unwrap().is_zero());
        // Res_y(y - a, y - b) = a - b
        let a = GaussianRational::from_frac(3, 2);
        let b = GaussianRational::from_int(-5);
        let pa = UnivariatePolynomial::linear(GaussianRational::one(), -&a);
        let pb = UnivariatePolynomial::linear(GaussianRational::one(), -&b);
        assert_eq!(resultant(&pa, &pb), &a - &b);
        assert_eq!(sylvester_det(&pa, &pb), &a - &b);
    }

    #[test]
    fn discriminant_examples() {
        let p = biv(&[&[0, -1], &[], &[1]]);
        assert_eq!(discriminant_y(&p).unwrap(), UnivariatePolynomial::from_ints(&[0, 4]));
        let p = biv(&[&[1, 0, -1], &[], &[1]]);
        assert_eq!(discriminant_y(&p).unwrap(), UnivariatePolynomial::from_ints(&[-4, 0, 4]));
        let p = biv(&[&[0, -1], &[1]]);
        assert!(matches!(discriminant_y(&p), Err(AlgebraError::DegreeTooLow { .. })));
        // y^5 + y - x: 5^5 y^4 ... disc = 3125 - ... ; check degree 4 in x
        let p = biv(&[&[0, -1], &[1], &[], &[], &[], &[1]]);
        let d = discriminant_y(&p).unwrap();
        assert_eq!(d.deg(), 4);
        assert_eq!(d, UnivariatePolynomial::from_ints(&[256, 0, 0, 0, 3125]));
    }

    #[test]
    fn euclid_matches_sylvester() {
        let a = UnivariatePolynomial::from_ints(&[3, -1, 0, 2]);
        let b = UnivariatePolynomial::from_ints(&[1, 4, 5]);
        assert_eq!(resultant(&a, &b), sylvester_det(&a, &b));
        let c = UnivariatePolynomial::new(vec![
            GaussianRational::new(rat(1, 2), rat(1, 1)),
            GaussianRational::from_int(2),
            GaussianRational::i(),
        ]);
        assert_eq!(resultant(&a, &c), sylvester_det(&a, &c));
        assert_eq!(resultant(&c, &b), sylvester_det(&c, &b));
    }

    fn small_biv() -> impl Strategy<Value = BivariatePolynomial> {
        prop::collection::vec(prop::collection::vec(-3i64..4, 0..3), 2..4).prop_map(|rows| {
            let mut p = BivariatePolynomial::new(rows.iter().map(|r| UnivariatePolynomial::from_ints(r)).collect());
            if p.degree_y() == 0 {
                p = &p + &BivariatePolynomial::y();
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn resultant_is_multiplicative(p in small_biv(), q in small_biv(), r in small_biv()) {
            let lhs = resultant_y(&p, &(&q * &r)).unwrap();
            let rhs = &resultant_y(&p, &q).unwrap() * &resultant_y(&p, &r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
