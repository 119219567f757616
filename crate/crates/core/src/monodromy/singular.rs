use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{complex_roots, discriminant_y, BivariatePolynomial, ComplexInterval};

use super::MonodromyError;

/// Roots of `lc_y(P) * disc_y(P)`, pairwise disjoint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularSet {
    pub points: Vec<ComplexInterval>,
    /// Square-free polynomial whose roots are the points, lowest degree first.
    pub polynomial: Vec<Complex64>,
}

impl SingularSet {
    pub fn centers(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.center).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn from_points(points: Vec<ComplexInterval>) -> Self {
        SingularSet { points, polynomial: Vec::new() }
    }
}

/// Certified enclosures of the points where `P(x, .)` drops degree or has a repeated root.
pub fn singular_points(p: &BivariatePolynomial, tol: f64) -> Result<SingularSet, MonodromyError> {
    if p.degree_y() < 1 {
        return Err(MonodromyError::DegreeTooLow(p.degree_y()));
    }
    let lc = p.leading_coeff_y();
    let s = if p.degree_y() >= 2 {
        let d = discriminant_y(p)?;
        if d.is_zero() {
            return Err(MonodromyError::SquareFreeRequired);
        }
        &lc * &d
    } else {
        lc
    };
    let sq = s.squarefree_part();
    if sq.is_constant() {
        return Ok(SingularSet { points: Vec::new(), polynomial: sq.to_complex_coeffs() });
    }
    let mut points = complex_roots(&sq, tol)?;
    if sq.is_real() {
        // snap real roots onto the axis so that angular ordering is exact
        for iv in points.iter_mut() {
            if iv.center.im.abs() <= iv.radius {
                iv.center.im = 0.0;
                iv.radius *= 2.0;
            }
        }
    }
    Ok(SingularSet { points, polynomial: sq.to_complex_coeffs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_bivariate;

    #[test]
    fn examples() {
        let s = singular_points(&parse_bivariate("y^2 - x").unwrap(), 1e-12).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.points[0].contains(Complex64::new(0.0, 0.0)));
        let s = singular_points(&parse_bivariate("y^2 - (x^2 - 1)").unwrap(), 1e-12).unwrap();
        assert_eq!(s.len(), 2);
        let s = singular_points(&parse_bivariate("y^5 + y - x").unwrap(), 1e-12).unwrap();
        assert_eq!(s.len(), 4);
        assert!(matches!(
            singular_points(&parse_bivariate("(y - x)^2").unwrap(), 1e-12),
            Err(MonodromyError::SquareFreeRequired)
        ));
    }
}
