//! Substitution of a truncated series back into `P`.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::algebra::{BivariatePolynomial, Rational};

use super::{PuiseuxPoint, PuiseuxSeries};

/// Laurent polynomial in `s` with magnitude bounds: `(offset, coeffs, mags)`.
#[derive(Clone, Debug)]
struct Laurent {
    offset: i64,
    c: Vec<Complex64>,
    m: Vec<f64>,
}

impl Laurent {
    fn constant(z: Complex64) -> Self {
        Laurent { offset: 0, c: vec![z], m: vec![z.norm()] }
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let n = self.c.len() + o.c.len() - 1;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        let mut m = vec![0.0; n];
        for (i, (a, ma)) in self.c.iter().zip(&self.m).enumerate() {
            for (k, (b, mb)) in o.c.iter().zip(&o.m).enumerate() {
                c[i + k] += a * b;
                m[i + k] += ma * mb;
            }
        }
        Laurent { offset: self.offset + o.offset, c, m }
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let lo = self.offset.min(o.offset);
        let hi = (self.offset + self.c.len() as i64).max(o.offset + o.c.len() as i64);
        let n = (hi - lo) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        let mut m = vec![0.0; n];
        for s in [self, o] {
            for (k, (a, ma)) in s.c.iter().zip(&s.m).enumerate() {
                let idx = (s.offset - lo) as usize + k;
                c[idx] += a;
                m[idx] += ma;
            }
        }
        Laurent { offset: lo, c, m }
    }
}

/// Largest relative coefficient of `P(x, s(x))` over exponents `<= order`; the relative size
/// of a coefficient is its modulus over the sum of the moduli of its contributions.
pub fn series_residual(p: &BivariatePolynomial, point: &PuiseuxPoint, series: &PuiseuxSeries) -> f64 {
    let pr = series.ramification as i64;
    // x - x0 = s^p at a finite point; x = s^(-p) at infinity, cleared by s^(p deg_x)
    let (x0, columns): (Complex64, Vec<Vec<Complex64>>) = match point {
        PuiseuxPoint::Exact(a) => (a.to_complex(), p.y_coeffs().iter().map(|c| c.to_complex_coeffs()).collect()),
        PuiseuxPoint::Numeric(z) => (*z, p.y_coeffs().iter().map(|c| c.to_complex_coeffs()).collect()),
        PuiseuxPoint::Infinity => {
            let d = p.degree_x();
            let cols = p
                .y_coeffs()
                .iter()
                .map(|c| {
                    let mut v = c.to_complex_coeffs();
                    v.resize(d + 1, Complex64::new(0.0, 0.0));
                    v.reverse();
                    v
                })
                .collect();
            (Complex64::new(0.0, 0.0), cols)
        }
    };
    let mut xs =
        Laurent { offset: 0, c: vec![Complex64::new(0.0, 0.0); pr as usize + 1], m: vec![0.0; pr as usize + 1] };
    xs.c[0] = x0;
    xs.m[0] = x0.norm();
    xs.c[pr as usize] = Complex64::new(1.0, 0.0);
    xs.m[pr as usize] = 1.0;
    let sign = if series.at_infinity { -1 } else { 1 };
    let lead = (&series.leading * Rational::from_integer(pr.into())).to_integer().to_i64().unwrap() * sign;
    let y = Laurent {
        offset: lead,
        c: series.coefficients.clone(),
        m: series.coefficients.iter().map(|c| c.norm()).collect(),
    };
    let mut total = Laurent::constant(Complex64::new(0.0, 0.0));
    let mut ypow = Laurent::constant(Complex64::new(1.0, 0.0));
    for col in &columns {
        let mut a = Laurent::constant(Complex64::new(0.0, 0.0));
        for &coef in col.iter().rev() {
            a = a.mul(&xs).add(&Laurent::constant(coef));
        }
        total = total.add(&a.mul(&ypow));
        ypow = ypow.mul(&y);
    }
    let limit = (&series.order * Rational::from_integer(pr.into())).floor().to_integer().to_i64().unwrap();
    let mut worst: f64 = 0.0;
    for (k, (c, m)) in total.c.iter().zip(&total.m).enumerate() {
        let e = total.offset + k as i64;
        if e > limit {
            break;
        }
        if *m > 0.0 {
            worst = worst.max(c.norm() / m);
        }
    }
    worst
}
