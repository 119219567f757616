//! Rational functions in one variable over Q(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::UnivariatePolynomial;
use super::rational::GaussianRational;

/// Reduced fraction `numerator / denominator` with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    numerator: UnivariatePolynomial,
    denominator: UnivariatePolynomial,
}

impl RationalFunction {
    /// Normalize `num / den`. Panics if `den` is zero.
    pub fn new(num: UnivariatePolynomial, den: UnivariatePolynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { numerator: n, denominator: d }
    }

    pub fn zero() -> Self {
        RationalFunction { numerator: UnivariatePolynomial::zero(), denominator: UnivariatePolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UnivariatePolynomial::one())
    }

    pub fn x() -> Self {
        Self::from_poly(UnivariatePolynomial::x())
    }

    pub fn from_poly(p: UnivariatePolynomial) -> Self {
        RationalFunction { numerator: p, denominator: UnivariatePolynomial::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(UnivariatePolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn numerator(&self) -> &UnivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &UnivariatePolynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.numerator.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_constant() {
            Some(self.numerator.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.denominator.clone(), self.numerator.clone()))
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("zero to a negative power").pow(-e);
        }
        Self::new(self.numerator.pow(e as u32), self.denominator.pow(e as u32))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.numerator.scale(c), self.denominator.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &self.numerator;
        let d = &self.denominator;
        Self::new(&(&n.derivative() * d) - &(n * &d.derivative()), d * d)
    }

    pub fn eval(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.numerator.eval(x) / &d)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.numerator.eval_complex(x) / self.denominator.eval_complex(x)
    }

    /// Order of the zero at infinity: `deg den - deg num` (zero function gives `i64::MAX`).
    pub fn order_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.denominator.deg() as i64 - self.numerator.deg() as i64
    }

    /// Polynomial part and proper remainder: `self = q + r/den`.
    pub fn polynomial_part(&self) -> (UnivariatePolynomial, UnivariatePolynomial) {
        self.numerator.div_rem(&self.denominator)
    }

    /// Substitute a rational function for `x`.
    pub fn compose(&self, inner: &Self) -> Self {
        let horner = |p: &UnivariatePolynomial| {
            let mut acc = Self::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * inner) + &Self::constant(c.clone());
            }
            acc
        };
        &horner(&self.numerator) / &horner(&self.denominator)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.denominator.is_one() {
            return self.numerator.display_with(var);
        }
        let n = self.numerator.display_with(var);
        let d = self.denominator.display_with(var);
        let wrap = |s: String, p: &UnivariatePolynomial| {
            let single_term = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            if single_term && !s.starts_with('-') {
                s
            } else {
                format!("({s})")
            }
        };
        format!("{}/{}", wrap(n, &self.numerator), wrap(d, &self.denominator))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl From<UnivariatePolynomial> for RationalFunction {
    fn from(p: UnivariatePolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denominator == rhs.denominator {
            return RationalFunction::new(&self.numerator + &rhs.numerator, self.denominator.clone());
        }
        RationalFunction::new(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.numerator * &rhs.numerator, &self.denominator * &rhs.denominator)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let num = UnivariatePolynomial::from_ints(&[-2, 2]);
        let den = UnivariatePolynomial::from_ints(&[-2, 0, 2]);
        let r = RationalFunction::new(num, den);
        assert_eq!(r.numerator(), &UnivariatePolynomial::from_ints(&[1]));
        assert_eq!(r.denominator(), &UnivariatePolynomial::from_ints(&[1, 1]));
        assert_eq!(r.to_string(), "1/(x + 1)");
    }

    #[test]
    fn quotient_rule() {
        let r = RationalFunction::x().inv().unwrap();
        assert_eq!(r.derivative(), -RationalFunction::x().pow(-2));
    }
}
