//! Exact rational and Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale by bit lengths
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = nb - db;
        if shift > 1023 {
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else if shift < -1074 {
            0.0
        } else {
            let n = r.numer().to_f64().unwrap_or(f64::MAX);
            let d = r.denom().to_f64().unwrap_or(f64::MAX);
            n / d
        }
    })
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rat_sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Best rational approximation of `x` by continued fractions, with denominator at most
/// `max_den`, accepted only when within `tol` (absolute).
pub fn rationalize(x: f64, tol: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    if v > 1e15 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 as u128 > max_den as u128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let approx = p1 as f64 / q1 as f64;
        if (approx - x.abs()).abs() <= tol {
            return Some(Rational::new(BigInt::from(sign * p1), BigInt::from(q1)));
        }
        let frac = v - a;
        if frac < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 != 0 && ((p1 as f64 / q1 as f64) - x.abs()).abs() <= tol {
        return Some(Rational::new(BigInt::from(sign * p1), BigInt::from(q1)));
    }
    None
}

/// Exact complex number with rational real and imaginary parts: an element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("zero to a negative power").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Exact square root in Q(i), when one exists. The root with positive real part (or
    /// positive imaginary part for negative reals) is returned.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let modulus = rat_sqrt_exact(&self.norm_sqr())?;
        let half = rat(1, 2);
        let p2 = (&modulus + &self.re) * &half;
        let q2 = (&modulus - &self.re) * &half;
        let p = rat_sqrt_exact(&p2)?;
        let mut q = rat_sqrt_exact(&q2)?;
        // 2pq = im fixes the relative sign
        if self.im.is_negative() {
            q = -q;
        }
        let root = GaussianRational::new(p, q);
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }

    /// Recognize a floating complex value as a Gaussian rational with bounded denominators.
    pub fn rationalize(z: Complex64, tol: f64, max_den: u64) -> Option<Self> {
        Some(GaussianRational::new(rationalize(z.re, tol, max_den)?, rationalize(z.im, tol, max_den)?))
    }

    /// Common denominator of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Real values print as `p/q`; non-real values print parenthesized as `(a+b*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        write!(f, "(")?;
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
        } else if self.im.is_negative() {
            write!(f, "-")?;
        }
        let a = self.im.abs();
        if !a.is_one() {
            fmt_rational(&a, f)?;
            write!(f, "*")?;
        }
        write!(f, "i)")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'b GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'b GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational::from_rational(&a.re * &b.re);
    }
    GaussianRational { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re }
});
forward_binop!(Div, div, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussianRational::from_rational(&a.re / &b.re);
    }
    a * &b.inv().expect("division by zero Gaussian rational")
});

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Sign of a big integer as -1, 0, 1.
pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn display_forms() {
        assert_eq!(gr(3, 2, 0, 1).to_string(), "3/2");
        assert_eq!(gr(0, 1, 1, 1).to_string(), "(i)");
        assert_eq!(gr(1, 1, -2, 3).to_string(), "(1-2/3*i)");
        assert_eq!(gr(0, 1, -1, 1).to_string(), "(-i)");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(gr(-4, 1, 0, 1).sqrt_exact(), Some(gr(0, 1, 2, 1)));
        // (1+i)^2 = 2i
        assert_eq!(gr(0, 1, 2, 1).sqrt_exact(), Some(gr(1, 1, 1, 1)));
        assert_eq!(gr(9, 4, 0, 1).sqrt_exact(), Some(gr(3, 2, 0, 1)));
        assert_eq!(gr(2, 1, 0, 1).sqrt_exact(), None);
    }

    #[test]
    fn continued_fraction_recovery() {
        assert_eq!(rationalize(0.333_333_333_333_333_3, 1e-12, 1000), Some(rat(1, 3)));
        assert_eq!(rationalize(-2.5, 1e-12, 10), Some(rat(-5, 2)));
        assert_eq!(rationalize(std::f64::consts::PI, 1e-14, 1000), None);
    }

    fn small_gr() -> impl Strategy<Value = GaussianRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| gr(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_identities(a in small_gr(), b in small_gr()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn rational_identities(a in (-1000i64..1000, 1i64..100), b in (-1000i64..1000, 1i64..100)) {
            let (a, b) = (rat(a.0, a.1), rat(b.0, b.1));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
        }
    }
}
