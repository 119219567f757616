//! Dense univariate polynomials over Q(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::rational::{GaussianRational, Rational};

/// Univariate polynomial, coefficients stored lowest degree first. The leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<GaussianRational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: GaussianRational, deg: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `a*x + b`.
    pub fn linear(a: GaussianRational, b: GaussianRational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex()).collect()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &GaussianRational::from_int(k as i64)).collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut out = vec![GaussianRational::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / &GaussianRational::from_int(k as i64 + 1));
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Functional composition `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Polynomial with `x` replaced by `x + shift`.
    pub fn shift(&self, shift: &GaussianRational) -> Self {
        self.compose(&Self::linear(GaussianRational::one(), shift.clone()))
    }

    /// Euclidean division over the field Q(i).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.deg() < divisor.deg() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let dd = divisor.deg();
        let lc_inv = divisor.leading_coeff().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussianRational::zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let t = &c * d;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s2;
            let t2 = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Solve `s*a + t*b = c` with `deg s < deg b`, assuming `gcd(a, b)` divides `c`.
    pub fn diophantine(a: &Self, b: &Self, c: &Self) -> Option<(Self, Self)> {
        let (g, s, t) = a.extended_gcd(b);
        let (q, r) = c.div_rem(&g);
        if !r.is_zero() {
            return None;
        }
        let mut s = &s * &q;
        let mut t = &t * &q;
        if !b.is_constant() && s.deg() >= b.deg() {
            let (qq, rr) = s.div_rem(b);
            s = rr;
            t = &t + &(&qq * a);
        }
        Some((s, t))
    }

    /// Inverse of `self` modulo `modulus`, when coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.extended_gcd(modulus);
        if g.is_one() {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    /// Square-free decomposition (Yun). Returns `(factor, multiplicity)` pairs with monic,
    /// pairwise coprime, square-free, nonconstant factors; the product of `factor^mult`
    /// equals `self` up to the leading coefficient. Constants give an empty list.
    pub fn squarefree_factorization(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a);
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible-over-C factors (the radical).
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return Self::one();
        }
        let f = self.monic();
        f.exact_div(&f.gcd(&f.derivative()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_complex().norm()).fold(0.0, f64::max)
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominators_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }

    pub fn map_rational(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| GaussianRational::new(f(&c.re), f(&c.im))).collect())
    }

    /// Render in the expression grammar using the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            push_term(&mut s, c, &mono);
        }
        s
    }
}

/// Append `c*mono` to an expression being built, handling signs and unit coefficients.
pub(crate) fn push_term(s: &mut String, c: &GaussianRational, mono: &str) {
    use num_traits::Signed;
    let first = s.is_empty();
    if c.is_real() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        if first {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let coeff_str = GaussianRational::from_rational(a.clone()).to_string();
        if mono.is_empty() {
            s.push_str(&coeff_str);
        } else if a.is_one() {
            s.push_str(mono);
        } else {
            s.push_str(&format!("{coeff_str}*{mono}"));
        }
    } else {
        if !first {
            s.push_str(" + ");
        }
        if mono.is_empty() {
            s.push_str(&c.to_string());
        } else {
            s.push_str(&format!("{c}*{mono}"));
        }
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UnivariatePolynomial::new(out)
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        -&self
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                out[i + j] += &t;
            }
        }
        UnivariatePolynomial::new(out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for UnivariatePolynomial {
            type Output = UnivariatePolynomial;
            fn $m(self, rhs: UnivariatePolynomial) -> UnivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a UnivariatePolynomial> for UnivariatePolynomial {
            type Output = UnivariatePolynomial;
            fn $m(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_ints(c)
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let sf = f.squarefree_factorization();
        assert_eq!(sf, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(p(&[1, 0, 1]).squarefree_factorization(), vec![(p(&[1, 0, 1]), 1)]);
        assert!(p(&[5]).squarefree_factorization().is_empty());
    }

    #[test]
    fn squarefree_product_reconstructs() {
        let f = &(&p(&[1, 1]).pow(3) * &p(&[0, 1]).pow(2)) * &p(&[3, 0, 1]);
        let f = f.scale(&GaussianRational::from_int(7));
        let mut prod = UnivariatePolynomial::one();
        for (g, m) in f.squarefree_factorization() {
            assert!(g.is_squarefree());
            prod = &prod * &g.pow(m as u32);
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[1, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn composition() {
        let t2 = p(&[-1, 0, 2]);
        let t3 = p(&[0, -3, 0, 4]);
        let t6 = p(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(t2.compose(&t3), t6);
        assert_eq!(t3.compose(&t2), t6);
    }

    #[test]
    fn printing() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[0, -3, 0, 4]).display_with("y"), "4*y^3 - 3*y");
        assert_eq!(UnivariatePolynomial::zero().to_string(), "0");
    }
}
