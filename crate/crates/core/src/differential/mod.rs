//! Generalized Riccati equations, rational witnesses for second-order equations and
//! integration of rational functions in Liouville form.
//!
//! For `y' = u y` the derivatives are `y^(k) = D_k(u) y`, so the linear equation
//! `y^(n) + a_1 y^(n-1) + ... + a_n y = 0` has a solution with logarithmic derivative `u`
//! exactly when `D_n(u) + a_1 D_(n-1)(u) + ... + a_n = 0`.

pub mod integrate;
pub mod jet;
pub mod witness;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{complex_roots, GaussianRational, ParseError, RationalFunction, UnivariatePolynomial};

pub use integrate::{hermite_reduce, integrate_rational, AlgebraicLog, LiouvilleForm, LogTerm};
pub use jet::{
    d_sequence, parse_differential_polynomial, parse_jet_polynomial, DifferentialPolynomial, JetMonomial, JetPolynomial,
};
pub use witness::{
    rational_witness_search, rational_witness_search_with, WitnessError, WitnessOptions, REDUCTION_OF_ORDER,
};

/// Largest order accepted by [`d_sequence`].
pub const MAX_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DifferentialError {
    #[error("order {order} exceeds the limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("a linear equation needs order at least 1")]
    ZeroOrder,
    #[error("polynomial is not homogeneous: monomial degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<u32> },
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `y^(n) + a_1 y^(n-1) + ... + a_n y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearODE {
    coefficients: Vec<RationalFunction>,
}

impl LinearODE {
    /// Coefficients `a_1, ..., a_n`.
    pub fn new(coefficients: Vec<RationalFunction>) -> Result<Self, DifferentialError> {
        if coefficients.is_empty() {
            return Err(DifferentialError::ZeroOrder);
        }
        Ok(LinearODE { coefficients })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[RationalFunction] {
        &self.coefficients
    }

    /// `a_k`, with `a_0 = 1`.
    pub fn coefficient(&self, k: usize) -> RationalFunction {
        if k == 0 {
            RationalFunction::one()
        } else {
            self.coefficients[k - 1].clone()
        }
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let name = |k: usize| jet::jet_name(k).replacen('u', "y", 1);
        write!(f, "{}", name(n))?;
        for k in 1..=n {
            let a = &self.coefficients[k - 1];
            if a.is_zero() {
                continue;
            }
            let var = name(n - k);
            match a.as_constant() {
                Some(c) if c.is_one() => write!(f, " + {var}")?,
                Some(c) if (-c.clone()).is_one() => write!(f, " - {var}")?,
                _ => write!(f, " + ({a})*{var}")?,
            }
        }
        write!(f, " = 0")
    }
}

/// `D_n + a_1 D_(n-1) + ... + a_n D_0`, a differential polynomial of order `n - 1`.
pub fn generalized_riccati(ode: &LinearODE) -> Result<DifferentialPolynomial, DifferentialError> {
    let n = ode.order();
    let d = d_sequence(n)?;
    let mut out = DifferentialPolynomial::zero();
    for k in 0..=n {
        out = &out + &d[n - k].scale(&ode.coefficient(k));
    }
    Ok(out)
}

/// The same sum with symbolic coefficients `a_1, ..., a_n`.
pub fn generalized_riccati_symbolic(n: usize) -> Result<DifferentialPolynomial, DifferentialError> {
    if n == 0 {
        return Err(DifferentialError::ZeroOrder);
    }
    let d = d_sequence(n)?;
    let mut out = d[n].clone();
    for k in 1..=n {
        out = &out + &(&DifferentialPolynomial::param(k) * &d[n - k]);
    }
    Ok(out)
}

/// `Q(D_0, ..., D_n)` for a homogeneous `Q(x_0, ..., x_n)`; dividing `Q(y, y', ...)` by
/// `y^m` gives this polynomial in `u = y'/y`.
pub fn generalized_riccati_homogeneous(q: &JetPolynomial) -> Result<DifferentialPolynomial, DifferentialError> {
    let degrees = q.degrees();
    if degrees.len() > 1 {
        return Err(DifferentialError::NotHomogeneous { degrees });
    }
    let d = d_sequence(q.max_index())?;
    let mut out = DifferentialPolynomial::zero();
    for (e, c) in q.terms() {
        let mut t = DifferentialPolynomial::constant(c.clone());
        for (k, &p) in e.iter().enumerate() {
            t = &t * &d[k].pow(p);
        }
        out = &out + &t;
    }
    Ok(out)
}

/// Outcome of the weighted-degree test with weight `sum k p_k` for `x_0^p_0 ... x_n^p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiCheck {
    pub satisfied: bool,
    pub weight: u32,
    pub top_sum: RationalFunction,
}

/// Maximal weight over the monomials of `q` and the sum of their coefficients; the condition
/// holds when that sum is nonzero.
pub fn xi_weighted_check(q: &JetPolynomial) -> XiCheck {
    let weight_of = |e: &Vec<u32>| e.iter().enumerate().map(|(k, &p)| k as u32 * p).sum::<u32>();
    let weight = q.terms().map(|(e, _)| weight_of(e)).max().unwrap_or(0);
    let mut top_sum = RationalFunction::zero();
    for (e, c) in q.terms() {
        if weight_of(e) == weight {
            top_sum = &top_sum + c;
        }
    }
    XiCheck { satisfied: !top_sum.is_zero(), weight, top_sum }
}

/// Whether `u` is the logarithmic derivative of a solution: the generalized Riccati
/// expression vanishes identically. Evaluated through `g_0 = 1`, `g_(k+1) = g_k' + u g_k`.
pub fn verify_exp_integral_witness(ode: &LinearODE, u: &RationalFunction) -> bool {
    let n = ode.order();
    let mut g = RationalFunction::one();
    let mut values = vec![g.clone()];
    for _ in 0..n {
        g = &g.derivative() + &(u * &g);
        values.push(g.clone());
    }
    let mut sum = RationalFunction::zero();
    for k in 0..=n {
        sum = &sum + &(&ode.coefficient(k) * &values[n - k]);
    }
    sum.is_zero()
}

/// Roots of a square-free `f` that lie in Q(i), found by rounding certified enclosures and
/// checked exactly, together with the cofactor that carries the remaining roots.
pub(crate) fn gaussian_roots(f: &UnivariatePolynomial) -> (Vec<GaussianRational>, UnivariatePolynomial) {
    let mut rest = f.monic();
    let mut found = Vec::new();
    if f.deg() == 0 {
        return (found, rest);
    }
    let Ok(roots) = complex_roots(f, 1e-14) else {
        return (found, rest);
    };
    for z in roots {
        let c = z.center;
        let Some(g) = GaussianRational::rationalize(c, 1e-8 * (1.0 + c.norm()), 1_000_000) else {
            continue;
        };
        let lin = UnivariatePolynomial::linear(GaussianRational::one(), -g.clone());
        if rest.eval(&g).is_zero() {
            rest = rest.exact_div(&lin);
            found.push(g);
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_rational_function, GaussianRational};

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    fn ode(cs: &[&str]) -> LinearODE {
        LinearODE::new(cs.iter().map(|s| rf(s)).collect()).unwrap()
    }

    #[test]
    fn riccati_examples() {
        let second = generalized_riccati_symbolic(2).unwrap();
        assert_eq!(second.to_string().replace(' ', ""), "u'+a_1u+a_2+u^2");
        assert_eq!(second, parse_differential_polynomial("u'+a_1u+a_2+u^2").unwrap());
        assert_eq!(generalized_riccati_symbolic(1).unwrap().to_string(), "a_1 + u");
        assert_eq!(generalized_riccati(&ode(&["0", "0", "0"])).unwrap().to_string(), "u'' + 3uu' + u^3");
        assert_eq!(generalized_riccati(&ode(&["1/x", "-1/x^2"])).unwrap().to_string(), "u' + u^2 + (1/x)u - 1/x^2");
        assert!(matches!(LinearODE::new(vec![]), Err(DifferentialError::ZeroOrder)));
        assert!(generalized_riccati(&LinearODE::new(vec![RationalFunction::zero(); 13]).unwrap()).is_err());
    }

    #[test]
    fn homogeneous_examples() {
        let q = parse_jet_polynomial("x0*x2 - x1^2").unwrap();
        assert_eq!(generalized_riccati_homogeneous(&q).unwrap().to_string(), "u'");
        let q = parse_jet_polynomial("x1").unwrap();
        assert_eq!(generalized_riccati_homogeneous(&q).unwrap().to_string(), "u");
        let q = parse_jet_polynomial("x2 + x1^2").unwrap();
        assert_eq!(generalized_riccati_homogeneous(&q), Err(DifferentialError::NotHomogeneous { degrees: vec![1, 2] }));
        let e = ode(&["x", "1/(x-1)", "3"]);
        let q = parse_jet_polynomial("x3 + x*x2 + 1/(x-1)*x1 + 3*x0").unwrap();
        assert_eq!(generalized_riccati_homogeneous(&q).unwrap(), generalized_riccati(&e).unwrap());
    }

    #[test]
    fn weighted_degree() {
        let c = xi_weighted_check(&parse_jet_polynomial("x2*x0").unwrap());
        assert_eq!((c.satisfied, c.weight), (true, 2));
        let c = xi_weighted_check(&parse_jet_polynomial("x2 - x1^2").unwrap());
        assert_eq!((c.satisfied, c.weight), (false, 2));
        assert!(c.top_sum.is_zero());
        let c = xi_weighted_check(&parse_jet_polynomial("(x+1)*x3^2 + x1*x2 + x0^2").unwrap());
        assert_eq!((c.satisfied, c.weight), (true, 6));
        assert_eq!(c.top_sum, rf("x+1"));
    }

    #[test]
    fn witness_examples() {
        assert!(verify_exp_integral_witness(&ode(&["0", "-1"]), &rf("1")));
        assert!(verify_exp_integral_witness(&ode(&["0", "1"]), &RationalFunction::constant(GaussianRational::i())));
        assert!(!verify_exp_integral_witness(&ode(&["0", "-x"]), &rf("x")));
        assert!(verify_exp_integral_witness(&ode(&["1/x", "-1/x^2"]), &rf("1/x")));
    }

    #[test]
    fn value_recursion_matches_polynomial() {
        let e = ode(&["x", "1/(x-1)", "3", "-x^2"]);
        let p = generalized_riccati(&e).unwrap();
        for u in ["1/x", "x^2 - 1", "(x+2)/(x^2+1)", "0"] {
            let u = rf(u);
            let zero = p.substitute(&u).unwrap().is_zero();
            assert_eq!(zero, verify_exp_integral_witness(&e, &u));
        }
    }

    #[test]
    fn display_ode() {
        assert_eq!(ode(&["1/x", "-1"]).to_string(), "y'' + (1/x)*y' - y = 0");
        assert_eq!(ode(&["0", "0", "0", "1"]).to_string(), "y(4) + y = 0");
    }
}
