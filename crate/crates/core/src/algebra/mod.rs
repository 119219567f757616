//! Exact arithmetic over Q(i), polynomials, rational functions, the expression parser,
//! resultants and certified complex roots.

pub mod bivariate;
pub mod linear;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod resultant;
pub mod roots;

use thiserror::Error;

pub use bivariate::BivariatePolynomial;
pub use parse::{parse_bivariate, parse_expression, parse_polynomial, parse_rational_function, ParseError, Parsed};
pub use poly::UnivariatePolynomial;
pub use ratfun::RationalFunction;
pub use rational::{GaussianRational, Rational};
pub use resultant::{discriminant, discriminant_y, resultant, resultant_y};
pub use roots::{complex_roots, complex_roots_grouped, ComplexInterval};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum AlgebraError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} is below the required {required}")]
    DegreeTooLow { degree: usize, required: usize },
    #[error("root iteration did not certify all roots ({} best enclosures kept)", best.len())]
    IterationLimitExceeded { best: Vec<ComplexInterval> },
}

/// Square-free factorization `[(factor, multiplicity)]`; constants give an empty list.
pub fn squarefree_factorization(p: &UnivariatePolynomial) -> Result<Vec<(UnivariatePolynomial, usize)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(p.squarefree_factorization())
}
