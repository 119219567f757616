//! Expression parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | base ('^' exponent)?
//! exponent := integer | '-' integer | '(' expr ')'
//! base   := number | name | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals and are read exactly. The name `i` denotes the imaginary
//! unit unless it is declared as a variable. With two declared variables the first is `x`
//! and the second is `y`; with one variable the result is a rational function.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::bivariate::BivariatePolynomial;
use super::poly::UnivariatePolynomial;
use super::ratfun::RationalFunction;
use super::rational::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("undeclared variable '{name}' at position {position}")]
    UndeclaredVariable { name: String, position: usize },
    #[error("non-polynomial exponent at position {position}")]
    NonPolynomialExponent { position: usize },
    #[error("division by an expression in y at position {position}")]
    NonPolynomialDivision { position: usize },
    #[error("division by zero at position {position}")]
    DivisionByZero { position: usize },
    #[error("expected one or two variables, got {0}")]
    BadVariableList(usize),
}

impl ParseError {
    /// Byte offset of the offending token, when there is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::SyntaxError { position, .. }
            | ParseError::UndeclaredVariable { position, .. }
            | ParseError::NonPolynomialExponent { position }
            | ParseError::NonPolynomialDivision { position }
            | ParseError::DivisionByZero { position } => Some(*position),
            ParseError::BadVariableList(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Bivariate(BivariatePolynomial),
    Rational(RationalFunction),
}

impl Parsed {
    pub fn into_bivariate(self) -> Option<BivariatePolynomial> {
        match self {
            Parsed::Bivariate(p) => Some(p),
            Parsed::Rational(_) => None,
        }
    }

    pub fn into_rational(self) -> Option<RationalFunction> {
        match self {
            Parsed::Rational(r) => Some(r),
            Parsed::Bivariate(_) => None,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Bivariate(p) => write!(f, "{p}"),
            Parsed::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(Rational),
    Name(String),
    Op(char),
    End,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            let mut int = BigInt::zero();
            let mut den = BigInt::one();
            let mut seen_dot = false;
            let mut digits = 0;
            while i < chars.len() && (chars[i].is_ascii_digit() || (chars[i] == '.' && !seen_dot)) {
                if chars[i] == '.' {
                    seen_dot = true;
                } else {
                    int = int * 10 + chars[i].to_digit(10).unwrap();
                    digits += 1;
                    if seen_dot {
                        den *= 10;
                    }
                }
                i += 1;
            }
            if digits == 0 {
                return Err(ParseError::SyntaxError { position: start, expected: "number".into() });
            }
            out.push((Tok::Num(Rational::new(int, den)), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError { position: i, expected: "operator, number or name".into() });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn position(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Op(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    pub(crate) fn error(&self, expected: &str) -> ParseError {
        ParseError::SyntaxError { position: self.position(), expected: expected.to_string() }
    }

    /// Integer exponent after '^': `k`, `-k` or a parenthesized constant expression.
    pub(crate) fn integer(&mut self) -> Result<i64, ParseError> {
        let pos = self.position();
        let neg = self.eat('-');
        match self.bump() {
            Tok::Num(r) if r.is_integer() => {
                let v = r.to_integer().to_i64().ok_or(ParseError::NonPolynomialExponent { position: pos })?;
                Ok(if neg { -v } else { v })
            }
            Tok::Num(_) => Err(ParseError::NonPolynomialExponent { position: pos }),
            _ => Err(ParseError::SyntaxError { position: pos, expected: "integer exponent".into() }),
        }
    }
}

/// Intermediate value: `num(x, y) / den(x)`.
#[derive(Clone)]
struct Value {
    num: BivariatePolynomial,
    den: UnivariatePolynomial,
}

impl Value {
    fn constant(c: GaussianRational) -> Self {
        Value { num: BivariatePolynomial::constant(c), den: UnivariatePolynomial::one() }
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        if self.num.degree_y() == 0 && self.num.degree_x() == 0 && self.den.is_constant() {
            Some(&self.num.coeff(0, 0) / &self.den.coeff(0))
        } else {
            None
        }
    }

    fn add(&self, o: &Value, sign: i64) -> Value {
        let rhs = o.num.mul_x_poly(&self.den).scale(&GaussianRational::from_int(sign));
        Value { num: &self.num.mul_x_poly(&o.den) + &rhs, den: &self.den * &o.den }
    }

    fn mul(&self, o: &Value) -> Value {
        Value { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &Value, position: usize) -> Result<Value, ParseError> {
        if o.num.is_zero() {
            return Err(ParseError::DivisionByZero { position });
        }
        if o.num.degree_y() > 0 {
            return Err(ParseError::NonPolynomialDivision { position });
        }
        let d = o.num.y_coeff(0);
        let mut v = Value { num: self.num.mul_x_poly(&o.den), den: &self.den * &d };
        v.reduce();
        Ok(v)
    }

    fn reduce(&mut self) {
        if self.den.is_constant() {
            return;
        }
        let g = self.num.content_y().gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num = BivariatePolynomial::new(self.num.y_coeffs().iter().map(|p| p.exact_div(&g)).collect());
            self.den = self.den.exact_div(&g);
        }
    }

    fn pow(&self, e: i64, position: usize) -> Result<Value, ParseError> {
        if e >= 0 {
            return Ok(Value { num: self.num.pow(e as u32), den: self.den.pow(e as u32) });
        }
        if self.num.degree_y() > 0 {
            return Err(ParseError::NonPolynomialExponent { position });
        }
        Value::constant(GaussianRational::one()).div(self, position)?.pow(-e, position)
    }
}

struct Parser<'a> {
    cur: Cursor,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat('+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.cur.eat('-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.cur.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.cur.peek() == &Tok::Op('/') {
                self.cur.bump();
                let pos = self.cur.position();
                acc = acc.div(&self.factor()?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        if self.cur.eat('-') {
            let v = self.factor()?;
            return Ok(Value { num: -&v.num, den: v.den });
        }
        if self.cur.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.cur.eat('^') {
            let pos = self.cur.position();
            let e = if self.cur.eat('(') {
                let v = self.expr()?;
                self.cur.expect(')')?;
                let c = v.as_constant().ok_or(ParseError::NonPolynomialExponent { position: pos })?;
                if !c.is_real() || !c.re.is_integer() {
                    return Err(ParseError::NonPolynomialExponent { position: pos });
                }
                c.re.to_integer().to_i64().ok_or(ParseError::NonPolynomialExponent { position: pos })?
            } else {
                self.cur.integer()?
            };
            if e.abs() > 10_000 {
                return Err(ParseError::NonPolynomialExponent { position: pos });
            }
            return base.pow(e, pos);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Value, ParseError> {
        let pos = self.cur.position();
        match self.cur.bump() {
            Tok::Num(r) => Ok(Value::constant(GaussianRational::from_rational(r))),
            Tok::Name(name) => {
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    let num = if k == 0 { BivariatePolynomial::x() } else { BivariatePolynomial::y() };
                    Ok(Value { num, den: UnivariatePolynomial::one() })
                } else if name == "i" {
                    Ok(Value::constant(GaussianRational::i()))
                } else {
                    Err(ParseError::UndeclaredVariable { name, position: pos })
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                self.cur.expect(')')?;
                Ok(v)
            }
            _ => Err(ParseError::SyntaxError { position: pos, expected: "number, name or '('".into() }),
        }
    }
}

/// Parse `text` over the declared variables. One variable gives a rational function; two
/// give a bivariate polynomial (first variable `x`, second `y`), with any denominator in
/// `x` cleared and the content in `y` removed.
pub fn parse_expression(text: &str, variables: &[&str]) -> Result<Parsed, ParseError> {
    if variables.is_empty() || variables.len() > 2 {
        return Err(ParseError::BadVariableList(variables.len()));
    }
    let mut p = Parser { cur: Cursor::new(text)?, vars: variables };
    let v = p.expr()?;
    if p.cur.peek() != &Tok::End {
        return Err(p.cur.error("operator or end of input"));
    }
    if variables.len() == 1 {
        let num = v.num.y_coeff(0);
        return Ok(Parsed::Rational(RationalFunction::new(num, v.den)));
    }
    let mut num = if v.den.is_constant() { v.num.scale(&v.den.coeff(0).inv().unwrap()) } else { v.num };
    if num.degree_y() > 0 {
        num = num.primitive_part_y();
    }
    Ok(Parsed::Bivariate(num))
}

/// Parse a bivariate polynomial in `x`, `y`.
pub fn parse_bivariate(text: &str) -> Result<BivariatePolynomial, ParseError> {
    Ok(parse_expression(text, &["x", "y"])?.into_bivariate().unwrap())
}

/// Parse a rational function in `x`.
pub fn parse_rational_function(text: &str) -> Result<RationalFunction, ParseError> {
    Ok(parse_expression(text, &["x"])?.into_rational().unwrap())
}

/// Parse a polynomial in `x`.
pub fn parse_polynomial(text: &str) -> Result<UnivariatePolynomial, ParseError> {
    let r = parse_rational_function(text)?;
    if !r.is_polynomial() {
        return Err(ParseError::NonPolynomialExponent { position: 0 });
    }
    Ok(r.numerator().clone())
}
