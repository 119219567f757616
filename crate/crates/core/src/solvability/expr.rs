//! Radical expressions over `Q(i)(x)`.
//!
//! Branch convention: `root(m, z)` is the principal root, `|z|^(1/m) exp(i arg(z) / m)` with
//! `arg(z)` in `(-pi, pi]`, so its argument lies in `(-pi/m, pi/m]`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::algebra::parse::{Cursor, Tok};
use crate::algebra::{GaussianRational, ParseError, RationalFunction};

pub const BRANCH_CONVENTION: &str = "principal roots: root(m, z) has argument in (-pi/m, pi/m]";

#[derive(Clone, Debug, PartialEq)]
pub enum RadicalExpression {
    /// Element of the base field: constants and `x` combined by field operations.
    Field(RationalFunction),
    /// Floating constant, present only when exact recognition failed.
    Float(Complex64),
    Sum(Vec<RadicalExpression>),
    Product(Vec<RadicalExpression>),
    Quotient(Box<RadicalExpression>, Box<RadicalExpression>),
    Power(Box<RadicalExpression>, i32),
    Root(u32, Box<RadicalExpression>),
}

use RadicalExpression as R;

impl RadicalExpression {
    pub fn field(r: RationalFunction) -> Self {
        R::Field(r)
    }

    pub fn constant(c: GaussianRational) -> Self {
        R::Field(RationalFunction::constant(c))
    }

    pub fn int(n: i64) -> Self {
        R::constant(GaussianRational::from_int(n))
    }

    pub fn x() -> Self {
        R::Field(RationalFunction::x())
    }

    pub fn root(m: u32, e: RadicalExpression) -> Self {
        R::Root(m, Box::new(e))
    }

    /// `exp(2 pi i k / n)` written as `root(n, -1)^(2k)`.
    pub fn unity(n: u32, k: u32) -> Self {
        let k = k % n;
        if k == 0 {
            R::int(1)
        } else if 2 * k == n {
            R::int(-1)
        } else {
            R::Power(Box::new(R::root(n, R::int(-1))), 2 * k as i32)
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            R::Field(_) => true,
            R::Float(_) => false,
            R::Sum(v) | R::Product(v) => v.iter().all(|e| e.is_exact()),
            R::Quotient(a, b) => a.is_exact() && b.is_exact(),
            R::Power(a, _) | R::Root(_, a) => a.is_exact(),
        }
    }

    /// Number of root extractions.
    pub fn root_count(&self) -> usize {
        match self {
            R::Field(_) | R::Float(_) => 0,
            R::Sum(v) | R::Product(v) => v.iter().map(|e| e.root_count()).sum(),
            R::Quotient(a, b) => a.root_count() + b.root_count(),
            R::Power(a, _) => a.root_count(),
            R::Root(_, a) => 1 + a.root_count(),
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            R::Field(r) => r.eval_complex(x),
            R::Float(z) => *z,
            R::Sum(v) => v.iter().map(|e| e.eval(x)).sum(),
            R::Product(v) => v.iter().map(|e| e.eval(x)).product(),
            R::Quotient(a, b) => a.eval(x) / b.eval(x),
            R::Power(a, k) => a.eval(x).powi(*k),
            R::Root(m, a) => principal_root(a.eval(x), *m),
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            R::Field(r) => {
                let s = r.to_string();
                !s.contains(['+', '-', '/', '*', ' ', '('])
            }
            R::Root(..) => true,
            _ => false,
        }
    }
}

pub fn principal_root(z: Complex64, m: u32) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    // a signed zero imaginary part lies on the positive side of the cut
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    Complex64::from_polar(z.norm().powf(1.0 / m as f64), z.arg() / m as f64)
}

impl std::ops::Add for RadicalExpression {
    type Output = RadicalExpression;
    fn add(self, o: RadicalExpression) -> RadicalExpression {
        match (self, o) {
            (R::Field(a), R::Field(b)) => R::Field(&a + &b),
            (R::Field(a), b) | (b, R::Field(a)) if a.is_zero() => b,
            (R::Sum(mut v), R::Sum(w)) => {
                v.extend(w);
                R::Sum(v)
            }
            (R::Sum(mut v), b) => {
                v.push(b);
                R::Sum(v)
            }
            (a, b) => R::Sum(vec![a, b]),
        }
    }
}

impl std::ops::Sub for RadicalExpression {
    type Output = RadicalExpression;
    fn sub(self, o: RadicalExpression) -> RadicalExpression {
        self + R::int(-1) * o
    }
}

impl std::ops::Mul for RadicalExpression {
    type Output = RadicalExpression;
    fn mul(self, o: RadicalExpression) -> RadicalExpression {
        match (self, o) {
            (R::Field(a), R::Field(b)) => R::Field(&a * &b),
            (R::Field(a), b) | (b, R::Field(a)) if a.is_one() => b,
            (R::Field(a), _) | (_, R::Field(a)) if a.is_zero() => R::int(0),
            (R::Product(mut v), R::Product(w)) => {
                v.extend(w);
                R::Product(v)
            }
            (R::Product(mut v), b) => {
                v.push(b);
                R::Product(v)
            }
            (a, R::Product(mut w)) => {
                w.insert(0, a);
                R::Product(w)
            }
            (a, b) => R::Product(vec![a, b]),
        }
    }
}

impl std::ops::Div for RadicalExpression {
    type Output = RadicalExpression;
    fn div(self, o: RadicalExpression) -> RadicalExpression {
        match (self, o) {
            (R::Field(a), R::Field(b)) if !b.is_zero() => R::Field(&a / &b),
            (a, R::Field(b)) if b.is_one() => a,
            (a, b) => R::Quotient(Box::new(a), Box::new(b)),
        }
    }
}

impl RadicalExpression {
    pub fn pow(self, k: i32) -> RadicalExpression {
        match (self, k) {
            (_, 0) => R::int(1),
            (a, 1) => a,
            (R::Field(a), k) => R::Field(a.pow(k)),
            (a, k) => R::Power(Box::new(a), k),
        }
    }
}

fn fmt_float(z: Complex64) -> String {
    if z.im == 0.0 {
        if z.re < 0.0 {
            format!("(-{})", -z.re)
        } else {
            format!("{}", z.re)
        }
    } else {
        let sign = if z.im < 0.0 { "-" } else { "+" };
        format!("({}{}{}*i)", z.re, sign, z.im.abs())
    }
}

impl fmt::Display for RadicalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &RadicalExpression| {
            if e.is_atomic() || matches!(e, R::Field(_) | R::Float(_)) {
                e.to_string()
            } else {
                format!("({e})")
            }
        };
        match self {
            R::Field(r) => {
                if self.is_atomic() {
                    write!(f, "{r}")
                } else {
                    write!(f, "({r})")
                }
            }
            R::Float(z) => f.write_str(&fmt_float(*z)),
            R::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                f.write_str(&parts.join(" + "))
            }
            R::Product(v) => {
                let parts: Vec<String> = v.iter().map(wrap).collect();
                f.write_str(&parts.join("*"))
            }
            R::Quotient(a, b) => write!(f, "{}/{}", wrap(a), wrap(b)),
            R::Power(a, k) => write!(f, "{}^{}", wrap(a), k),
            R::Root(m, a) => write!(f, "root({m}, {a})"),
        }
    }
}

struct RadicalParser {
    cur: Cursor,
}

impl RadicalParser {
    fn expr(&mut self) -> Result<RadicalExpression, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat('+') {
                acc = acc + self.term()?;
            } else if self.cur.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RadicalExpression, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.cur.eat('*') {
                acc = acc * self.factor()?;
            } else if self.cur.peek() == &Tok::Op('/') {
                self.cur.bump();
                let pos = self.cur.position();
                let d = self.factor()?;
                if d == R::int(0) {
                    return Err(ParseError::DivisionByZero { position: pos });
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RadicalExpression, ParseError> {
        if self.cur.eat('-') {
            return Ok(R::int(-1) * self.factor()?);
        }
        if self.cur.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.cur.eat('^') {
            let pos = self.cur.position();
            let e = self.cur.integer()?;
            let e = i32::try_from(e).map_err(|_| ParseError::NonPolynomialExponent { position: pos })?;
            if let R::Field(r) = &base {
                if e < 0 && r.is_zero() {
                    return Err(ParseError::DivisionByZero { position: pos });
                }
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RadicalExpression, ParseError> {
        let pos = self.cur.position();
        match self.cur.bump() {
            Tok::Num(r) => Ok(R::constant(GaussianRational::from_rational(r))),
            Tok::Name(name) => match name.as_str() {
                "x" => Ok(R::x()),
                "i" => Ok(R::constant(GaussianRational::i())),
                "root" => {
                    self.cur.expect('(')?;
                    let mpos = self.cur.position();
                    let m = self.cur.integer()?;
                    if !(2..=u32::MAX as i64).contains(&m) {
                        return Err(ParseError::SyntaxError { position: mpos, expected: "root index >= 2".into() });
                    }
                    self.cur.expect(',')?;
                    let e = self.expr()?;
                    self.cur.expect(')')?;
                    Ok(R::root(m.to_u32().unwrap(), e))
                }
                _ => Err(ParseError::UndeclaredVariable { name, position: pos }),
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                self.cur.expect(')')?;
                Ok(v)
            }
            _ => Err(ParseError::SyntaxError { position: pos, expected: "number, name or '('".into() }),
        }
    }
}

/// Parse the expression grammar in `x` extended with `root(m, expr)`.
pub fn parse_radical(text: &str) -> Result<RadicalExpression, ParseError> {
    let mut p = RadicalParser { cur: Cursor::new(text)? };
    let e = p.expr()?;
    if p.cur.peek() != &Tok::End {
        return Err(p.cur.error("end of input"));
    }
    Ok(e)
}

/// `e` with every floating constant, if any, shown; `None` when exact.
pub fn float_constants(e: &RadicalExpression) -> Vec<Complex64> {
    let mut out = Vec::new();
    fn walk(e: &RadicalExpression, out: &mut Vec<Complex64>) {
        match e {
            R::Field(_) => {}
            R::Float(z) => out.push(*z),
            R::Sum(v) | R::Product(v) => v.iter().for_each(|c| walk(c, out)),
            R::Quotient(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            R::Power(a, _) | R::Root(_, a) => walk(a, out),
        }
    }
    walk(e, &mut out);
    out
}
