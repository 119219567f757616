//! Differential polynomials in one unknown `u` over C(x).
//!
//! A monomial is a product of jet variables `u, u', u'', ...` and optional symbolic
//! coefficients `a_1, a_2, ...`. The symbols stand for unspecified functions of `x` and are
//! only used to display generic formulas, so differentiation refuses them.
//!
//! Printing: `u, u', u'', u'''` and `u(k)` for `k >= 4`; factors are juxtaposed (`3uu'`).
//! Terms are ordered by highest derivative present (descending), then by the first symbolic
//! coefficient (`a_1` before `a_2` before none), then by jet exponents from the highest
//! derivative down (larger first).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{parse_rational_function, GaussianRational, RationalFunction};

use super::DifferentialError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct JetMonomial {
    jets: Vec<u32>,
    params: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl JetMonomial {
    /// `jets[k]` is the exponent of `u^(k)`, `params[k]` that of `a_(k+1)`.
    pub fn new(mut jets: Vec<u32>, mut params: Vec<u32>) -> Self {
        trim(&mut jets);
        trim(&mut params);
        JetMonomial { jets, params }
    }

    pub fn one() -> Self {
        Self::default()
    }

    /// The jet variable `u^(k)`.
    pub fn jet(k: usize) -> Self {
        let mut jets = vec![0; k + 1];
        jets[k] = 1;
        JetMonomial { jets, params: Vec::new() }
    }

    /// The symbol `a_k`, `k >= 1`.
    pub fn param(k: usize) -> Self {
        assert!(k >= 1, "symbolic coefficients are numbered from 1");
        let mut params = vec![0; k];
        params[k - 1] = 1;
        JetMonomial { jets: Vec::new(), params }
    }

    pub fn jets(&self) -> &[u32] {
        &self.jets
    }

    pub fn params(&self) -> &[u32] {
        &self.params
    }

    pub fn is_one(&self) -> bool {
        self.jets.is_empty() && self.params.is_empty()
    }

    /// Total degree in the jet variables.
    pub fn degree(&self) -> u32 {
        self.jets.iter().sum()
    }

    /// Highest `k` with `u^(k)` present.
    pub fn order(&self) -> Option<usize> {
        self.jets.len().checked_sub(1)
    }

    fn derivative_order(&self) -> usize {
        self.jets.len().saturating_sub(1)
    }

    fn first_param(&self) -> usize {
        self.params.iter().position(|&e| e > 0).unwrap_or(usize::MAX)
    }

    fn times(&self, o: &Self) -> Self {
        let add = |a: &[u32], b: &[u32]| {
            let mut v = vec![0; a.len().max(b.len())];
            for (i, e) in a.iter().enumerate() {
                v[i] += e;
            }
            for (i, e) in b.iter().enumerate() {
                v[i] += e;
            }
            v
        };
        JetMonomial::new(add(&self.jets, &o.jets), add(&self.params, &o.params))
    }
}

impl Ord for JetMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let jets_desc = || {
            let n = self.jets.len().max(o.jets.len());
            for k in (0..n).rev() {
                let (a, b) = (self.jets.get(k).unwrap_or(&0), o.jets.get(k).unwrap_or(&0));
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        };
        let params_desc = || {
            let n = self.params.len().max(o.params.len());
            for k in 0..n {
                let (a, b) = (self.params.get(k).unwrap_or(&0), o.params.get(k).unwrap_or(&0));
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        };
        o.derivative_order()
            .cmp(&self.derivative_order())
            .then(self.first_param().cmp(&o.first_param()))
            .then_with(jets_desc)
            .then_with(params_desc)
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub(crate) fn jet_name(k: usize) -> String {
    if k <= 3 {
        format!("u{}", "'".repeat(k))
    } else {
        format!("u({k})")
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |f: &mut fmt::Formatter<'_>, name: String, e: u32| {
            if e == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{name}^{e}")
            }
        };
        for (k, &e) in self.params.iter().enumerate() {
            if e > 0 {
                power(f, format!("a_{}", k + 1), e)?;
            }
        }
        for (k, &e) in self.jets.iter().enumerate() {
            if e > 0 {
                power(f, jet_name(k), e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in the jets of `u` with coefficients in C(x).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DifferentialPolynomial {
    terms: BTreeMap<JetMonomial, RationalFunction>,
}

impl DifferentialPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalFunction::one())
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(c, JetMonomial::one())
    }

    /// `u^(k)`.
    pub fn jet(k: usize) -> Self {
        Self::term(RationalFunction::one(), JetMonomial::jet(k))
    }

    /// The symbolic coefficient `a_k`.
    pub fn param(k: usize) -> Self {
        Self::term(RationalFunction::one(), JetMonomial::param(k))
    }

    pub fn term(c: RationalFunction, m: JetMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: JetMonomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &JetMonomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
    }

    /// Jet order: the highest derivative of `u` that occurs (0 when none does).
    pub fn order(&self) -> usize {
        self.terms.keys().filter_map(|m| m.order()).max().unwrap_or(0)
    }

    /// Total degree in the jet variables (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Sum of the terms of jet degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        DifferentialPolynomial {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn has_parameters(&self) -> bool {
        self.terms.keys().any(|m| !m.params.is_empty())
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total derivative `d/dx`, with `d u^(k)/dx = u^(k+1)`. `None` when symbolic
    /// coefficients are present.
    pub fn derivative(&self) -> Option<Self> {
        if self.has_parameters() {
            return None;
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derivative());
            for (k, &e) in m.jets.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut jets = m.jets.clone();
                jets[k] -= 1;
                if jets.len() == k + 1 {
                    jets.push(0);
                }
                jets[k + 1] += 1;
                out.add_term(JetMonomial::new(jets, Vec::new()), c.scale(&GaussianRational::from_int(e as i64)));
            }
        }
        Some(out)
    }

    /// Value after substituting `u`; `None` when symbolic coefficients are present.
    pub fn substitute(&self, u: &RationalFunction) -> Option<RationalFunction> {
        if self.has_parameters() {
            return None;
        }
        let mut jets = vec![u.clone()];
        for _ in 0..self.order() {
            let next = jets.last().unwrap().derivative();
            jets.push(next);
        }
        let mut acc = RationalFunction::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.jets.iter().enumerate() {
                if e > 0 {
                    t = &t * &jets[k].pow(e as i32);
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }
}

fn coefficient_text(c: &RationalFunction) -> (bool, String) {
    let lc = c.numerator().leading_coeff();
    if lc.is_real() && lc.re < Zero::zero() {
        (true, (-c).to_string())
    } else {
        (false, c.to_string())
    }
}

impl fmt::Display for DifferentialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = coefficient_text(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != "1" {
                let atomic = mag.chars().all(|ch| ch.is_ascii_digit()) || (mag.starts_with('(') && c.is_constant());
                if atomic {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Add for &DifferentialPolynomial {
    type Output = DifferentialPolynomial;
    fn add(self, o: &DifferentialPolynomial) -> DifferentialPolynomial {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &DifferentialPolynomial {
    type Output = DifferentialPolynomial;
    fn neg(self) -> DifferentialPolynomial {
        DifferentialPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &DifferentialPolynomial {
    type Output = DifferentialPolynomial;
    fn sub(self, o: &DifferentialPolynomial) -> DifferentialPolynomial {
        self + &(-o)
    }
}

impl Mul for &DifferentialPolynomial {
    type Output = DifferentialPolynomial;
    fn mul(self, o: &DifferentialPolynomial) -> DifferentialPolynomial {
        let mut out = DifferentialPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

/// Parse the printed form back: a signed sum of terms, each a juxtaposition of factors
/// `u`, `u'`, `u(k)`, `a_k`, integers and parenthesized rational functions of `x`, each
/// optionally raised to a nonnegative integer power. `*` and `/` between factors are
/// accepted as well.
pub fn parse_differential_polynomial(text: &str) -> Result<DifferentialPolynomial, DifferentialError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |pos: usize, what: &str| DifferentialError::Syntax { position: pos, expected: what.to_string() };
    let mut pos = 0;
    let mut out = DifferentialPolynomial::zero();
    let number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };
    if chars.is_empty() {
        return Err(err(0, "term"));
    }
    loop {
        let mut sign = GaussianRational::one();
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut term = DifferentialPolynomial::constant(RationalFunction::constant(sign));
        let mut divide = false;
        let mut any = false;
        while pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            let start = pos;
            let factor = match chars[pos] {
                '*' if any => {
                    pos += 1;
                    continue;
                }
                '/' if any => {
                    pos += 1;
                    divide = true;
                    continue;
                }
                '(' => {
                    let mut depth = 0;
                    let mut end = pos;
                    while end < chars.len() {
                        match chars[end] {
                            '(' => depth += 1,
                            ')' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        end += 1;
                    }
                    if end == chars.len() {
                        return Err(err(pos, "')'"));
                    }
                    let inner: String = chars[pos + 1..end].iter().collect();
                    pos = end + 1;
                    let r = parse_rational_function(&inner).map_err(|_| err(start + 1, "rational function of x"))?;
                    DifferentialPolynomial::constant(r)
                }
                c if c.is_ascii_digit() => {
                    let n = number(&mut pos).ok_or_else(|| err(start, "integer"))?;
                    DifferentialPolynomial::constant(RationalFunction::from_int(n as i64))
                }
                'u' => {
                    pos += 1;
                    let mut k = 0;
                    while pos < chars.len() && chars[pos] == '\'' {
                        k += 1;
                        pos += 1;
                    }
                    if k == 0 && pos < chars.len() && chars[pos] == '(' {
                        pos += 1;
                        k = number(&mut pos).ok_or_else(|| err(pos, "derivative order"))? as usize;
                        if pos >= chars.len() || chars[pos] != ')' {
                            return Err(err(pos, "')'"));
                        }
                        pos += 1;
                    }
                    DifferentialPolynomial::jet(k)
                }
                'a' if chars.get(pos + 1) == Some(&'_') => {
                    pos += 2;
                    let k = number(&mut pos).ok_or_else(|| err(pos, "coefficient index"))? as usize;
                    if k == 0 {
                        return Err(err(pos, "coefficient index from 1"));
                    }
                    DifferentialPolynomial::param(k)
                }
                _ => return Err(err(pos, "factor")),
            };
            let mut factor = factor;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let e = number(&mut pos).ok_or_else(|| err(pos, "exponent"))?;
                factor = factor.pow(e as u32);
            }
            if divide {
                let c = factor
                    .terms
                    .iter()
                    .next()
                    .filter(|(m, _)| factor.len() == 1 && m.is_one())
                    .and_then(|(_, c)| c.inv())
                    .ok_or_else(|| err(start, "nonzero rational divisor"))?;
                term = term.scale(&c);
                divide = false;
            } else {
                term = &term * &factor;
            }
            any = true;
        }
        if !any {
            return Err(err(pos, "factor"));
        }
        out = &out + &term;
        if pos >= chars.len() {
            return Ok(out);
        }
    }
}

/// The sequence `D_0 = 1`, `D_(k+1) = dD_k/dx + u D_k`, so that `y^(k) = D_k(u) y` when
/// `y' = u y`.
pub fn d_sequence(n: usize) -> Result<Vec<DifferentialPolynomial>, DifferentialError> {
    if n > super::MAX_ORDER {
        return Err(DifferentialError::OrderTooLarge { order: n, max: super::MAX_ORDER });
    }
    let u = DifferentialPolynomial::jet(0);
    let mut out = vec![DifferentialPolynomial::one()];
    for k in 0..n {
        let d = &out[k];
        let next = &d.derivative().expect("no symbols") + &(&u * d);
        out.push(next);
    }
    Ok(out)
}

/// Polynomial `Q(x_0, ..., x_n)` in which `x_k` stands for `y^(k)`, with coefficients in
/// C(x). Keys are exponent vectors with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<Vec<u32>, RationalFunction>,
}

impl JetPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(c, Vec::new())
    }

    /// `x_k`.
    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        Self::term(RationalFunction::one(), e)
    }

    pub fn term(c: RationalFunction, mut exponents: Vec<u32>) -> Self {
        trim(&mut exponents);
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(RationalFunction::zero);
        *v = &*v + &c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index present.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|e| e.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Distinct total degrees of the monomials, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn as_constant(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(RationalFunction::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &JetPolynomial {
    type Output = JetPolynomial;
    fn add(self, o: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &JetPolynomial {
    type Output = JetPolynomial;
    fn mul(self, o: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero();
        for (a, c1) in &self.terms {
            for (b, c2) in &o.terms {
                let mut e = vec![0; a.len().max(b.len())];
                for (i, v) in a.iter().enumerate() {
                    e[i] += v;
                }
                for (i, v) in b.iter().enumerate() {
                    e[i] += v;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, then lexicographically larger exponents of high indices
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| {
                let n = a.len().max(b.len());
                (0..n)
                    .rev()
                    .map(|k| b.get(k).unwrap_or(&0).cmp(a.get(k).unwrap_or(&0)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = coefficient_text(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| if p == 1 { format!("x{k}") } else { format!("x{k}^{p}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != "1" {
                if c.is_constant() && !mag.contains('/') {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

/// Parse `Q(x_0, ..., x_n)`: variables `x0`, `x1`, ... (or `x_0`, ...), coefficients built
/// from numbers, `i` and the independent variable `x`.
pub fn parse_jet_polynomial(text: &str) -> Result<JetPolynomial, DifferentialError> {
    use crate::algebra::parse::{Cursor, Tok};

    struct P {
        cur: Cursor,
    }

    fn syntax(e: crate::algebra::ParseError) -> DifferentialError {
        DifferentialError::Parse(e)
    }

    impl P {
        fn expr(&mut self) -> Result<JetPolynomial, DifferentialError> {
            let mut v = self.term()?;
            loop {
                if self.cur.eat('+') {
                    v = &v + &self.term()?;
                } else if self.cur.eat('-') {
                    let t = self.term()?;
                    v = &v + &t.scale(&RationalFunction::from_int(-1));
                } else {
                    return Ok(v);
                }
            }
        }

        fn term(&mut self) -> Result<JetPolynomial, DifferentialError> {
            let mut v = self.factor()?;
            loop {
                if self.cur.eat('*') {
                    v = &v * &self.factor()?;
                } else if self.cur.peek() == &Tok::Op('/') {
                    self.cur.bump();
                    let pos = self.cur.position();
                    let d = self.factor()?;
                    let c = d.as_constant().and_then(|c| c.inv()).ok_or(DifferentialError::Syntax {
                        position: pos,
                        expected: "nonzero divisor free of x_k".into(),
                    })?;
                    v = v.scale(&c);
                } else {
                    return Ok(v);
                }
            }
        }

        fn factor(&mut self) -> Result<JetPolynomial, DifferentialError> {
            if self.cur.eat('-') {
                return Ok(self.factor()?.scale(&RationalFunction::from_int(-1)));
            }
            if self.cur.eat('+') {
                return self.factor();
            }
            let b = self.base()?;
            if self.cur.eat('^') {
                let pos = self.cur.position();
                let e = self.cur.integer().map_err(syntax)?;
                if e >= 0 {
                    return Ok(b.pow(e as u32));
                }
                let c = b
                    .as_constant()
                    .and_then(|c| c.inv())
                    .ok_or(DifferentialError::Syntax { position: pos, expected: "nonnegative exponent".into() })?;
                return Ok(JetPolynomial::constant(c.pow((-e) as i32)));
            }
            Ok(b)
        }

        fn base(&mut self) -> Result<JetPolynomial, DifferentialError> {
            let pos = self.cur.position();
            match self.cur.bump() {
                Tok::Num(r) => {
                    Ok(JetPolynomial::constant(RationalFunction::constant(GaussianRational::from_rational(r))))
                }
                Tok::Name(n) if n == "x" => Ok(JetPolynomial::constant(RationalFunction::x())),
                Tok::Name(n) if n == "i" => {
                    Ok(JetPolynomial::constant(RationalFunction::constant(GaussianRational::i())))
                }
                Tok::Name(n) => {
                    let idx =
                        n.strip_prefix("x_").or_else(|| n.strip_prefix('x')).and_then(|s| s.parse::<usize>().ok());
                    match idx {
                        Some(k) => Ok(JetPolynomial::var(k)),
                        None => {
                            Err(DifferentialError::Syntax { position: pos, expected: "x, x0, x1, ... or i".into() })
                        }
                    }
                }
                Tok::Op('(') => {
                    let v = self.expr()?;
                    self.cur.expect(')').map_err(syntax)?;
                    Ok(v)
                }
                _ => Err(DifferentialError::Syntax { position: pos, expected: "number, name or '('".into() }),
            }
        }
    }

    let mut p = P { cur: Cursor::new(text).map_err(syntax)? };
    let v = p.expr()?;
    if p.cur.peek() != &Tok::End {
        return Err(DifferentialError::Syntax {
            position: p.cur.position(),
            expected: "operator or end of input".into(),
        });
    }
    Ok(v)
}
