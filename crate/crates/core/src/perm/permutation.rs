//! Permutations of `{0, .., n-1}`, written 1-based in disjoint-cycle notation.
//!
//! Composition is left to right: `(a * b)(i) = b(a(i))`, so `a` is applied first.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;

use super::PermError;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From the image list `i -> images[i]`, checked to be a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    /// From 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || seen[a] {
                    return Err(PermError::NotABijection);
                }
                seen[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parse 1-based cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        let bad = || PermError::BadCycleNotation(text.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..inner_end];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().then(self).then(g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// Cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.images[s] == s {
                seen[s] = true;
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> u128 {
        self.cycle_type().into_iter().fold(1u128, |acc, l| acc.lcm(&(l as u128)))
    }

    pub fn is_full_cycle(&self) -> bool {
        let n = self.images.len();
        if n == 0 {
            return false;
        }
        let mut x = self.images[0];
        let mut len = 1;
        while x != 0 {
            x = self.images[x];
            len += 1;
        }
        len == n
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Restrict to an invariant point list, relabelled `points[k] -> k`.
    pub fn restrict(&self, points: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.degree()];
        for (k, &p) in points.iter().enumerate() {
            index[p] = k;
        }
        Permutation { images: points.iter().map(|&p| index[self.images[p]]).collect() }
    }

    /// Extend to a larger degree by fixing the new points.
    pub fn extend(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len()..n);
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;
    /// Degree is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let n = s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(0);
        Self::parse(s, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_roundtrip() {
        let p = Permutation::parse("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(Permutation::parse("(1 1)", 3).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert!(Permutation::commutator(&a, &a).is_identity());
        assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }
}
