//! Monodromy of algebraic functions `P(x, y) = 0` by numerical analytic continuation.
//!
//! Root labels at the base point are sorted by real part descending, then imaginary part
//! descending. A generator `sigma` maps label `i` to the label of the root where branch `i`
//! ends. Products compose left to right: in `a.then(b)` the loop of `a` is traversed first.

pub mod loops;
pub mod singular;
pub mod track;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, BivariatePolynomial, ComplexInterval};
use crate::perm::{GroupPair, PermError, PermGroup, Permutation};

pub use loops::{auto_base, circle_loop, enclosing_loop, generate_loops, loop_order, Loop};
pub use singular::{singular_points, SingularSet};
pub use track::{continue_roots, continue_roots_with, hungarian, track_path, NumericCurve, MATCHING_MARGIN};

/// Default enclosure tolerance for singular points.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum MonodromyError {
    #[error("degree in y is {0}, at least 1 required")]
    DegreeTooLow(usize),
    #[error("polynomial has a repeated factor in y")]
    SquareFreeRequired,
    #[error("base point too close to singular point {point}")]
    BasePointTooClose { point: usize },
    #[error("tracked branches collided near x = {x}")]
    PathCollision { x: Complex64 },
    #[error("path passes through a singular point near x = {x}")]
    SingularOnPath { x: Complex64 },
    #[error("end matching distance {distance:e} not below a third of the separation {separation:e}")]
    MatchingFailed { distance: f64, separation: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Monodromy action on the roots over a base point.
#[derive(Clone, Debug)]
pub struct MonodromyAction {
    pub base: Complex64,
    /// Labelled roots `y_1, ..., y_n` of `P(base, .)`.
    pub roots: Vec<Complex64>,
    pub singular: SingularSet,
    /// Loops in the documented order, one per singular point.
    pub loops: Vec<Loop>,
    /// `generators[k]` is the permutation induced by `loops[k]`.
    pub generators: Vec<Permutation>,
    pub group: PermGroup,
}

impl MonodromyAction {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn is_transitive(&self) -> bool {
        self.group.is_transitive()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.group.orbits()
    }

    /// Action of the group on each orbit, relabelled to `0..len`.
    pub fn orbit_groups(&self) -> Vec<(Vec<usize>, PermGroup)> {
        self.orbits()
            .into_iter()
            .map(|o| {
                let g = self.group.restrict(&o);
                (o, g)
            })
            .collect()
    }

    /// Ordered product of all generators.
    pub fn product(&self) -> Permutation {
        self.generators.iter().fold(Permutation::identity(self.degree()), |acc, g| acc.then(g))
    }

    /// Generator of the loop around the singular point with the given index.
    pub fn local_generator(&self, point: usize) -> Option<&Permutation> {
        self.loops.iter().position(|l| l.encircled == Some(point)).map(|k| &self.generators[k])
    }

    pub fn report(&self) -> MonodromyReport {
        MonodromyReport {
            singular_points: self.singular.points.clone(),
            base_point: [self.base.re, self.base.im],
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            group_order: self.group.order(),
            transitive: self.is_transitive(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub singular_points: Vec<ComplexInterval>,
    pub base_point: [f64; 2],
    pub generators: Vec<String>,
    pub group_order: u128,
    pub transitive: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct MonodromyOptions {
    pub tol: f64,
    pub base: Option<Complex64>,
    /// End-matching margin, see [`continue_roots_with`].
    pub margin: f64,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions { tol: DEFAULT_TOL, base: None, margin: MATCHING_MARGIN }
    }
}

/// Labelled roots of `P(base, .)`.
pub fn base_roots(curve: &NumericCurve, base: Complex64) -> Vec<Complex64> {
    let mut r = curve.roots_at(base);
    track::sort_roots(&mut r);
    r
}

pub fn monodromy_group(p: &BivariatePolynomial) -> Result<MonodromyAction, MonodromyError> {
    monodromy_group_with(p, MonodromyOptions::default())
}

pub fn monodromy_group_with(
    p: &BivariatePolynomial,
    opts: MonodromyOptions,
) -> Result<MonodromyAction, MonodromyError> {
    let singular = singular_points(p, opts.tol)?;
    let n = p.degree_y();
    if n > crate::perm::group::MAX_DEGREE {
        return Err(PermError::DegreeTooLarge { degree: n, max: crate::perm::group::MAX_DEGREE }.into());
    }
    let base = opts.base.unwrap_or_else(|| auto_base(&singular));
    let loops = generate_loops(&singular, Some(base))?;
    let curve = NumericCurve::new(p);
    let roots = base_roots(&curve, base);
    let generators =
        loops.par_iter().map(|l| continue_roots_with(&curve, l, &roots, opts.margin)).collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::new(n, generators.clone())?;
    Ok(MonodromyAction { base, roots, singular, loops, generators, group })
}

/// Permutation induced by an arbitrary closed loop through the action's base point.
pub fn continue_along(
    p: &BivariatePolynomial,
    action: &MonodromyAction,
    l: &Loop,
) -> Result<Permutation, MonodromyError> {
    continue_roots(&NumericCurve::new(p), l, &action.roots)
}

/// Monodromy group with the stabilizer of label 1.
pub fn monodromy_pair(action: &MonodromyAction) -> GroupPair {
    GroupPair::point_stabilizer(action.group.clone(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_bivariate;

    fn action(s: &str) -> (BivariatePolynomial, MonodromyAction) {
        let p = parse_bivariate(s).unwrap();
        let a = monodromy_group(&p).unwrap();
        (p, a)
    }

    #[test]
    fn cyclic_covers() {
        for n in 2..=6 {
            let (_, a) = action(&format!("y^{n} - x"));
            assert_eq!(a.generators.len(), 1);
            assert!(a.generators[0].is_full_cycle());
            assert_eq!(a.group.order(), n as u128);
        }
    }

    #[test]
    fn quintic_is_symmetric() {
        let (_, a) = action("y^5 + y - x");
        assert_eq!(a.singular.len(), 4);
        assert_eq!(a.group.order(), 120);
        for g in &a.generators {
            assert_eq!(g.cycle_type(), vec![2, 1, 1, 1]);
        }
    }

    #[test]
    fn product_relation() {
        for s in ["y^5 + y - x", "y^3 - 3*y - x^2", "y^2 - (x^2 - 1)", "y^4 + x*y + 1", "(x^2+1)*y^3 - x"] {
            let (p, a) = action(s);
            let big = continue_along(&p, &a, &enclosing_loop(a.base)).unwrap();
            assert_eq!(a.product(), big, "{s}");
            let mut cw = enclosing_loop(a.base);
            cw.waypoints.reverse();
            let at_infinity = continue_along(&p, &a, &cw).unwrap();
            assert_eq!(a.product(), at_infinity.inverse(), "{s}");
        }
    }

    #[test]
    fn reducible_orbits() {
        let (_, a) = action("(y^2 - x)*(y^3 - x - 2)");
        let mut sizes: Vec<usize> = a.orbits().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        assert!(!a.is_transitive());
        let orders: Vec<u128> = a.orbit_groups().iter().map(|(_, g)| g.order()).collect();
        assert!(orders.contains(&2) && orders.contains(&3));
    }

    #[test]
    fn deterministic_and_report() {
        let (_, a) = action("y^3 - 3*y - x^2");
        let (_, b) = action("y^3 - 3*y - x^2");
        assert_eq!(a.generators, b.generators);
        let j = serde_json::to_value(a.report()).unwrap();
        assert_eq!(j["group_order"], 6);
        assert_eq!(j["transitive"], true);
        assert!(monodromy_pair(&a).is_almost_normal());
    }
}
