//! Verdicts on representability by radicals and k-radicals.
//!
//! A curve `P(x, y) = 0` defines a function representable by radicals exactly when its
//! monodromy group is solvable, and by k-radicals exactly when the group is k-solvable.
//! For inverses of polynomials the answer also follows from the composition structure:
//! every primitive factor must be linear, a conjugate of a power or Chebyshev polynomial, or
//! of degree at most 4.

pub mod expr;
pub mod ritt;
pub mod tower;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BivariatePolynomial, UnivariatePolynomial};
use crate::monodromy::{monodromy_group, MonodromyAction};
use crate::perm::{is_k_solvable, PermError, PermGroup, SimpleFactor};

pub use expr::{parse_radical, principal_root, RadicalExpression, BRANCH_CONVENTION};
pub use ritt::{classify_primitive, ritt_decompose, CompositionChain, LinearMap, PrimitiveClass};
pub use tower::{radical_tower, radical_tower_with, RadicalTower, TowerError, TowerMethod};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SolvabilityError {
    #[error("polynomial is reducible in y: monodromy has orbits of sizes {orbit_sizes:?}")]
    ReducibleInput { orbit_sizes: Vec<usize> },
    #[error("degree in y is {0}, at least 1 required")]
    DegreeTooLow(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Representable,
    NotRepresentable,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: u128,
    pub generators: Vec<String>,
}

impl GroupSummary {
    pub fn of(g: &PermGroup) -> Self {
        GroupSummary {
            name: group_name(g),
            order: g.order(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainEntry {
    pub factor: String,
    pub class: PrimitiveClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    SolvableMonodromy {
        derived_series_orders: Vec<u128>,
        tower: Option<TowerMethod>,
        /// Set when the certificate keeps floating constants.
        rationalization_failed: bool,
        tower_error: Option<String>,
        branch_convention: Option<String>,
    },
    UnsolvableMonodromy {
        nonabelian_factors: Vec<SimpleFactor>,
    },
    KSolvable {
        k: usize,
        chain: Vec<String>,
    },
    NotKSolvable {
        k: usize,
        factors: Vec<SimpleFactor>,
    },
    RittChain {
        chain: Vec<ChainEntry>,
    },
    NonRittFactor {
        chain: Vec<ChainEntry>,
        monodromy_confirms: Option<bool>,
    },
    NumericFailure {
        error: String,
    },
    BudgetExceeded {
        error: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub group: Option<GroupSummary>,
    /// Radical expression in the expression grammar with `root(m, expr)`, or a witness chain.
    pub certificate: Option<String>,
    pub reason: Reason,
}

impl Verdict {
    fn undecided(reason: Reason) -> Self {
        Verdict { status: Status::Undecided, group: None, certificate: None, reason }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Conventional name of a transitive group when recognized, else its order.
pub fn group_name(g: &PermGroup) -> String {
    let n = g.degree();
    let order = g.order();
    if order == factorial(n) {
        return format!("S{n}");
    }
    if tower::cyclic_generator(g).is_some() {
        return format!("C{n}");
    }
    if n >= 3 && 2 * order == factorial(n) && g.generators().iter().all(|p| p.is_even()) {
        return format!("A{n}");
    }
    if tower::dihedral_generators(g).is_some() {
        return format!("D{n}");
    }
    format!("group of order {order} on {n} points")
}

/// Orders along the derived series, ending at the trivial group for solvable groups.
pub fn derived_series_orders(g: &PermGroup) -> Vec<u128> {
    g.derived_series().iter().map(|h| h.order()).collect()
}

fn action_of(p: &BivariatePolynomial) -> Result<MonodromyAction, Verdict> {
    monodromy_group(p).map_err(|e| Verdict::undecided(Reason::NumericFailure { error: e.to_string() }))
}

fn require_transitive(action: &MonodromyAction) -> Result<(), SolvabilityError> {
    if action.is_transitive() {
        Ok(())
    } else {
        Err(SolvabilityError::ReducibleInput { orbit_sizes: action.orbits().iter().map(|o| o.len()).collect() })
    }
}

/// Radicals verdict for an irreducible curve.
pub fn radicals_verdict(p: &BivariatePolynomial) -> Result<Verdict, SolvabilityError> {
    if p.degree_y() == 0 {
        return Err(SolvabilityError::DegreeTooLow(0));
    }
    let action = match action_of(p) {
        Ok(a) => a,
        Err(v) => return Ok(v),
    };
    require_transitive(&action)?;
    Ok(radicals_verdict_for(p, &action))
}

/// Radicals verdict from a computed monodromy action.
pub fn radicals_verdict_for(p: &BivariatePolynomial, action: &MonodromyAction) -> Verdict {
    let g = &action.group;
    let group = Some(GroupSummary::of(g));
    if !g.is_solvable() {
        let nonabelian_factors = crate::perm::nonabelian_composition_factors(g).unwrap_or_default();
        return Verdict {
            status: Status::NotRepresentable,
            group,
            certificate: None,
            reason: Reason::UnsolvableMonodromy { nonabelian_factors },
        };
    }
    let series = derived_series_orders(g);
    let result = radical_tower_with(p, action);
    let (certificate, tower, failed, tower_error) = match (&result, tower::tower_expression(&result)) {
        (Ok(t), _) => (t.expression.to_string(), Some(t.method), false, None),
        (Err(e), Some(t)) => (t.expression.to_string(), Some(t.method), true, Some(e.to_string())),
        (Err(e), None) => (solvable_witness(&series), None, false, Some(e.to_string())),
    };
    Verdict {
        status: Status::Representable,
        group,
        certificate: Some(certificate),
        reason: Reason::SolvableMonodromy {
            derived_series_orders: series,
            tower,
            rationalization_failed: failed,
            tower_error,
            branch_convention: tower.map(|_| BRANCH_CONVENTION.to_string()),
        },
    }
}

fn solvable_witness(series: &[u128]) -> String {
    let parts: Vec<String> = series.iter().map(|o| o.to_string()).collect();
    format!("derived series orders {}", parts.join(" > "))
}

/// k-radicals verdict for an irreducible curve.
pub fn k_radicals_verdict(p: &BivariatePolynomial, k: usize) -> Result<Verdict, SolvabilityError> {
    if p.degree_y() == 0 {
        return Err(SolvabilityError::DegreeTooLow(0));
    }
    let action = match action_of(p) {
        Ok(a) => a,
        Err(v) => return Ok(v),
    };
    require_transitive(&action)?;
    Ok(k_verdict_for_group(&action.group, k))
}

pub fn k_verdict_for_group(g: &PermGroup, k: usize) -> Verdict {
    let group = Some(GroupSummary::of(g));
    match is_k_solvable(g, k) {
        Ok(r) if r.k_solvable => Verdict {
            status: Status::Representable,
            group,
            certificate: Some(r.witness.join("; ")),
            reason: Reason::KSolvable { k, chain: r.witness },
        },
        Ok(r) => Verdict {
            status: Status::NotRepresentable,
            group,
            certificate: None,
            reason: Reason::NotKSolvable { k, factors: r.factors },
        },
        Err(e @ PermError::SearchBudgetExceeded { .. }) => {
            Verdict { group, ..Verdict::undecided(Reason::BudgetExceeded { error: e.to_string() }) }
        }
        Err(e) => Verdict { group, ..Verdict::undecided(Reason::NumericFailure { error: e.to_string() }) },
    }
}

fn chain_entries(chain: &CompositionChain) -> Vec<ChainEntry> {
    chain.factors.iter().map(|f| ChainEntry { factor: f.to_string(), class: classify_primitive(f) }).collect()
}

/// Ritt's criterion for the inverse of `f`; a non-radical factor is cross-checked against
/// the monodromy of `f(y) - x`.
pub fn invertible_by_radicals(f: &UnivariatePolynomial) -> Result<Verdict, SolvabilityError> {
    if f.deg() == 0 {
        return Err(SolvabilityError::DegreeTooLow(0));
    }
    let chain = ritt_decompose(f);
    let entries = chain_entries(&chain);
    if entries.iter().all(|e| e.class.is_radical()) {
        return Ok(Verdict {
            status: Status::Representable,
            group: None,
            certificate: Some(chain.to_string()),
            reason: Reason::RittChain { chain: entries },
        });
    }
    let curve = BivariatePolynomial::inverse_curve(f);
    let group = monodromy_group(&curve).ok().map(|a| a.group);
    let confirms = group.as_ref().map(|g| !g.is_solvable());
    let status = if confirms == Some(false) { Status::Undecided } else { Status::NotRepresentable };
    Ok(Verdict {
        status,
        group: group.as_ref().map(GroupSummary::of),
        certificate: None,
        reason: Reason::NonRittFactor { chain: entries, monodromy_confirms: confirms },
    })
}

pub fn invertible_by_k_radicals(f: &UnivariatePolynomial, k: usize) -> Result<Verdict, SolvabilityError> {
    if f.deg() == 0 {
        return Err(SolvabilityError::DegreeTooLow(0));
    }
    k_radicals_verdict(&BivariatePolynomial::inverse_curve(f), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bivariate, parse_polynomial};

    fn curve(s: &str) -> BivariatePolynomial {
        parse_bivariate(s).unwrap()
    }

    #[test]
    fn quintic_fixed_point() {
        let p = curve("y^5 + y - x");
        let v = radicals_verdict(&p).unwrap();
        assert_eq!(v.status, Status::NotRepresentable);
        let g = v.group.unwrap();
        assert_eq!((g.name.as_str(), g.order), ("S5", 120));
        assert_eq!(k_radicals_verdict(&p, 5).unwrap().status, Status::Representable);
        assert_eq!(k_radicals_verdict(&p, 4).unwrap().status, Status::NotRepresentable);
    }

    #[test]
    fn simple_certificates() {
        let v = radicals_verdict(&curve("y^3 - x")).unwrap();
        assert_eq!(v.status, Status::Representable);
        assert_eq!(v.certificate.as_deref(), Some("root(3, x)"));
        let v = radicals_verdict(&curve("y^2 - (x^3 + 1)")).unwrap();
        assert_eq!(v.certificate.as_deref(), Some("root(2, (x^3 + 1))"));
        assert_eq!(k_radicals_verdict(&curve("y^2 - x"), 1).unwrap().status, Status::Representable);
        let j = v.to_json();
        assert_eq!(j["status"], "Representable");
        assert_eq!(j["group"]["order"], 2);
        assert_eq!(j["reason"]["branch_convention"], BRANCH_CONVENTION);
    }

    #[test]
    fn reducible_rejected() {
        let e = radicals_verdict(&curve("(y^2 - x)*(y - x)")).unwrap_err();
        assert!(matches!(e, SolvabilityError::ReducibleInput { .. }));
    }

    #[test]
    fn ritt_verdicts() {
        let t5 = parse_polynomial("16*x^5 - 20*x^3 + 5*x").unwrap();
        assert_eq!(invertible_by_radicals(&t5).unwrap().status, Status::Representable);
        let quartic = parse_polynomial("3*x^4 - x^3 + 7*x + 2").unwrap();
        assert_eq!(invertible_by_radicals(&quartic).unwrap().status, Status::Representable);
        let v = invertible_by_radicals(&parse_polynomial("x^5 + x").unwrap()).unwrap();
        assert_eq!(v.status, Status::NotRepresentable);
        assert!(matches!(v.reason, Reason::NonRittFactor { monodromy_confirms: Some(true), .. }));
        assert_eq!(v.group.unwrap().order, 120);
    }

    #[test]
    fn k_radical_inverses() {
        let f = parse_polynomial("x^5 + x").unwrap();
        assert_eq!(invertible_by_k_radicals(&f, 5).unwrap().status, Status::Representable);
        assert_eq!(invertible_by_k_radicals(&f, 4).unwrap().status, Status::NotRepresentable);
        let t7 = parse_polynomial("64*x^7 - 112*x^5 + 56*x^3 - 7*x").unwrap();
        let v = invertible_by_k_radicals(&t7, 1).unwrap();
        assert_eq!(v.status, Status::Representable);
        assert_eq!(v.group.unwrap().name, "D7");
    }
}
