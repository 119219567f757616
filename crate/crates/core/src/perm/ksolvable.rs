//! k-solvability through nonabelian composition factors.
//!
//! A group has a normal chain whose quotients are abelian or embed in `S_k` exactly when
//! every nonabelian composition factor `T` has minimal permutation degree `mu(T) <= k`:
//! refining such a chain gives composition factors that are sections of its quotients, and a
//! simple nonabelian section of a subgroup of `S_k` again has degree at most `k`
//! (Kovács–Praeger); conversely a composition series is itself such a chain.
//!
//! Factors are found by splitting along orbits (restriction and pointwise stabilizer),
//! block systems (block action and kernel), and for primitive groups the perfect residual:
//! an affine residual `V : H` contributes the factors of the point stabilizer `H`, and any
//! other perfect primitive group of degree at most 32 is simple and is named by its order.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::group::{PermGroup, MAX_DEGREE};
use super::PermError;

/// Nonabelian simple group identified by its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub name: String,
    pub order: u128,
    /// Smallest degree of a faithful permutation representation.
    pub min_degree: usize,
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {}, minimal degree {})", self.name, self.order, self.min_degree)
    }
}

/// Outcome of a k-solvability test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSolvability {
    pub k: usize,
    pub k_solvable: bool,
    /// Nonabelian composition factors with multiplicity.
    pub factors: Vec<SimpleFactor>,
    /// Chain description: each entry names a quotient of a composition series, either
    /// `"abelian"` or a simple factor embedded in `S_k`.
    pub witness: Vec<String>,
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Known nonabelian simple groups of minimal degree at most 32.
fn simple_table() -> Vec<(u128, &'static str, usize)> {
    let mut t: Vec<(u128, &'static str, usize)> = vec![
        (504, "PSL(2,8)", 9),
        (660, "PSL(2,11)", 11),
        (1092, "PSL(2,13)", 14),
        (2448, "PSL(2,17)", 18),
        (3420, "PSL(2,19)", 20),
        (4080, "PSL(2,16)", 17),
        (5616, "PSL(3,3)", 13),
        (6048, "PSU(3,3)", 28),
        (6072, "PSL(2,23)", 24),
        (7800, "PSL(2,25)", 26),
        (7920, "M11", 11),
        (9828, "PSL(2,27)", 28),
        (12180, "PSL(2,29)", 30),
        (14880, "PSL(2,31)", 32),
        (25920, "PSp(4,3)", 27),
        (95040, "M12", 12),
        (372000, "PSL(3,5)", 31),
        (443520, "M22", 22),
        (1451520, "PSp(6,2)", 28),
        (9999360, "PSL(5,2)", 31),
        (10200960, "M23", 23),
        (244823040, "M24", 24),
        (168, "PSL(2,7)", 7),
    ];
    const ALT: [&str; 28] = [
        "A5", "A6", "A7", "A8", "A9", "A10", "A11", "A12", "A13", "A14", "A15", "A16", "A17", "A18", "A19", "A20",
        "A21", "A22", "A23", "A24", "A25", "A26", "A27", "A28", "A29", "A30", "A31", "A32",
    ];
    for (k, name) in ALT.iter().enumerate() {
        let m = k + 5;
        t.push((factorial(m) / 2, name, m));
    }
    t
}

/// `A8` and `PSL(3,4)` share order 20160; only `A8` has elements of order 15.
fn identify_simple(g: &PermGroup) -> Result<SimpleFactor, PermError> {
    let order = g.order();
    if order == 20160 {
        let mut rng = ChaCha8Rng::seed_from_u64(20160);
        let has15 = (0..2000).any(|_| g.random_element(&mut rng).order() == 15);
        let (name, min_degree) = if has15 { ("A8", 8) } else { ("PSL(3,4)", 21) };
        return Ok(SimpleFactor { name: name.into(), order, min_degree });
    }
    simple_table()
        .into_iter()
        .find(|(o, _, _)| *o == order)
        .map(|(o, name, d)| SimpleFactor { name: name.into(), order: o, min_degree: d })
        .ok_or(PermError::SearchBudgetExceeded {
            what: format!("unrecognized perfect primitive group of order {order}"),
            budget: 0,
        })
}

/// Relabel onto the support so that degree equals the number of moved points.
fn compress(g: &PermGroup) -> PermGroup {
    let s = g.support();
    if s.len() == g.degree() {
        g.clone()
    } else {
        g.restrict(&s)
    }
}

const COSET_BUDGET: u128 = 2_000_000;

/// Regular elementary abelian normal subgroup of a primitive group, if any.
fn affine_socle(r: &PermGroup) -> Result<Option<PermGroup>, PermError> {
    let n = r.degree();
    let Some(p) = prime_power_base(n) else {
        return Ok(None);
    };
    let stab = r.pointwise_stabilizer(&[0]);
    if stab.order() > COSET_BUDGET {
        return Err(PermError::SearchBudgetExceeded { what: "regular normal subgroup".into(), budget: COSET_BUDGET });
    }
    // the translation taking 0 to 1 lies in u * Stab(0) where u maps 0 to 1
    let u = r.chain().find_element(|g| g.apply(0) == 1).expect("transitive group");
    let mut found = None;
    stab.chain().find_element(|h| {
        let t = h.then(&u);
        if t.fixed_points() == 0 && t.pow(p as i64).is_identity() {
            let v = r.normal_closure(std::slice::from_ref(&t));
            if v.order() == n as u128 && v.is_abelian() {
                found = Some(v);
                return true;
            }
        }
        false
    });
    Ok(found)
}

fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// Nonabelian composition factors of `g`, with multiplicity.
pub fn nonabelian_composition_factors(g: &PermGroup) -> Result<Vec<SimpleFactor>, PermError> {
    if g.degree() > MAX_DEGREE {
        return Err(PermError::DegreeTooLarge { degree: g.degree(), max: MAX_DEGREE });
    }
    factors_rec(&compress(g))
}

fn factors_rec(g: &PermGroup) -> Result<Vec<SimpleFactor>, PermError> {
    if g.order() < 60 || g.is_solvable() {
        return Ok(Vec::new());
    }
    let orbits = g.orbits();
    if orbits.len() > 1 {
        let o = &orbits[0];
        let mut out = factors_rec(&compress(&g.restrict(o)))?;
        out.extend(factors_rec(&compress(&g.pointwise_stabilizer(o)))?);
        return Ok(out);
    }
    if let Some(blocks) = g.block_system()? {
        let mut out = factors_rec(&compress(&g.block_action(&blocks)))?;
        out.extend(factors_rec(&compress(&g.block_kernel(&blocks)))?);
        return Ok(out);
    }
    let r = g.perfect_residual();
    if r.order() != g.order() {
        return factors_rec(&r);
    }
    // g is perfect and primitive
    if affine_socle(g)?.is_some() {
        return factors_rec(&compress(&g.pointwise_stabilizer(&[0])));
    }
    Ok(vec![identify_simple(g)?])
}

/// Decide whether `g` admits a normal chain with quotients abelian or embeddable in `S_k`.
pub fn is_k_solvable(g: &PermGroup, k: usize) -> Result<KSolvability, PermError> {
    if g.degree() <= k {
        return Ok(KSolvability {
            k,
            k_solvable: true,
            factors: Vec::new(),
            witness: vec![format!("G itself acts on {} <= {k} points", g.degree())],
        });
    }
    let factors = nonabelian_composition_factors(g)?;
    let k_solvable = factors.iter().all(|f| f.min_degree <= k);
    let mut witness = Vec::new();
    if factors.is_empty() {
        witness.push("abelian".to_string());
    }
    for f in &factors {
        witness.push(format!("{} embeds in S_{}", f.name, f.min_degree));
        witness.push("abelian".to_string());
    }
    Ok(KSolvability { k, k_solvable, factors, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_orders_are_distinct() {
        let t = simple_table();
        for i in 0..t.len() {
            for j in 0..i {
                assert_ne!(t[i].0, t[j].0, "{} vs {}", t[i].1, t[j].1);
            }
        }
    }

    #[test]
    fn symmetric_five() {
        let s5 = PermGroup::symmetric(5);
        assert!(is_k_solvable(&s5, 5).unwrap().k_solvable);
        let r = is_k_solvable(&s5, 4).unwrap();
        assert!(!r.k_solvable);
        assert_eq!(r.factors[0].name, "A5");
    }

    #[test]
    fn solvable_and_abelian() {
        let s4 = PermGroup::symmetric(4);
        assert!(is_k_solvable(&s4, 1).unwrap().k_solvable);
        let z = PermGroup::cyclic(9);
        assert!(is_k_solvable(&z, 1).unwrap().k_solvable);
    }

    #[test]
    fn wreath_and_product_structures() {
        // S5 wr S2 on 10 points: factors A5, A5
        let g = PermGroup::from_cycle_strings(10, &["(1 2)", "(1 2 3 4 5)", "(1 6)(2 7)(3 8)(4 9)(5 10)"]).unwrap();
        let f = nonabelian_composition_factors(&g).unwrap();
        assert_eq!(f.iter().filter(|x| x.name == "A5").count(), 2);
        assert!(!is_k_solvable(&g, 4).unwrap().k_solvable);
        assert!(is_k_solvable(&g, 5).unwrap().k_solvable);
        // S2 wr S5 on 10 points: factor A5 only
        let h = PermGroup::from_cycle_strings(10, &["(1 2)", "(1 3 5 7 9)(2 4 6 8 10)", "(1 3)(2 4)"]).unwrap();
        let f = nonabelian_composition_factors(&h).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn psl27_on_seven_points() {
        let g = PermGroup::from_cycle_strings(7, &["(2 3 4 7)(5 6)", "(1 5 4 3)(6 7)"]).unwrap();
        assert_eq!(g.order(), 168);
        let f = nonabelian_composition_factors(&g).unwrap();
        assert_eq!(f[0].name, "PSL(2,7)");
        assert!(is_k_solvable(&g, 7).unwrap().k_solvable);
        assert!(!is_k_solvable(&g, 6).unwrap().k_solvable);
    }

    #[test]
    fn affine_group_reduces_to_stabilizer() {
        // AGL(1,7) is solvable; AGL(3,2) = 2^3 : PSL(2,7) has factor PSL(2,7)
        let agl32 =
            PermGroup::from_cycle_strings(8, &["(1 2)(3 4)(5 6)(7 8)", "(3 4)(7 8)", "(2 3 5)(4 7 6)", "(5 7)(6 8)"])
                .unwrap();
        assert_eq!(agl32.order(), 1344);
        let f = nonabelian_composition_factors(&agl32).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].name, "PSL(2,7)");
        assert!(nonabelian_composition_factors(
            &PermGroup::from_cycle_strings(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]).unwrap()
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn monotone_in_k() {
        let g = PermGroup::symmetric(6);
        let mut prev = false;
        for k in 1..8 {
            let cur = is_k_solvable(&g, k).unwrap().k_solvable;
            assert!(!prev || cur);
            prev = cur;
        }
        assert!(!is_k_solvable(&g, 5).unwrap().k_solvable);
        assert!(is_k_solvable(&g, 6).unwrap().k_solvable);
    }
}
