//! Primitive solvable groups containing a full cycle: degree 4, or affine maps of `F_p`
//! containing every shift.

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::PermError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimitiveSolvableClass {
    /// Degree 4.
    Size4,
    /// Points relabelled into `F_p`; generator `i` acts as `x -> a_i x + b_i`.
    Affine {
        p: usize,
        /// `labels[point] = element of F_p`.
        labels: Vec<usize>,
        /// `(a, b)` for each generator, in generator order.
        maps: Vec<(usize, usize)>,
    },
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn classify_primitive_solvable_with_cycle(g: &PermGroup) -> Result<PrimitiveSolvableClass, PermError> {
    let na = |reason: &str| PermError::NotApplicable(reason.to_string());
    if !g.is_transitive() {
        return Err(na("group is not transitive"));
    }
    if !g.is_primitive()? {
        return Err(na("group is not primitive"));
    }
    if !g.is_solvable() {
        return Err(na("group is not solvable"));
    }
    let Some(cycle) = g.find_full_cycle()? else {
        return Err(na("group has no full cycle"));
    };
    let n = g.degree();
    if n == 4 {
        return Ok(PrimitiveSolvableClass::Size4);
    }
    if !is_prime(n) {
        return Err(na("degree is neither 4 nor prime"));
    }
    let p = n;
    // label points along the cycle so that it acts as x -> x + 1
    let mut labels = vec![0; n];
    let mut x = 0;
    for k in 0..n {
        labels[x] = k;
        x = cycle.apply(x);
    }
    let mut point = vec![0; n];
    for (pt, &l) in labels.iter().enumerate() {
        point[l] = pt;
    }
    let mut maps = Vec::new();
    for gen in g.generators() {
        let b = labels[gen.apply(point[0])];
        let a = (labels[gen.apply(point[1])] + p - b) % p;
        if a == 0 || (0..p).any(|x| labels[gen.apply(point[x])] != (a * x + b) % p) {
            return Err(na("a generator is not affine in the cycle labelling"));
        }
        maps.push((a, b));
    }
    Ok(PrimitiveSolvableClass::Affine { p, labels, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_ten() {
        let d = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]).unwrap();
        match classify_primitive_solvable_with_cycle(&d).unwrap() {
            PrimitiveSolvableClass::Affine { p, labels, maps } => {
                assert_eq!(p, 5);
                assert_eq!(maps, vec![(1, 1), (4, 0)]);
                for (gen, &(a, b)) in d.generators().iter().zip(&maps) {
                    for pt in 0..5 {
                        assert_eq!(labels[gen.apply(pt)], (a * labels[pt] + b) % 5);
                    }
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn size_four_and_cyclic() {
        assert_eq!(
            classify_primitive_solvable_with_cycle(&PermGroup::symmetric(4)).unwrap(),
            PrimitiveSolvableClass::Size4
        );
        match classify_primitive_solvable_with_cycle(&PermGroup::cyclic(7)).unwrap() {
            PrimitiveSolvableClass::Affine { p, maps, .. } => {
                assert_eq!(p, 7);
                assert!(maps.iter().all(|&(a, _)| a == 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(classify_primitive_solvable_with_cycle(&PermGroup::symmetric(5)).is_err());
        assert!(classify_primitive_solvable_with_cycle(&PermGroup::cyclic(4)).is_err());
    }
}
