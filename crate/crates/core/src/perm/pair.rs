//! Group pairs `[G, G_0]` with `G_0` the pointwise stabilizer of a point set.

use super::group::PermGroup;
use super::permutation::Permutation;

#[derive(Clone, Debug)]
pub struct GroupPair {
    pub group: PermGroup,
    pub subgroup: PermGroup,
    /// Points whose pointwise stabilizer is `subgroup`.
    pub stabilized: Vec<usize>,
}

/// Conjugates of `G_0` whose intersection is normal in `G`.
#[derive(Clone, Debug)]
pub struct AlmostNormalWitness {
    /// Elements `a` with `G_0^a` among the intersected conjugates.
    pub conjugators: Vec<Permutation>,
    /// Order of the intersection.
    pub intersection_order: u128,
}

impl GroupPair {
    pub fn point_stabilizer(group: PermGroup, point: usize) -> Self {
        let subgroup = group.pointwise_stabilizer(&[point]);
        GroupPair { group, subgroup, stabilized: vec![point] }
    }

    /// Always succeeds for finite groups; the witness lists one conjugator per image of the
    /// stabilized points, and the intersection is the kernel of the action on their orbits.
    pub fn almost_normal_witness(&self) -> AlmostNormalWitness {
        let n = self.group.degree();
        let mut covered = vec![false; n];
        let mut conjugators = Vec::new();
        let mut points = Vec::new();
        for &s in &self.stabilized {
            for q in 0..n {
                if covered[q] {
                    continue;
                }
                if let Some(a) = self.group.chain().find_element(|g| g.apply(s) == q) {
                    covered[q] = true;
                    points.push(q);
                    conjugators.push(a);
                }
            }
        }
        let inter = self.group.pointwise_stabilizer(&points);
        debug_assert!(inter.is_normal_in(&self.group));
        AlmostNormalWitness { conjugators, intersection_order: inter.order() }
    }

    pub fn is_almost_normal(&self) -> bool {
        let w = self.almost_normal_witness();
        let inter = self.group.pointwise_stabilizer(
            &w.conjugators.iter().flat_map(|a| self.stabilized.iter().map(move |&s| a.apply(s))).collect::<Vec<_>>(),
        );
        inter.is_normal_in(&self.group)
    }

    /// Finite groups are almost solvable (the chain `G > e` has a finite quotient), so this
    /// flag carries no information for algebraic functions.
    pub fn is_almost_solvable(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faithful_transitive_is_almost_normal_with_trivial_intersection() {
        let pair = GroupPair::point_stabilizer(PermGroup::symmetric(5), 0);
        assert_eq!(pair.subgroup.order(), 24);
        let w = pair.almost_normal_witness();
        assert_eq!(w.intersection_order, 1);
        assert!(pair.is_almost_normal());
    }

    #[test]
    fn trivial_and_regular() {
        let pair = GroupPair::point_stabilizer(PermGroup::trivial(1), 0);
        assert!(pair.is_almost_normal());
        let pair = GroupPair::point_stabilizer(PermGroup::cyclic(6), 0);
        assert_eq!(pair.subgroup.order(), 1);
    }
}
