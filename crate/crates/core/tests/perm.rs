use std::collections::HashSet;

use finitude::perm::{
    classify_primitive_solvable_with_cycle, is_k_solvable, PermGroup, Permutation, PrimitiveSolvableClass,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_perm(r: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(r);
    Permutation::from_images(images).unwrap()
}

/// Sparse generators: a random permutation restricted to a few moved points, so that
/// proper subgroups show up as often as the full symmetric group.
fn random_generator(r: &mut ChaCha8Rng, n: usize) -> Permutation {
    let k = r.gen_range(2..=n);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(r);
    let moved = &points[..k];
    let mut shuffled = moved.to_vec();
    shuffled.shuffle(r);
    let mut images: Vec<usize> = (0..n).collect();
    for (a, b) in moved.iter().zip(&shuffled) {
        images[*a] = *b;
    }
    Permutation::from_images(images).unwrap()
}

fn random_group(seed: u64, n: usize, gens: usize) -> PermGroup {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    PermGroup::new(n, (0..gens).map(|_| random_generator(&mut r, n)).collect()).unwrap()
}

fn closure_order(g: &PermGroup) -> u128 {
    let id = Permutation::identity(g.degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_order_matches_closure(seed in any::<u64>(), n in 2usize..=7, gens in 1usize..=3) {
        let g = random_group(seed, n, gens);
        prop_assert_eq!(g.order(), closure_order(&g));
        for s in g.generators() {
            prop_assert!(g.contains(s));
        }
    }

    #[test]
    fn solvable_groups_are_k_solvable_for_all_k(seed in any::<u64>(), n in 2usize..=8, gens in 1usize..=3) {
        let g = random_group(seed, n, gens);
        if g.is_solvable() {
            for k in 1..=8 {
                prop_assert!(is_k_solvable(&g, k).unwrap().k_solvable, "k = {}", k);
            }
        }
    }

    #[test]
    fn k_solvability_is_monotone(seed in any::<u64>(), n in 2usize..=8, gens in 1usize..=3) {
        let g = random_group(seed, n, gens);
        let mut prev = false;
        for k in 1..=9 {
            let cur = is_k_solvable(&g, k).unwrap().k_solvable;
            prop_assert!(!prev || cur, "true at {} but false at {}", k - 1, k);
            prev = cur;
        }
        prop_assert!(prev);
    }

    /// Subgroups of AGL(1, p) containing the shifts, hidden behind a random relabelling.
    #[test]
    fn affine_relabelling_is_pointwise_affine(seed in any::<u64>(), pi in 0usize..4) {
        let p = [3usize, 5, 7, 11][pi];
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let hide = random_perm(&mut r, p);
        let affine = |a: usize, b: usize| {
            let images: Vec<usize> = (0..p).map(|x| (a * x + b) % p).collect();
            Permutation::from_images(images).unwrap().conjugate_by(&hide)
        };
        let mut gens = vec![affine(1, 1)];
        for _ in 0..r.gen_range(0..=2) {
            gens.push(affine(r.gen_range(1..p), r.gen_range(0..p)));
        }
        let g = PermGroup::new(p, gens).unwrap();
        match classify_primitive_solvable_with_cycle(&g).unwrap() {
            PrimitiveSolvableClass::Affine { p: q, labels, maps } => {
                prop_assert_eq!(q, p);
                prop_assert_eq!(maps.len(), g.generators().len());
                for (gen, (a, b)) in g.generators().iter().zip(&maps) {
                    for pt in 0..p {
                        prop_assert_eq!(labels[gen.apply(pt)], (a * labels[pt] + b) % p);
                    }
                }
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}
