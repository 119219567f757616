use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::permutation::Permutation;
use super::PermError;

/// Largest degree accepted by [`PermGroup::group_order`].
pub const MAX_DEGREE: usize = 32;

/// Element count above which full-cycle search switches from enumeration to sampling.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

const SAMPLE_BUDGET: usize = 200_000;

/// Permutation group given by generators; the stabilizer chain is built on first use.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), chain }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        let g: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}>)", g.join(", "))
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    /// Generators in 1-based cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, PermError> {
        let g = gens.iter().map(|s| Permutation::parse(s, degree)).collect::<Result<_, _>>()?;
        Self::new(degree, g)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            gens.push(Self::n_cycle(n));
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n).map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
        Self::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(n, vec![Self::n_cycle(n)]).unwrap()
    }

    /// Dihedral group of order `2n` on `n` points.
    pub fn dihedral(n: usize) -> Self {
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        Self::new(n, vec![Self::n_cycle(n), refl]).unwrap()
    }

    fn n_cycle(n: usize) -> Permutation {
        Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    /// Order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Exact order; refuses degrees above [`MAX_DEGREE`].
    pub fn group_order(&self) -> Result<u128, PermError> {
        if self.degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge { degree: self.degree, max: MAX_DEGREE });
        }
        Ok(self.order())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.is_identity() || self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (0..i).all(|j| g[i].then(&g[j]) == g[j].then(&g[i])))
    }

    /// `true` when `self` is normalized by every generator of `parent`.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent.generators.iter().all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orb = vec![s];
            let mut k = 0;
            while k < orb.len() {
                let p = orb[k];
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orb.push(q);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Points moved by some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree).filter(|&p| self.generators.iter().any(|g| g.apply(p) != p)).collect()
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::new(self.degree, &[], &[]);
        let mut list: Vec<Permutation> = Vec::new();
        let mut queue: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        while let Some(h) = queue.pop() {
            if chain.contains(&h) {
                continue;
            }
            chain.add_generator(h.clone());
            list.push(h.clone());
            for g in &self.generators {
                let c = h.conjugate_by(g);
                if !chain.contains(&c) {
                    queue.push(c);
                }
            }
        }
        let out = PermGroup::new(self.degree, list).unwrap();
        let _ = out.chain.set(chain);
        out
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in 0..i {
                let c = Permutation::commutator(&g[i], &g[j]);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `G, G', G'', ..` until the series stabilizes (the last entry repeats no group).
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return series;
            }
            let d = last.derived_subgroup();
            if d.order() == last.order() {
                return series;
            }
            series.push(d);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// Last term of the derived series.
    pub fn perfect_residual(&self) -> PermGroup {
        self.derived_series().pop().unwrap()
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = StabChain::new(self.degree, &self.generators, points);
        let gens = chain.stabilizer_generators(points.len());
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// Action on an invariant point set, relabelled in the given order.
    pub fn restrict(&self, points: &[usize]) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.restrict(points)).collect();
        PermGroup::new(points.len(), gens).unwrap()
    }

    /// Minimal block containing `0` and `a` (Atkinson); returns block labels per point.
    fn minimal_block_labels(&self, a: usize) -> Vec<usize> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = vec![(0usize, a)];
        let r0 = find(&mut parent, 0);
        let ra = find(&mut parent, a);
        parent[ra.max(r0)] = ra.min(r0);
        while let Some((p, q)) = queue.pop() {
            for g in &self.generators {
                let (x, y) = (find(&mut parent, g.apply(p)), find(&mut parent, g.apply(q)));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                    queue.push((x, y));
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    /// A nontrivial block system as a list of blocks, or `None` when primitive.
    pub fn block_system(&self) -> Result<Option<Vec<Vec<usize>>>, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let n = self.degree;
        for a in 1..n {
            let labels = self.minimal_block_labels(a);
            let size = labels.iter().filter(|&&l| l == labels[0]).count();
            if size < n {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut index = vec![usize::MAX; n];
                for (x, &l) in labels.iter().enumerate() {
                    if index[l] == usize::MAX {
                        index[l] = blocks.len();
                        blocks.push(Vec::new());
                    }
                    blocks[index[l]].push(x);
                }
                return Ok(Some(blocks));
            }
        }
        Ok(None)
    }

    pub fn is_primitive(&self) -> Result<bool, PermError> {
        Ok(self.block_system()?.is_none())
    }

    /// Action on a block system, blocks numbered in the given order.
    pub fn block_action(&self, blocks: &[Vec<usize>]) -> PermGroup {
        let mut which = vec![0; self.degree];
        for (b, blk) in blocks.iter().enumerate() {
            for &x in blk {
                which[x] = b;
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::from_images_unchecked(blocks.iter().map(|blk| which[g.apply(blk[0])]).collect()))
            .collect();
        PermGroup::new(blocks.len(), gens).unwrap()
    }

    /// Subgroup fixing every block of the system.
    pub fn block_kernel(&self, blocks: &[Vec<usize>]) -> PermGroup {
        let n = self.degree;
        let m = blocks.len();
        let mut which = vec![0; n];
        for (b, blk) in blocks.iter().enumerate() {
            for &x in blk {
                which[x] = b;
            }
        }
        // faithful action on points plus blocks
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = g.images().to_vec();
                images.extend(blocks.iter().map(|blk| which[g.apply(blk[0])] + n));
                Permutation::from_images_unchecked(images)
            })
            .collect();
        let prefix: Vec<usize> = (n..n + m).collect();
        let chain = StabChain::new(n + m, &gens, &prefix);
        let kernel: Vec<Permutation> = chain
            .stabilizer_generators(m)
            .iter()
            .map(|k| Permutation::from_images_unchecked(k.images()[..n].to_vec()))
            .collect();
        PermGroup::new(n, kernel).unwrap()
    }

    /// Uniformly random element from the stabilizer chain.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let idx: Vec<usize> = chain.orbit_lengths().iter().map(|&len| rng.gen_range(0..len)).collect();
        chain.element(&idx)
    }

    /// A full cycle: generators first, then all elements when the order is at most
    /// [`ENUMERATION_BUDGET`], then seeded random sampling.
    pub fn find_full_cycle(&self) -> Result<Option<Permutation>, PermError> {
        let n = self.degree;
        if n == 0 {
            return Ok(None);
        }
        if let Some(g) = self.generators.iter().find(|g| g.is_full_cycle()) {
            return Ok(Some(g.clone()));
        }
        if n == 1 {
            return Ok(Some(Permutation::identity(1)));
        }
        if !self.is_transitive() {
            return Ok(None);
        }
        let order = self.order();
        if !order.is_multiple_of(n as u128) {
            return Ok(None);
        }
        if order <= ENUMERATION_BUDGET {
            return Ok(self.chain().find_element(|g| g.is_full_cycle()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c7c1e);
        for _ in 0..SAMPLE_BUDGET {
            let g = self.random_element(&mut rng);
            if g.is_full_cycle() {
                return Ok(Some(g));
            }
        }
        Err(PermError::SearchBudgetExceeded { what: "full cycle".into(), budget: SAMPLE_BUDGET as u128 })
    }

    pub fn has_full_cycle(&self) -> Result<bool, PermError> {
        Ok(self.find_full_cycle()?.is_some())
    }

    /// All elements; `None` when the order exceeds `budget`.
    pub fn elements(&self, budget: u128) -> Option<Vec<Permutation>> {
        if self.order() > budget {
            return None;
        }
        let mut out = Vec::new();
        self.chain().find_element(|g| {
            out.push(g.clone());
            false
        });
        Some(out)
    }
}
