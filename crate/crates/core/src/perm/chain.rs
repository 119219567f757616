//! Deterministic Schreier–Sims.
//!
//! Level `l` holds base point `b_l`, the strong generators fixing `b_0..b_{l-1}`, and the
//! orbit of `b_l` under them with transversal elements `u_p` (`b_l^{u_p} = p`).
//! Transversals only ever grow, so a Schreier generator that sifted once stays sifted; each
//! level remembers how many generators have been checked at each orbit point.

use super::permutation::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Permutation::identity(n));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal, checked: vec![0] }
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(g);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain of `<gens>` whose base starts with `prefix`.
    pub fn new(n: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut c = StabChain { n, levels: prefix.iter().map(|&b| Level::new(b, n)).collect() };
        for g in gens {
            c.add_generator(g.clone());
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_generators(0)
    }

    /// Sift from level `start`; returns the residue and the level where sifting stopped
    /// (`levels.len()` when it passed every level).
    fn sift(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let p = h.apply(level.base);
            match &level.transversal[p] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (h, l) = self.sift(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Add `h` to the generators of levels `from..=to`, creating a level if needed.
    fn install(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = (0..self.n).find(|&p| h.apply(p) != p).expect("identity residue");
            self.levels.push(Level::new(b, self.n));
        }
        for l in from..=to {
            self.levels[l].gens.push(h.clone());
            self.levels[l].extend_orbit();
        }
    }

    pub fn add_generator(&mut self, g: Permutation) {
        assert_eq!(g.degree(), self.n, "generator degree mismatch");
        if self.contains(&g) {
            return;
        }
        // g belongs to every level up to the first base point it moves
        let depth = self.levels.iter().position(|l| g.apply(l.base) != l.base).unwrap_or(self.levels.len());
        self.install(g, 0, depth);
        self.complete(depth as isize);
    }

    fn complete(&mut self, mut i: isize) {
        'outer: while i >= 0 {
            let l = i as usize;
            let mut k = 0;
            while k < self.levels[l].orbit.len() {
                let p = self.levels[l].orbit[k];
                while self.levels[l].checked[k] < self.levels[l].gens.len() {
                    let gi = self.levels[l].checked[k];
                    let level = &self.levels[l];
                    let s = &level.gens[gi];
                    let q = s.apply(p);
                    let up = level.transversal[p].as_ref().unwrap();
                    let uq = level.transversal[q].as_ref().unwrap();
                    let schreier = up.then(s).then(&uq.inverse());
                    self.levels[l].checked[k] += 1;
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift(&schreier, l + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        self.install(h, l + 1, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
                k += 1;
            }
            i -= 1;
        }
    }

    /// Transversal elements of level `l` in orbit order.
    pub fn transversal(&self, l: usize) -> Vec<Permutation> {
        let level = &self.levels[l];
        level.orbit.iter().map(|&p| level.transversal[p].clone().unwrap()).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit(&self, l: usize) -> &[usize] {
        &self.levels[l].orbit
    }

    /// Element with transversal choice `idx[l]` at each level: `u_{k-1} * .. * u_0`.
    pub fn element(&self, idx: &[usize]) -> Permutation {
        let mut g = Permutation::identity(self.n);
        for (l, level) in self.levels.iter().enumerate().rev() {
            let p = level.orbit[idx[l] % level.orbit.len()];
            g = g.then(level.transversal[p].as_ref().unwrap());
        }
        g
    }

    /// Visit every element until `f` returns `true`; returns that element.
    pub fn find_element(&self, mut f: impl FnMut(&Permutation) -> bool) -> Option<Permutation> {
        let trans: Vec<Vec<Permutation>> = (0..self.levels.len()).map(|l| self.transversal(l)).collect();
        fn rec(
            trans: &[Vec<Permutation>],
            l: usize,
            acc: &Permutation,
            f: &mut dyn FnMut(&Permutation) -> bool,
        ) -> Option<Permutation> {
            if l == 0 {
                return if f(acc) { Some(acc.clone()) } else { None };
            }
            for u in &trans[l - 1] {
                let next = acc.then(u);
                if let Some(r) = rec(trans, l - 1, &next, f) {
                    return Some(r);
                }
            }
            None
        }
        rec(&trans, trans.len(), &Permutation::identity(self.n), &mut f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9usize {
            let gens = [p("(1 2)", n), Permutation::from_images((1..n).chain([0]).collect()).unwrap()];
            let c = StabChain::new(n, &gens, &[]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(c.order(), fact);
        }
    }

    #[test]
    fn prefix_gives_pointwise_stabilizer() {
        let n = 5;
        let gens = [p("(1 2)", n), p("(1 2 3 4 5)", n)];
        let c = StabChain::new(n, &gens, &[0, 1]);
        let stab = StabChain::new(n, &c.stabilizer_generators(2), &[]);
        assert_eq!(stab.order(), 6);
        assert!(stab.strong_generators().iter().all(|g| g.apply(0) == 0 && g.apply(1) == 1));
    }

    #[test]
    fn membership_and_enumeration() {
        let n = 4;
        let c = StabChain::new(n, &[p("(1 2 3 4)", n)], &[]);
        assert!(c.contains(&p("(1 3)(2 4)", n)));
        assert!(!c.contains(&p("(1 2)", n)));
        let mut count = 0;
        c.find_element(|_| {
            count += 1;
            false
        });
        assert_eq!(count, 4);
    }
}
