//! Stabilizer chains, generator words and related group computations.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::perm::{Parity, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("target is not in the generated group")]
    NotInGroup,
    #[error("generator word exceeds {0} letters")]
    WordTooLong(usize),
    #[error("generator set is empty")]
    NoGenerators,
    #[error("permutation degrees differ")]
    DegreeMismatch,
    #[error("more than {0} cosets")]
    TooManyCosets(usize),
}

/// Cap on generator applications in a factorization.
pub const WORD_CAP: usize = 10_000;

struct Level {
    base: usize,
    /// Generators stored at this level; the level's group is generated by
    /// these together with all deeper levels' generators.
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
}

/// Schreier–Sims stabilizer chain.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(gens: &[Perm]) -> Result<StabChain, PermError> {
        let degree = gens.first().ok_or(PermError::NoGenerators)?.degree();
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch);
        }
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            let (residue, level) = chain.sift(g.clone(), 0);
            if !residue.is_identity() {
                chain.insert(residue, level);
            }
        }
        Ok(chain)
    }

    fn level_gens(&self, i: usize) -> Vec<&Perm> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter()).collect()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_gens(i).into_iter().cloned().collect();
        let base = self.levels[i].base;
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Perm::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(b) = queue.pop_front() {
            let ub = transversal[b].clone().expect("visited");
            for s in &gens {
                let c = s.image(b);
                if transversal[c].is_none() {
                    transversal[c] = Some(s.compose(&ub));
                    queue.push_back(c);
                }
            }
        }
        self.levels[i].transversal = transversal;
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// where sifting stopped.
    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for k in from..self.levels.len() {
            let level = &self.levels[k];
            let b = h.image(level.base);
            match &level.transversal[b] {
                Some(u) => h = u.invert().compose(&h),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    fn insert(&mut self, g: Perm, at: usize) {
        let mut pending = Some((g, at));
        while let Some((g, at)) = pending.take() {
            if at == self.levels.len() {
                let base = g.support()[0];
                self.levels.push(Level {
                    base,
                    gens: Vec::new(),
                    transversal: Vec::new(),
                });
            }
            self.levels[at].gens.push(g);
            // deeper levels are unaffected; recheck from `at` upwards
            for i in (0..=at).rev() {
                self.rebuild_orbit(i);
                if let Some(p) = self.failing_schreier_generator(i) {
                    pending = Some(p);
                    break;
                }
            }
        }
    }

    fn failing_schreier_generator(&self, i: usize) -> Option<(Perm, usize)> {
        let gens = self.level_gens(i);
        let transversal = &self.levels[i].transversal;
        for b in 0..self.degree {
            let Some(ub) = &transversal[b] else { continue };
            for s in &gens {
                let sb = s.image(b);
                let usb = transversal[sb].as_ref().expect("orbit is closed");
                let h = usb.invert().compose(&s.compose(ub));
                if h.is_identity() {
                    continue;
                }
                let (residue, level) = self.sift(h, i + 1);
                if !residue.is_identity() {
                    return Some((residue, level));
                }
            }
        }
        None
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| {
            acc * BigUint::from(l.transversal.iter().filter(|t| t.is_some()).count())
        })
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift(p.clone(), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// Order of the group generated by `gens`.
pub fn subgroup_order(gens: &[Perm]) -> Result<BigUint, PermError> {
    Ok(StabChain::new(gens)?.order())
}

/// A named generator set.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub names: Vec<String>,
    pub perms: Vec<Perm>,
}

impl GeneratorSet {
    pub fn new(names: Vec<String>, perms: Vec<Perm>) -> GeneratorSet {
        assert_eq!(names.len(), perms.len());
        GeneratorSet { names, perms }
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, |p| p.degree())
    }
}

/// A word over a generator set; letters are applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorWord {
    pub letters: Vec<(usize, i8)>,
}

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            letters: self.letters.iter().rev().map(|&(g, s)| (g, -s)).collect(),
        }
    }

    pub fn evaluate(&self, gens: &GeneratorSet) -> Perm {
        let mut p = Perm::identity(gens.degree());
        for &(g, s) in &self.letters {
            let step = if s > 0 {
                gens.perms[g].clone()
            } else {
                gens.perms[g].invert()
            };
            p = p.then(&step);
        }
        p
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        self.letters
            .iter()
            .map(|&(g, s)| {
                if s > 0 {
                    gens.names[g].clone()
                } else {
                    format!("{}'", gens.names[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Breadth-first table of ordered point triples reachable from the
/// generators' own 3-cycles, used to conjugate a generator onto any 3-cycle.
struct TripleTable {
    /// For each reached triple: (source generator, letter that reached it,
    /// predecessor triple).
    parent: HashMap<[u8; 3], (usize, Option<((usize, i8), [u8; 3])>)>,
}

fn three_cycle_points(p: &Perm) -> Option<[u8; 3]> {
    let cycles: Vec<Vec<usize>> = p.cycles().into_iter().filter(|c| c.len() > 1).collect();
    match cycles.as_slice() {
        [c] if c.len() == 3 => Some([c[0] as u8, c[1] as u8, c[2] as u8]),
        _ => None,
    }
}

impl TripleTable {
    fn build(gens: &GeneratorSet) -> Option<TripleTable> {
        let mut parent = HashMap::new();
        let mut queue = VecDeque::new();
        for (gi, g) in gens.perms.iter().enumerate() {
            if let Some(t) = three_cycle_points(g) {
                for r in 0..3 {
                    let rot = [t[r], t[(r + 1) % 3], t[(r + 2) % 3]];
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(rot) {
                        e.insert((gi, None));
                        queue.push_back(rot);
                    }
                }
            }
        }
        if parent.is_empty() {
            return None;
        }
        let letters: Vec<(usize, i8, Perm)> = gens
            .perms
            .iter()
            .enumerate()
            .flat_map(|(i, p)| [(i, 1, p.clone()), (i, -1, p.invert())])
            .collect();
        while let Some(t) = queue.pop_front() {
            let src = parent[&t].0;
            for (gi, s, p) in &letters {
                let next = [
                    p.image(t[0] as usize) as u8,
                    p.image(t[1] as usize) as u8,
                    p.image(t[2] as usize) as u8,
                ];
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert((src, Some(((*gi, *s), t))));
                    queue.push_back(next);
                }
            }
        }
        Some(TripleTable { parent })
    }

    /// Word for the 3-cycle `p → q → r → p`.
    fn three_cycle(&self, target: [u8; 3]) -> Option<GeneratorWord> {
        for r in 0..3 {
            let rot = [target[r], target[(r + 1) % 3], target[(r + 2) % 3]];
            if let Some(&(src, _)) = self.parent.get(&rot) {
                let mut path = Vec::new();
                let mut cur = rot;
                while let Some(&(_, Some((letter, prev)))) = self.parent.get(&cur) {
                    path.push(letter);
                    cur = prev;
                }
                path.reverse();
                // `cur` is a rotation of the source generator's own cycle, so
                // the generator itself realizes the 3-cycle on `cur`; the
                // conjugating word `h` carries `cur` onto `rot`.
                let h = GeneratorWord { letters: path };
                let mut letters = h.inverse().letters;
                letters.push((src, 1));
                letters.extend(h.letters.iter().copied());
                return Some(GeneratorWord { letters });
            }
        }
        None
    }
}

/// Factors an even permutation into 3-cycles `c₁, c₂, …` applied in order.
pub fn three_cycle_decomposition(target: &Perm) -> Vec<[u8; 3]> {
    let n = target.degree();
    let mut rest = target.clone();
    let mut out = Vec::new();
    while !rest.is_identity() {
        let a = rest.support()[0];
        let inv = rest.invert();
        let j = inv.image(a);
        let k = if rest.image(a) != j {
            rest.image(a)
        } else {
            *rest
                .support()
                .iter()
                .find(|&&x| x != a && x != j)
                .expect("an even permutation has no lone transposition")
        };
        // rest = rest' ∘ c with c = (j a k); c is applied first.
        let c = Perm::cycle(n, &[j, a, k]);
        rest = rest.compose(&c.invert());
        out.push([j as u8, a as u8, k as u8]);
    }
    out
}

fn bfs_factor(target: &Perm, gens: &GeneratorSet, state_cap: usize) -> Option<GeneratorWord> {
    let id = Perm::identity(gens.degree());
    let mut parent: HashMap<Perm, Option<((usize, i8), Perm)>> = HashMap::new();
    parent.insert(id.clone(), None);
    let mut queue = VecDeque::from([id]);
    let letters: Vec<(usize, i8, Perm)> = gens
        .perms
        .iter()
        .enumerate()
        .flat_map(|(i, p)| [(i, 1, p.clone()), (i, -1, p.invert())])
        .collect();
    while let Some(p) = queue.pop_front() {
        if &p == target {
            let mut word = Vec::new();
            let mut cur = p;
            while let Some(Some((letter, prev))) = parent.get(&cur) {
                word.push(*letter);
                cur = prev.clone();
            }
            word.reverse();
            return Some(GeneratorWord { letters: word });
        }
        if parent.len() > state_cap {
            return None;
        }
        for (gi, s, g) in &letters {
            let next = p.then(g);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some(((*gi, *s), p.clone())));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Factors `target` into a word over `gens`. Words are not minimal.
pub fn factor_into_generators(target: &Perm, gens: &GeneratorSet) -> Result<GeneratorWord, PermError> {
    Factorizer::new(gens.clone())?.factor(target)
}

/// Precomputed data for repeated factorizations over one generator set.
pub struct Factorizer {
    gens: GeneratorSet,
    chain: StabChain,
    table: Option<TripleTable>,
}

impl Factorizer {
    pub fn new(gens: GeneratorSet) -> Result<Factorizer, PermError> {
        if gens.perms.is_empty() {
            return Err(PermError::NoGenerators);
        }
        let chain = StabChain::new(&gens.perms)?;
        let table = TripleTable::build(&gens);
        Ok(Factorizer { gens, chain, table })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn factor(&self, target: &Perm) -> Result<GeneratorWord, PermError> {
        let gens = &self.gens;
        if target.degree() != gens.degree() {
            return Err(PermError::DegreeMismatch);
        }
        if target.is_identity() {
            return Ok(GeneratorWord::default());
        }
        if let Some(i) = gens.perms.iter().position(|g| g == target) {
            return Ok(GeneratorWord {
                letters: vec![(i, 1)],
            });
        }
        if !self.chain.contains(target) {
            return Err(PermError::NotInGroup);
        }
        let word = match (target.parity(), &self.table) {
            (Parity::Even, Some(table)) => {
                let mut letters = Vec::new();
                for c in three_cycle_decomposition(target) {
                    let w = table.three_cycle(c).ok_or(PermError::NotInGroup)?;
                    letters.extend(w.letters);
                }
                GeneratorWord { letters }
            }
            _ => bfs_factor(target, gens, 200_000).ok_or(PermError::WordTooLong(WORD_CAP))?,
        };
        if word.len() > WORD_CAP {
            return Err(PermError::WordTooLong(WORD_CAP));
        }
        debug_assert_eq!(&word.evaluate(gens), target);
        Ok(word)
    }
}

/// lcm of the element orders of `S_n`, by enumerating the cycle types
/// (integer partitions of `n`).
pub fn lcm_of_orders_sn(n: u32) -> BigUint {
    fn rec(remaining: u32, max_part: u32, acc: &BigUint, out: &mut BigUint) {
        if remaining == 0 {
            *out = out.lcm(acc);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            let next = acc.lcm(&BigUint::from(part));
            rec(remaining - part, part, &next, out);
        }
    }
    let mut out = BigUint::one();
    rec(n, n, &BigUint::one(), &mut out);
    out
}

pub fn lcm_of_orders_s24() -> BigUint {
    lcm_of_orders_sn(24)
}

/// Order of the subgroup generated by `slice_gens` and representatives of
/// its right cosets in the group generated by `full_gens`, identity first.
/// Fails once more than `cap` cosets have been found.
pub fn slice_subgroup_and_cosets(
    slice_gens: &[Perm],
    full_gens: &[Perm],
    cap: usize,
) -> Result<(BigUint, Vec<Perm>), PermError> {
    let degree = full_gens.first().ok_or(PermError::NoGenerators)?.degree();
    let sigma = if slice_gens.is_empty() {
        StabChain::new(&[Perm::identity(degree)])?
    } else {
        StabChain::new(slice_gens)?
    };
    let mut reps = vec![Perm::identity(degree)];
    let mut rep_inverses = vec![Perm::identity(degree)];
    let mut queue = VecDeque::from([0usize]);
    let mut tried: HashSet<Perm> = HashSet::new();
    while let Some(i) = queue.pop_front() {
        for g in full_gens {
            let cand = reps[i].compose(g);
            if !tried.insert(cand.clone()) {
                continue;
            }
            // cand ∈ Σ·ρ  ⇔  cand ∘ ρ⁻¹ ∈ Σ
            if rep_inverses.iter().all(|inv| !sigma.contains(&cand.compose(inv))) {
                if reps.len() >= cap {
                    return Err(PermError::TooManyCosets(cap));
                }
                rep_inverses.push(cand.invert());
                reps.push(cand);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    Ok((sigma.order(), reps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(subgroup_order(&[Perm::identity(24)]).unwrap(), BigUint::one());
        let t = Perm::cycle(24, &[0, 1]);
        assert_eq!(subgroup_order(&[t]).unwrap(), BigUint::from(2u32));
        let gens = [Perm::cycle(6, &[0, 1]), Perm::cycle(6, &[0, 1, 2, 3, 4, 5])];
        assert_eq!(subgroup_order(&gens).unwrap(), factorial(6));
        let gens = [Perm::cycle(7, &[0, 1, 2]), Perm::cycle(7, &[2, 3, 4, 5, 6])];
        assert_eq!(subgroup_order(&gens).unwrap(), factorial(7) / BigUint::from(2u32));
    }

    #[test]
    fn lcm_s4_brute_force() {
        // all 24 elements of S4 by brute force
        let mut all = vec![Perm::identity(4)];
        let gens = [Perm::cycle(4, &[0, 1]), Perm::cycle(4, &[0, 1, 2, 3])];
        let mut i = 0;
        while i < all.len() {
            for g in &gens {
                let p = all[i].then(g);
                if !all.contains(&p) {
                    all.push(p);
                }
            }
            i += 1;
        }
        assert_eq!(all.len(), 24);
        let brute = all.iter().fold(1u64, |acc, p| acc.lcm(&p.order()));
        assert_eq!(lcm_of_orders_sn(4), BigUint::from(brute));
        assert_eq!(brute, 12);
    }

    #[test]
    fn decomposition_round_trip() {
        let p = Perm::from_images(vec![1, 2, 0, 4, 3, 6, 5, 7]);
        let cs = three_cycle_decomposition(&p);
        let mut acc = Perm::identity(8);
        for c in cs {
            acc = acc.then(&Perm::cycle(8, &[c[0] as usize, c[1] as usize, c[2] as usize]));
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn cosets_trivial_cases() {
        let gens = vec![Perm::cycle(5, &[0, 1, 2]), Perm::cycle(5, &[2, 3, 4])];
        let (order, reps) = slice_subgroup_and_cosets(&gens, &gens, 100).unwrap();
        assert_eq!(order, BigUint::from(60u32));
        assert_eq!(reps, vec![Perm::identity(5)]);
        let (order, reps) = slice_subgroup_and_cosets(&gens[..1], &gens, 100).unwrap();
        assert_eq!(order, BigUint::from(3u32));
        assert_eq!(reps.len(), 20);
    }
}
