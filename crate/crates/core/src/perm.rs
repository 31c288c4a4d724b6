//! Permutations of quadrant slots.

use std::fmt;

use num_integer::Integer;

/// A permutation of `{0..n}` stored as its image array. For slot
/// permutations induced by twists, `p[s]` is where the tile in slot `s`
/// ends up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

/// Permutation of the 24 quadrant slots (6 for the center cluster).
pub type QuadrantPerm = Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// Panics if `images` is not a bijection.
    pub fn from_images(images: Vec<u8>) -> Perm {
        Perm::try_from_images(images).expect("not a permutation")
    }

    pub fn try_from_images(images: Vec<u8>) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// The cycle `c[0] → c[1] → … → c[0]` on `n` points.
    pub fn cycle(n: usize, c: &[usize]) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for w in 0..c.len() {
            img[c[w]] = c[(w + 1) % c.len()] as u8;
        }
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Perm) -> Perm {
        next.compose(self)
    }

    pub fn invert(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.image(i);
            }
            out.push(cyc);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Least `n ≥ 1` with `selfⁿ = id`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }

    /// Moves labels along the permutation: `out[p[i]] = values[i]`.
    pub fn act<T: Clone>(&self, values: &[T]) -> Vec<T> {
        let mut out = values.to_vec();
        for (i, v) in values.iter().enumerate() {
            out[self.image(i)] = v.clone();
        }
        out
    }
}

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.compose(q)
}

pub fn invert(p: &Perm) -> Perm {
    p.invert()
}

pub fn parity(p: &Perm) -> Parity {
    p.parity()
}

pub fn element_order(p: &Perm) -> u64 {
    p.order()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let c3 = Perm::cycle(24, &[0, 5, 9]);
        assert_eq!(c3.parity(), Parity::Even);
        assert_eq!(Perm::cycle(24, &[1, 2, 3, 4]).order(), 4);
        assert!(c3.compose(&c3.invert()).is_identity());
        assert_eq!(c3.pow(3), Perm::identity(24));
        assert_eq!(c3.to_string(), "(1 6 10)");
    }

    #[test]
    fn then_is_sequential() {
        let p = Perm::cycle(4, &[0, 1]);
        let q = Perm::cycle(4, &[1, 2]);
        // tile at 0 goes to 1 under p, then to 2 under q
        assert_eq!(p.then(&q).image(0), 2);
        let labels = ['a', 'b', 'c', 'd'];
        assert_eq!(p.then(&q).act(&labels), q.act(&p.act(&labels)));
    }
}
