//! Eventually periodic subsets of the positive integers.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

/// `{n ≥ 1 : n mod M ∈ R} ∪ include ∖ exclude`, kept canonical: `M` is the
/// least period of the residue pattern, `include` is disjoint from the
/// periodic part and `exclude` is contained in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    include: BTreeSet<u64>,
    exclude: BTreeSet<u64>,
}

impl PeriodicSet {
    /// Builds and canonicalizes a set. Zero is ignored in `include`/`exclude`.
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        include: impl IntoIterator<Item = u64>,
        exclude: impl IntoIterator<Item = u64>,
    ) -> PeriodicSet {
        let modulus = modulus.max(1);
        let mut s = PeriodicSet {
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
            include: include.into_iter().filter(|&n| n > 0).collect(),
            exclude: exclude.into_iter().filter(|&n| n > 0).collect(),
        };
        // exclusions win over inclusions when both name a point
        let both: Vec<u64> = s.include.intersection(&s.exclude).copied().collect();
        for n in both {
            s.include.remove(&n);
        }
        s.canonicalize();
        s
    }

    pub fn empty() -> PeriodicSet {
        PeriodicSet::new(1, [], [], [])
    }

    pub fn all() -> PeriodicSet {
        PeriodicSet::new(1, [0], [], [])
    }

    pub fn singleton(n: u64) -> PeriodicSet {
        PeriodicSet::new(1, [], [n], [])
    }

    pub fn finite(items: impl IntoIterator<Item = u64>) -> PeriodicSet {
        PeriodicSet::new(1, [], items, [])
    }

    /// `{n : n ≡ r (mod m)}`.
    pub fn residue_class(m: u64, r: u64) -> PeriodicSet {
        PeriodicSet::new(m, [r], [], [])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn include(&self) -> &BTreeSet<u64> {
        &self.include
    }

    pub fn exclude(&self) -> &BTreeSet<u64> {
        &self.exclude
    }

    fn periodic_contains(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.modulus))
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if self.include.contains(&n) {
            return true;
        }
        self.periodic_contains(n) && !self.exclude.contains(&n)
    }

    fn canonicalize(&mut self) {
        let m = self.modulus;
        let pattern: Vec<bool> = (0..m).map(|r| self.residues.contains(&r)).collect();
        let mut period = m;
        for d in 1..=m {
            if m % d == 0 && (0..m as usize).all(|i| pattern[i] == pattern[i % d as usize]) {
                period = d;
                break;
            }
        }
        self.modulus = period;
        self.residues = (0..period).filter(|&r| pattern[r as usize]).collect();
        let inc: Vec<u64> = self.include.iter().copied().collect();
        for n in inc {
            if self.periodic_contains(n) {
                self.include.remove(&n);
            }
        }
        let exc: Vec<u64> = self.exclude.iter().copied().collect();
        for n in exc {
            if !self.periodic_contains(n) {
                self.exclude.remove(&n);
            }
        }
    }

    fn combine(&self, other: &PeriodicSet, op: impl Fn(bool, bool) -> bool) -> PeriodicSet {
        let m = self.modulus.lcm(&other.modulus);
        let residues = (0..m).filter(|&r| {
            op(
                self.residues.contains(&(r % self.modulus)),
                other.residues.contains(&(r % other.modulus)),
            )
        });
        let residues: BTreeSet<u64> = residues.collect();
        let exceptional: BTreeSet<u64> = self
            .include
            .iter()
            .chain(&self.exclude)
            .chain(&other.include)
            .chain(&other.exclude)
            .copied()
            .collect();
        let mut include = Vec::new();
        let mut exclude = Vec::new();
        for n in exceptional {
            let member = op(self.contains(n), other.contains(n));
            let periodic = residues.contains(&(n % m));
            if member && !periodic {
                include.push(n);
            } else if !member && periodic {
                exclude.push(n);
            }
        }
        PeriodicSet::new(m, residues, include, exclude)
    }

    pub fn union(&self, other: &PeriodicSet) -> PeriodicSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &PeriodicSet) -> PeriodicSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &PeriodicSet) -> PeriodicSet {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement within the positive integers.
    pub fn complement(&self) -> PeriodicSet {
        let residues = (0..self.modulus).filter(|r| !self.residues.contains(r));
        PeriodicSet::new(
            self.modulus,
            residues,
            self.exclude.iter().copied(),
            self.include.iter().copied(),
        )
    }

    /// Elements strictly greater than `n`.
    pub fn above(&self, n: u64) -> PeriodicSet {
        let include = self.include.iter().copied().filter(|&i| i > n);
        let mut exclude: Vec<u64> = self.exclude.iter().copied().collect();
        exclude.extend((1..=n).filter(|&i| self.periodic_contains(i)));
        PeriodicSet::new(self.modulus, self.residues.iter().copied(), include, exclude)
    }

    pub fn is_infinite(&self) -> bool {
        !self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.min().is_none()
    }

    /// Least element.
    pub fn min(&self) -> Option<u64> {
        let inc = self.include.iter().next().copied();
        let per = if self.residues.is_empty() {
            None
        } else {
            (1..).find(|&n| self.periodic_contains(n) && !self.exclude.contains(&n))
        };
        match (inc, per) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Greatest element of a finite set.
    pub fn max(&self) -> Option<u64> {
        if self.is_infinite() {
            None
        } else {
            self.include.iter().next_back().copied()
        }
    }

    /// Number of elements of a finite set.
    pub fn len(&self) -> Option<u64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.include.len() as u64)
        }
    }

    /// Members up to and including `bound`.
    pub fn members_upto(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// Least member strictly greater than `n`.
    pub fn next_after(&self, n: u64) -> Option<u64> {
        let inc = self.include.range(n + 1..).next().copied();
        let per = if self.residues.is_empty() {
            None
        } else {
            (n + 1..).find(|&k| self.periodic_contains(k) && !self.exclude.contains(&k))
        };
        match (inc, per) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Largest number at which membership differs from the pure periodic
    /// pattern (0 when there are no exceptions).
    pub fn exception_bound(&self) -> u64 {
        self.include
            .iter()
            .chain(&self.exclude)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

fn join(items: impl IntoIterator<Item = u64>) -> String {
    items
        .into_iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {} res {}", self.modulus, join(self.residues.iter().copied()))?;
        write!(f, " include {}", join(self.include.iter().copied()))?;
        write!(f, " exclude {}", join(self.exclude.iter().copied()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_coincide() {
        let a = PeriodicSet::new(4, [1, 3], [], []);
        let b = PeriodicSet::residue_class(2, 1);
        assert_eq!(a, b);
        let c = PeriodicSet::new(2, [1], [3], [5]);
        assert_eq!(c, PeriodicSet::new(2, [1], [], [5]));
        assert!(!c.contains(5));
        assert!(c.contains(7));
    }

    #[test]
    fn basic_queries() {
        let odd = PeriodicSet::residue_class(2, 1);
        assert_eq!(odd.min(), Some(1));
        assert_eq!(odd.above(4).min(), Some(5));
        assert_eq!(odd.complement(), PeriodicSet::residue_class(2, 0));
        let f = PeriodicSet::finite([3, 9]);
        assert_eq!(f.max(), Some(9));
        assert_eq!(f.len(), Some(2));
        assert!(PeriodicSet::empty().is_empty());
        assert_eq!(PeriodicSet::all().complement(), PeriodicSet::empty());
        assert_eq!(f.next_after(3), Some(9));
        assert_eq!(odd.next_after(3), Some(5));
    }

    #[test]
    fn display() {
        let s = PeriodicSet::new(3, [0, 2], [4], [6]);
        assert_eq!(s.to_string(), "mod 3 res 0,2 include 4 exclude 6");
    }
}
