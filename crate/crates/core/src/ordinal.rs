//! Ordinals below ω³ in Cantor normal form.

use std::fmt;
use std::ops::Add;

/// `ω²·c2 + ω·c1 + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OrdinalLen {
    pub c2: u64,
    pub c1: u64,
    pub c0: u64,
}

impl OrdinalLen {
    pub const ZERO: OrdinalLen = OrdinalLen::new(0, 0, 0);
    pub const OMEGA: OrdinalLen = OrdinalLen::new(0, 1, 0);
    pub const OMEGA_SQUARED: OrdinalLen = OrdinalLen::new(1, 0, 0);

    pub const fn new(c2: u64, c1: u64, c0: u64) -> OrdinalLen {
        OrdinalLen { c2, c1, c0 }
    }

    pub const fn finite(n: u64) -> OrdinalLen {
        OrdinalLen::new(0, 0, n)
    }

    pub fn is_zero(self) -> bool {
        self == OrdinalLen::ZERO
    }

    pub fn is_finite(self) -> bool {
        self.c2 == 0 && self.c1 == 0
    }

    /// `self · ω`; `None` when the result would reach ω³.
    pub fn times_omega(self) -> Option<OrdinalLen> {
        if self.c2 > 0 {
            None
        } else if self.c1 > 0 {
            Some(OrdinalLen::OMEGA_SQUARED)
        } else if self.c0 > 0 {
            Some(OrdinalLen::OMEGA)
        } else {
            Some(OrdinalLen::ZERO)
        }
    }

    /// `self · n` for a natural number `n`.
    pub fn times(self, n: u64) -> OrdinalLen {
        if n == 0 {
            OrdinalLen::ZERO
        } else if self.c2 > 0 {
            OrdinalLen::new(self.c2 * n, self.c1, self.c0)
        } else if self.c1 > 0 {
            OrdinalLen::new(0, self.c1 * n, self.c0)
        } else {
            OrdinalLen::finite(self.c0 * n)
        }
    }
}

impl Add for OrdinalLen {
    type Output = OrdinalLen;

    /// Ordinal addition: a later infinite summand absorbs lower terms on
    /// its left.
    fn add(self, rhs: OrdinalLen) -> OrdinalLen {
        if rhs.c2 > 0 {
            OrdinalLen::new(self.c2 + rhs.c2, rhs.c1, rhs.c0)
        } else if rhs.c1 > 0 {
            OrdinalLen::new(self.c2, self.c1 + rhs.c1, rhs.c0)
        } else {
            OrdinalLen::new(self.c2, self.c1, self.c0 + rhs.c0)
        }
    }
}

impl PartialOrd for OrdinalLen {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalLen {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.c2, self.c1, self.c0).cmp(&(other.c2, other.c1, other.c0))
    }
}

impl fmt::Display for OrdinalLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.c2 {
            0 => {}
            1 => parts.push("ω²".to_string()),
            c => parts.push(format!("ω²·{c}")),
        }
        match self.c1 {
            0 => {}
            1 => parts.push("ω".to_string()),
            c => parts.push(format!("ω·{c}")),
        }
        if self.c0 > 0 || parts.is_empty() {
            parts.push(self.c0.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorption() {
        let n = OrdinalLen::finite(5);
        assert_eq!(n + OrdinalLen::OMEGA, OrdinalLen::OMEGA);
        assert_eq!(OrdinalLen::OMEGA + n, OrdinalLen::new(0, 1, 5));
        assert_eq!(
            OrdinalLen::OMEGA + OrdinalLen::OMEGA_SQUARED,
            OrdinalLen::OMEGA_SQUARED
        );
        assert_eq!(OrdinalLen::new(0, 2, 3).times_omega(), Some(OrdinalLen::OMEGA_SQUARED));
        assert_eq!(OrdinalLen::OMEGA_SQUARED.times_omega(), None);
        assert_eq!(OrdinalLen::new(1, 0, 2).to_string(), "ω² + 2");
        let a = OrdinalLen::new(0, 2, 3);
        assert_eq!(a.times(3), a + a + a);
        assert_eq!(OrdinalLen::finite(4).times(5), OrdinalLen::finite(20));
    }
}
