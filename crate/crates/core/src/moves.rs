//! Slice and face move types and cluster move solutions.

use std::fmt;

use crate::geometry::{Axis, BasicTwist, ExtIndex, Face, Rotation};

/// One of the twelve slice types: the twist `T_{axis, sign·n}^exponent` at
/// index `n` (quarter or reverse quarter turns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceType {
    pub axis: Axis,
    pub sign: i8,
    pub exponent: u8,
}

impl SliceType {
    pub fn new(axis: Axis, sign: i8, exponent: u8) -> SliceType {
        SliceType {
            axis,
            sign,
            exponent,
        }
    }

    /// The twist at index `n`; `n = 0` is the zero layer whatever the sign.
    pub fn at(self, n: u64) -> BasicTwist {
        let layer = if n == 0 {
            ExtIndex::Zero
        } else {
            ExtIndex::Pos(n).with_sign(self.sign)
        };
        BasicTwist::new(self.axis, layer, self.exponent)
    }

    pub fn inverse(self) -> SliceType {
        SliceType {
            exponent: 4 - self.exponent,
            ..self
        }
    }

    pub fn conjugate(self, g: &Rotation) -> SliceType {
        let (axis, s) = g.apply_axis(self.axis, 1);
        SliceType {
            axis,
            sign: self.sign * s,
            exponent: if s > 0 {
                self.exponent
            } else {
                4 - self.exponent
            },
        }
    }

    /// All twelve quarter-turn slice types.
    pub fn all() -> Vec<SliceType> {
        let mut out = Vec::new();
        for axis in Axis::ALL {
            for sign in [1, -1] {
                for exponent in [1, 3] {
                    out.push(SliceType::new(axis, sign, exponent));
                }
            }
        }
        out
    }
}

impl fmt::Display for SliceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{}{}{}", self.axis.letter(), s, self.exponent)
    }
}

/// A face move type: `T_{axis, sign·∞}^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceType {
    pub face: Face,
    pub exponent: u8,
}

impl FaceType {
    pub fn new(face: Face, exponent: u8) -> FaceType {
        FaceType { face, exponent }
    }

    pub fn twist(self) -> BasicTwist {
        let (axis, sign) = self.face.normal();
        BasicTwist::new(axis, ExtIndex::PosInf.with_sign(sign), self.exponent)
    }

    pub fn conjugate(self, g: &Rotation) -> FaceType {
        let (axis, sign) = self.face.normal();
        let (a2, s2) = g.apply_axis(axis, sign);
        let flip = s2 * sign;
        FaceType {
            face: Face::from_normal(a2, s2),
            exponent: if flip > 0 {
                self.exponent
            } else {
                4 - self.exponent
            },
        }
    }
}

/// A slice type, a face type, or the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveType {
    Slice(SliceType),
    Face(FaceType),
    Identity,
}

/// A cluster move solution: `k` triples of (slice type at `x`, slice type
/// at `y`, face type), `None` standing for the identity type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterMoveSolution {
    pub a: Vec<Option<SliceType>>,
    pub b: Vec<Option<SliceType>>,
    pub c: Vec<Option<FaceType>>,
}

/// Which of the three type sequences to keep when instantiating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parts {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl Parts {
    pub const ALL: Parts = Parts {
        a: true,
        b: true,
        c: true,
    };
}

impl ClusterMoveSolution {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn push(&mut self, a: Option<SliceType>, b: Option<SliceType>, c: Option<FaceType>) {
        self.a.push(a);
        self.b.push(b);
        self.c.push(c);
    }

    pub fn extend(&mut self, other: &ClusterMoveSolution) {
        self.a.extend(other.a.iter().copied());
        self.b.extend(other.b.iter().copied());
        self.c.extend(other.c.iter().copied());
    }

    pub fn conjugate(&self, g: &Rotation) -> ClusterMoveSolution {
        ClusterMoveSolution {
            a: self.a.iter().map(|t| t.map(|t| t.conjugate(g))).collect(),
            b: self.b.iter().map(|t| t.map(|t| t.conjugate(g))).collect(),
            c: self.c.iter().map(|t| t.map(|t| t.conjugate(g))).collect(),
        }
    }

    /// The twist sequence at representative `(x, y)`.
    pub fn instantiate(&self, x: u64, y: u64) -> Vec<BasicTwist> {
        self.instantiate_parts(x, y, Parts::ALL)
    }

    pub fn instantiate_parts(&self, x: u64, y: u64, parts: Parts) -> Vec<BasicTwist> {
        let mut out = Vec::new();
        for i in 0..self.k() {
            if parts.a {
                if let Some(t) = self.a[i] {
                    out.push(t.at(x));
                }
            }
            if parts.b {
                if let Some(t) = self.b[i] {
                    out.push(t.at(y));
                }
            }
            if parts.c {
                if let Some(t) = self.c[i] {
                    out.push(t.twist());
                }
            }
        }
        out
    }
}
