//! Cells, twists and clusters of the infinite cube.
//!
//! Coordinates range over `-L ∪ {0} ∪ L` extended by `±∞`, with `L` realized
//! as the positive integers. A cell has at least one infinite coordinate; the
//! `home` axis records which face the sticker sits on.

use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("layer {0} does not exist on this cube variant")]
    InvalidLayer(ExtIndex),
    #[error("invalid cell {0}")]
    InvalidCell(String),
    #[error("invalid cluster id {0}")]
    InvalidCluster(String),
    #[error("relation {relation:?} is incompatible with cluster kind {kind:?}")]
    IncompatibleRelation {
        relation: RelationClass,
        kind: ClusterKind,
    },
    #[error("coupled cells exist only on the edged cube")]
    EdgelessVariant,
    #[error("surrogate size {n} exceeds bound {bound}")]
    BoundExceeded { n: u64, bound: u64 },
    #[error("exponent must be 1, 2 or 3, got {0}")]
    InvalidExponent(u8),
}

/// An extended layer index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtIndex {
    NegInf,
    Neg(u64),
    Zero,
    Pos(u64),
    PosInf,
}

impl ExtIndex {
    pub fn neg(self) -> ExtIndex {
        match self {
            ExtIndex::NegInf => ExtIndex::PosInf,
            ExtIndex::Neg(n) => ExtIndex::Pos(n),
            ExtIndex::Zero => ExtIndex::Zero,
            ExtIndex::Pos(n) => ExtIndex::Neg(n),
            ExtIndex::PosInf => ExtIndex::NegInf,
        }
    }

    /// Builds a finite index from a signed integer.
    pub fn from_i64(v: i64) -> ExtIndex {
        match v.cmp(&0) {
            Ordering::Less => ExtIndex::Neg(v.unsigned_abs()),
            Ordering::Equal => ExtIndex::Zero,
            Ordering::Greater => ExtIndex::Pos(v as u64),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtIndex::NegInf | ExtIndex::PosInf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// Magnitude of a finite index (0 for the zero layer).
    pub fn magnitude(self) -> Option<u64> {
        match self {
            ExtIndex::Neg(n) | ExtIndex::Pos(n) => Some(n),
            ExtIndex::Zero => Some(0),
            _ => None,
        }
    }

    /// +1, 0 or -1.
    pub fn signum(self) -> i8 {
        match self {
            ExtIndex::NegInf | ExtIndex::Neg(_) => -1,
            ExtIndex::Zero => 0,
            ExtIndex::Pos(_) | ExtIndex::PosInf => 1,
        }
    }

    pub fn with_sign(self, s: i8) -> ExtIndex {
        if s < 0 {
            self.neg()
        } else {
            self
        }
    }

    fn rank(self) -> (i8, i128) {
        match self {
            ExtIndex::NegInf => (-2, 0),
            ExtIndex::Neg(n) => (0, -(n as i128)),
            ExtIndex::Zero => (0, 0),
            ExtIndex::Pos(n) => (0, n as i128),
            ExtIndex::PosInf => (2, 0),
        }
    }

    fn valid_for(self, v: CubeVariant) -> bool {
        match self {
            ExtIndex::Zero => v.parity == Parity::Odd,
            ExtIndex::Neg(0) | ExtIndex::Pos(0) => false,
            _ => true,
        }
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtIndex::NegInf => write!(f, "-inf"),
            ExtIndex::Neg(n) => write!(f, "-{n}"),
            ExtIndex::Zero => write!(f, "0"),
            ExtIndex::Pos(n) => write!(f, "+{n}"),
            ExtIndex::PosInf => write!(f, "+inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edges {
    Edgeless,
    Edged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeVariant {
    pub parity: Parity,
    pub edges: Edges,
}

impl CubeVariant {
    pub const ODD_EDGELESS: CubeVariant = CubeVariant {
        parity: Parity::Odd,
        edges: Edges::Edgeless,
    };
    pub const EVEN_EDGELESS: CubeVariant = CubeVariant {
        parity: Parity::Even,
        edges: Edges::Edgeless,
    };
    pub const ODD_EDGED: CubeVariant = CubeVariant {
        parity: Parity::Odd,
        edges: Edges::Edged,
    };
    pub const EVEN_EDGED: CubeVariant = CubeVariant {
        parity: Parity::Even,
        edges: Edges::Edged,
    };

    pub const ALL: [CubeVariant; 4] = [
        CubeVariant::ODD_EDGELESS,
        CubeVariant::EVEN_EDGELESS,
        CubeVariant::ODD_EDGED,
        CubeVariant::EVEN_EDGED,
    ];

    pub fn is_odd(self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_edged(self) -> bool {
        self.edges == Edges::Edged
    }
}

impl fmt::Display for CubeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.is_odd() { "odd" } else { "even" };
        let e = if self.is_edged() { "edged" } else { "edgeless" };
        write!(f, "{p} {e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// The two other axes in cyclic order, so that a quarter turn about
    /// `self` sends `j` to `k`.
    fn cyclic_pair(self) -> (usize, usize) {
        match self {
            Axis::X => (1, 2),
            Axis::Y => (2, 0),
            Axis::Z => (0, 1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub c: [ExtIndex; 3],
    pub home: Axis,
}

impl Cell {
    pub fn new(x: ExtIndex, y: ExtIndex, z: ExtIndex, home: Axis) -> Cell {
        Cell {
            c: [x, y, z],
            home,
        }
    }

    /// Cell on the edgeless cube, with the home axis inferred from the
    /// single infinite coordinate.
    pub fn plain(x: ExtIndex, y: ExtIndex, z: ExtIndex) -> Cell {
        let c = [x, y, z];
        let home = (0..3)
            .find(|&i| c[i].is_infinite())
            .map(Axis::from_index)
            .unwrap_or(Axis::Z);
        Cell { c, home }
    }

    pub fn is_valid(&self, v: CubeVariant) -> bool {
        if !self.c.iter().all(|i| i.valid_for(v)) {
            return false;
        }
        let infinite = self.c.iter().filter(|i| i.is_infinite()).count();
        if !self.c[self.home.index()].is_infinite() {
            return false;
        }
        match v.edges {
            Edges::Edgeless => infinite == 1,
            Edges::Edged => infinite >= 1,
        }
    }

    pub fn face(&self) -> Face {
        Face::from_normal(self.home, self.c[self.home.index()].signum())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..3 {
            if i > 0 {
                write!(f, ",")?;
            }
            if i == self.home.index() {
                write!(f, "_{}_", self.c[i])?;
            } else {
                write!(f, "{}", self.c[i])?;
            }
        }
        write!(f, ")")
    }
}

/// A quarter, half or reverse quarter turn of a single layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicTwist {
    pub axis: Axis,
    pub layer: ExtIndex,
    pub exponent: u8,
}

impl BasicTwist {
    pub fn new(axis: Axis, layer: ExtIndex, exponent: u8) -> BasicTwist {
        debug_assert!((1..=3).contains(&exponent));
        BasicTwist {
            axis,
            layer,
            exponent,
        }
    }

    pub fn inverse(self) -> BasicTwist {
        BasicTwist {
            exponent: 4 - self.exponent,
            ..self
        }
    }

    pub fn is_face(self) -> bool {
        self.layer.is_infinite()
    }

    pub fn validate(self, v: CubeVariant) -> Result<(), GeometryError> {
        if !(1..=3).contains(&self.exponent) {
            return Err(GeometryError::InvalidExponent(self.exponent));
        }
        if !self.layer.valid_for(v) {
            return Err(GeometryError::InvalidLayer(self.layer));
        }
        Ok(())
    }
}

impl fmt::Display for BasicTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{}]^{}", self.axis.letter(), self.layer, self.exponent)
    }
}

fn quarter(axis: Axis, cell: Cell) -> Cell {
    let (j, k) = axis.cyclic_pair();
    let mut out = cell;
    out.c[j] = cell.c[k].neg();
    out.c[k] = cell.c[j];
    out.home = if cell.home.index() == j {
        Axis::from_index(k)
    } else if cell.home.index() == k {
        Axis::from_index(j)
    } else {
        cell.home
    };
    out
}

/// Image of a cell under a twist. Cells outside the twisted layer are fixed.
pub fn apply_twist_cell(t: BasicTwist, c: Cell, v: CubeVariant) -> Result<Cell, GeometryError> {
    t.validate(v)?;
    Ok(twist_cell(t, c))
}

/// Unchecked twist action.
pub(crate) fn twist_cell(t: BasicTwist, c: Cell) -> Cell {
    if c.c[t.axis.index()] != t.layer {
        return c;
    }
    let mut out = c;
    for _ in 0..t.exponent {
        out = quarter(t.axis, out);
    }
    out
}

/// A proper rotation of space, stored as a signed axis permutation:
/// `e_i ↦ sign[i]·e_{perm[i]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rotation {
    pub perm: [u8; 3],
    pub sign: [i8; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        perm: [0, 1, 2],
        sign: [1, 1, 1],
    };

    /// Builds the rotation sending the standard basis to the given signed
    /// axes.
    pub const fn from_columns(cols: [(u8, i8); 3]) -> Rotation {
        Rotation {
            perm: [cols[0].0, cols[1].0, cols[2].0],
            sign: [cols[0].1, cols[1].1, cols[2].1],
        }
    }

    /// The quarter turn about an axis, matching the twist convention.
    pub fn quarter(axis: Axis) -> Rotation {
        let (j, k) = axis.cyclic_pair();
        let mut r = Rotation::IDENTITY;
        r.perm[j] = k as u8;
        r.perm[k] = j as u8;
        r.sign[k] = -1;
        r
    }

    pub fn apply_cell(&self, cell: Cell) -> Cell {
        let mut c = [ExtIndex::Zero; 3];
        for i in 0..3 {
            c[self.perm[i] as usize] = cell.c[i].with_sign(self.sign[i]);
        }
        Cell {
            c,
            home: Axis::from_index(self.perm[cell.home.index()] as usize),
        }
    }

    /// Image of a signed axis.
    pub fn apply_axis(&self, axis: Axis, sign: i8) -> (Axis, i8) {
        let i = axis.index();
        (Axis::from_index(self.perm[i] as usize), sign * self.sign[i])
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut r = Rotation::IDENTITY;
        for i in 0..3 {
            let j = other.perm[i] as usize;
            r.perm[i] = self.perm[j];
            r.sign[i] = other.sign[i] * self.sign[j];
        }
        r
    }

    pub fn inverse(&self) -> Rotation {
        let mut r = Rotation::IDENTITY;
        for i in 0..3 {
            let j = self.perm[i] as usize;
            r.perm[j] = i as u8;
            r.sign[j] = self.sign[i];
        }
        r
    }

    fn determinant(&self) -> i8 {
        let p = self.perm;
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let s: i8 = self.sign.iter().product();
        if inversions % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// The 24 proper rotations, identity first.
    pub fn all() -> &'static [Rotation; 24] {
        &ROTATIONS
    }
}

static ROTATIONS: LazyLock<[Rotation; 24]> = LazyLock::new(|| {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for p in perms {
        for bits in 0..8u8 {
            let sign = [
                if bits & 1 == 0 { 1 } else { -1 },
                if bits & 2 == 0 { 1 } else { -1 },
                if bits & 4 == 0 { 1 } else { -1 },
            ];
            let r = Rotation { perm: p, sign };
            if r.determinant() == 1 {
                out.push(r);
            }
        }
    }
    out.try_into().expect("24 proper rotations")
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Right,
    Left,
    Up,
    Down,
    Front,
    Back,
}

impl Face {
    pub const ALL: [Face; 6] = [
        Face::Right,
        Face::Left,
        Face::Up,
        Face::Down,
        Face::Front,
        Face::Back,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_normal(axis: Axis, sign: i8) -> Face {
        match (axis, sign > 0) {
            (Axis::X, true) => Face::Right,
            (Axis::X, false) => Face::Left,
            (Axis::Y, true) => Face::Up,
            (Axis::Y, false) => Face::Down,
            (Axis::Z, true) => Face::Front,
            (Axis::Z, false) => Face::Back,
        }
    }

    pub fn normal(self) -> (Axis, i8) {
        match self {
            Face::Right => (Axis::X, 1),
            Face::Left => (Axis::X, -1),
            Face::Up => (Axis::Y, 1),
            Face::Down => (Axis::Y, -1),
            Face::Front => (Axis::Z, 1),
            Face::Back => (Axis::Z, -1),
        }
    }

    /// The face-local frame `(u, v, n)`: `n` is the outward normal and
    /// `(u, v)` are the in-face coordinate directions.
    pub fn frame(self) -> Rotation {
        match self {
            Face::Right => Rotation::from_columns([(2, -1), (1, 1), (0, 1)]),
            Face::Left => Rotation::from_columns([(2, 1), (1, 1), (0, -1)]),
            Face::Up => Rotation::from_columns([(0, 1), (2, -1), (1, 1)]),
            Face::Down => Rotation::from_columns([(0, 1), (2, 1), (1, -1)]),
            Face::Front => Rotation::from_columns([(0, 1), (1, 1), (2, 1)]),
            Face::Back => Rotation::from_columns([(0, -1), (1, 1), (2, -1)]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Face::Right => "Right",
            Face::Left => "Left",
            Face::Up => "Up",
            Face::Down => "Down",
            Face::Front => "Front",
            Face::Back => "Back",
        }
    }
}

/// Face-local coordinates `(a, b)` of a cell.
pub fn face_coords(c: Cell) -> (Face, ExtIndex, ExtIndex) {
    let face = c.face();
    let local = face.frame().inverse().apply_cell(c);
    (face, local.c[0], local.c[1])
}

/// The cell on `face` with face-local coordinates `(a, b)`.
pub fn cell_at(face: Face, a: ExtIndex, b: ExtIndex) -> Cell {
    face.frame()
        .apply_cell(Cell::new(a, b, ExtIndex::PosInf, Axis::Z))
}

/// One of the 24 face quadrants, `face * 4 + quadrant`; quadrants are
/// (+,+), (−,+), (−,−), (+,−) in face-local coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadrantSlot(pub u8);

impl QuadrantSlot {
    pub fn new(face: Face, quadrant: u8) -> QuadrantSlot {
        QuadrantSlot(face.index() as u8 * 4 + quadrant)
    }

    pub fn face(self) -> Face {
        Face::ALL[(self.0 / 4) as usize]
    }

    pub fn quadrant(self) -> u8 {
        self.0 % 4
    }
}

/// Cluster identifier: the center, or the representative `(rx, ry)` in the
/// Front upper-right quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterId {
    Center,
    Rep { rx: ExtIndex, ry: ExtIndex },
}

impl ClusterId {
    pub fn rep(rx: u64, ry: u64) -> ClusterId {
        ClusterId::Rep {
            rx: ExtIndex::Pos(rx),
            ry: if ry == 0 {
                ExtIndex::Zero
            } else {
                ExtIndex::Pos(ry)
            },
        }
    }

    pub fn is_valid(&self, v: CubeVariant) -> bool {
        match *self {
            ClusterId::Center => v.is_odd(),
            ClusterId::Rep { rx, ry } => {
                let rx_ok = match rx {
                    ExtIndex::Pos(n) => n > 0,
                    ExtIndex::PosInf => v.is_edged(),
                    _ => false,
                };
                let ry_ok = match ry {
                    ExtIndex::Zero => v.is_odd(),
                    ExtIndex::Pos(n) => n > 0,
                    ExtIndex::PosInf => v.is_edged(),
                    _ => false,
                };
                rx_ok && ry_ok
            }
        }
    }

    pub fn kind(&self) -> ClusterKind {
        match *self {
            ClusterId::Center => ClusterKind::Center,
            ClusterId::Rep { rx, ry } => match (rx, ry) {
                (ExtIndex::PosInf, ExtIndex::PosInf) => ClusterKind::Corner,
                (ExtIndex::PosInf, ExtIndex::Zero) => ClusterKind::CrossEdge,
                (ExtIndex::PosInf, _) => ClusterKind::EdgeSide,
                (_, ExtIndex::PosInf) => ClusterKind::EdgeTop,
                (_, ExtIndex::Zero) => ClusterKind::Cross,
                _ if rx == ry => ClusterKind::Diagonal,
                _ => ClusterKind::Generic,
            },
        }
    }

    /// Number of slots (24, or 6 for the center).
    pub fn slot_count(&self) -> usize {
        match self {
            ClusterId::Center => 6,
            _ => 24,
        }
    }
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterId::Center => write!(f, "center"),
            ClusterId::Rep { rx, ry } => write!(f, "C({rx},{ry})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterKind {
    /// `(x, y)` with `0 < y`, `x ≠ y`, both finite.
    Generic,
    /// `(x, 0)`.
    Cross,
    /// `(x, x)`.
    Diagonal,
    Center,
    /// `(x, +∞)`, edged only.
    EdgeTop,
    /// `(+∞, y)`, edged only.
    EdgeSide,
    /// `(+∞, 0)`, odd edged only.
    CrossEdge,
    /// `(+∞, +∞)`, edged only.
    Corner,
}

impl ClusterKind {
    pub const ALL: [ClusterKind; 8] = [
        ClusterKind::Generic,
        ClusterKind::Cross,
        ClusterKind::Diagonal,
        ClusterKind::Center,
        ClusterKind::EdgeTop,
        ClusterKind::EdgeSide,
        ClusterKind::CrossEdge,
        ClusterKind::Corner,
    ];

    fn sample(self) -> ClusterId {
        use ExtIndex::*;
        match self {
            ClusterKind::Generic => ClusterId::rep(2, 1),
            ClusterKind::Cross => ClusterId::rep(1, 0),
            ClusterKind::Diagonal => ClusterId::rep(1, 1),
            ClusterKind::Center => ClusterId::Center,
            ClusterKind::EdgeTop => ClusterId::Rep {
                rx: Pos(1),
                ry: PosInf,
            },
            ClusterKind::EdgeSide => ClusterId::Rep {
                rx: PosInf,
                ry: Pos(1),
            },
            ClusterKind::CrossEdge => ClusterId::Rep {
                rx: PosInf,
                ry: Zero,
            },
            ClusterKind::Corner => ClusterId::Rep {
                rx: PosInf,
                ry: PosInf,
            },
        }
    }
}

/// How a twist's layer relates to a cluster's representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationClass {
    None,
    FacePos,
    FaceNeg,
    SlicePosX,
    SliceNegX,
    SlicePosY,
    SliceNegY,
    SliceZero,
}

impl RelationClass {
    pub const ALL: [RelationClass; 8] = [
        RelationClass::None,
        RelationClass::FacePos,
        RelationClass::FaceNeg,
        RelationClass::SlicePosX,
        RelationClass::SliceNegX,
        RelationClass::SlicePosY,
        RelationClass::SliceNegY,
        RelationClass::SliceZero,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

/// Classifies the layer of `t` against cluster `id`.
pub fn relation_of(t: BasicTwist, id: ClusterId) -> RelationClass {
    let layer = t.layer;
    match layer {
        ExtIndex::PosInf => return RelationClass::FacePos,
        ExtIndex::NegInf => return RelationClass::FaceNeg,
        _ => {}
    }
    match id {
        ClusterId::Center => {
            if layer == ExtIndex::Zero {
                RelationClass::SliceZero
            } else {
                RelationClass::None
            }
        }
        ClusterId::Rep { rx, ry } => {
            if layer == ExtIndex::Zero {
                return if ry == ExtIndex::Zero {
                    RelationClass::SliceZero
                } else {
                    RelationClass::None
                };
            }
            if rx.is_finite() {
                if layer == rx {
                    return RelationClass::SlicePosX;
                }
                if layer == rx.neg() {
                    return RelationClass::SliceNegX;
                }
            }
            if ry.is_finite() && ry != ExtIndex::Zero {
                if layer == ry {
                    return RelationClass::SlicePosY;
                }
                if layer == ry.neg() {
                    return RelationClass::SliceNegY;
                }
            }
            RelationClass::None
        }
    }
}

fn layer_for(relation: RelationClass, id: ClusterId) -> Option<ExtIndex> {
    let (rx, ry) = match id {
        ClusterId::Center => (ExtIndex::PosInf, ExtIndex::Zero),
        ClusterId::Rep { rx, ry } => (rx, ry),
    };
    let diagonal = rx == ry;
    match relation {
        RelationClass::None => None,
        RelationClass::FacePos => Some(ExtIndex::PosInf),
        RelationClass::FaceNeg => Some(ExtIndex::NegInf),
        RelationClass::SlicePosX if rx.is_finite() => Some(rx),
        RelationClass::SliceNegX if rx.is_finite() => Some(rx.neg()),
        RelationClass::SlicePosY if ry.is_finite() && ry != ExtIndex::Zero && !diagonal => {
            Some(ry)
        }
        RelationClass::SliceNegY if ry.is_finite() && ry != ExtIndex::Zero && !diagonal => {
            Some(ry.neg())
        }
        RelationClass::SliceZero if ry == ExtIndex::Zero => Some(ExtIndex::Zero),
        _ => None,
    }
}

/// The cells of a cluster, indexed by slot.
pub fn cells_of_cluster(id: ClusterId) -> Vec<Cell> {
    match id {
        ClusterId::Center => Face::ALL
            .iter()
            .map(|&f| cell_at(f, ExtIndex::Zero, ExtIndex::Zero))
            .collect(),
        ClusterId::Rep { rx, ry } => {
            let rot = Rotation::quarter(Axis::Z);
            let mut out = Vec::with_capacity(24);
            for f in Face::ALL {
                let frame = f.frame();
                let mut local = Cell::new(rx, ry, ExtIndex::PosInf, Axis::Z);
                for _ in 0..4 {
                    out.push(frame.apply_cell(local));
                    local = rot.apply_cell(local);
                }
            }
            out
        }
    }
}

/// Cluster and slot of a cell.
pub fn locate(c: Cell) -> (ClusterId, QuadrantSlot) {
    let (face, a, b) = face_coords(c);
    if a == ExtIndex::Zero && b == ExtIndex::Zero {
        return (ClusterId::Center, QuadrantSlot(face.index() as u8));
    }
    // Rotate back by q quarter turns until the point lands in a > 0, b ≥ 0.
    let (mut a, mut b) = (a, b);
    for q in 0..4u8 {
        if a > ExtIndex::Zero && b >= ExtIndex::Zero {
            return (ClusterId::Rep { rx: a, ry: b }, QuadrantSlot::new(face, q));
        }
        // inverse of (a, b) ↦ (−b, a)
        let (na, nb) = (b, a.neg());
        a = na;
        b = nb;
    }
    unreachable!("every nonzero point lies in one rotated quadrant")
}

pub fn cluster_of(c: Cell, _v: CubeVariant) -> ClusterId {
    locate(c).0
}

type PermTable = Vec<Option<Perm>>;

fn table_index(axis: Axis, exponent: u8, rel: RelationClass, kind: ClusterKind) -> usize {
    ((axis.index() * 3 + (exponent as usize - 1)) * 8 + rel.index()) * 8 + kind as usize
}

fn slot_perm_direct(t: BasicTwist, id: ClusterId) -> Perm {
    let cells = cells_of_cluster(id);
    let img: Vec<u8> = cells
        .iter()
        .map(|&c| {
            let (cid, slot) = locate(twist_cell(t, c));
            debug_assert_eq!(cid, id);
            slot.0
        })
        .collect();
    Perm::from_images(img)
}

static CLUSTER_PERMS: LazyLock<PermTable> = LazyLock::new(|| {
    let mut table = vec![None; 3 * 3 * 8 * 8];
    for axis in Axis::ALL {
        for exponent in 1..=3u8 {
            for rel in RelationClass::ALL {
                for kind in ClusterKind::ALL {
                    let id = kind.sample();
                    let perm = match layer_for(rel, id) {
                        Some(layer) => slot_perm_direct(BasicTwist::new(axis, layer, exponent), id),
                        None if rel == RelationClass::None => Perm::identity(id.slot_count()),
                        None => continue,
                    };
                    table[table_index(axis, exponent, rel, kind)] = Some(perm);
                }
            }
        }
    }
    table
});

/// Slot permutation induced by a twist on any cluster of `kind` whose
/// representative stands in `relation` to the twist's layer. Only the axis
/// and exponent of `t` are used. Images are tile destinations: a tile in
/// slot `s` moves to slot `p[s]`.
pub fn twist_cluster_perm(
    t: BasicTwist,
    relation: RelationClass,
    kind: ClusterKind,
) -> Result<&'static Perm, GeometryError> {
    if !(1..=3).contains(&t.exponent) {
        return Err(GeometryError::InvalidExponent(t.exponent));
    }
    CLUSTER_PERMS[table_index(t.axis, t.exponent, relation, kind)]
        .as_ref()
        .ok_or(GeometryError::IncompatibleRelation { relation, kind })
}

/// Slot permutation of `t` on a concrete cluster.
pub fn cluster_twist_perm(t: BasicTwist, id: ClusterId) -> &'static Perm {
    let rel = relation_of(t, id);
    twist_cluster_perm(t, rel, id.kind()).expect("relation derived from the cluster itself")
}

/// The other stickers of the same physical cubie.
pub fn coupled_cells(c: Cell, v: CubeVariant) -> Result<Vec<Cell>, GeometryError> {
    if !v.is_edged() {
        return Err(GeometryError::EdgelessVariant);
    }
    if !c.is_valid(v) {
        return Err(GeometryError::InvalidCell(c.to_string()));
    }
    Ok((0..3)
        .filter(|&i| i != c.home.index() && c.c[i].is_infinite())
        .map(|i| Cell {
            c: c.c,
            home: Axis::from_index(i),
        })
        .collect())
}

/// Largest surrogate size accepted by [`surrogate_simulate`].
pub const SURROGATE_BOUND: u64 = 8;

/// All cells of the finite cube with `L = {1..n}`.
pub fn surrogate_cells(n: u64, v: CubeVariant) -> Vec<Cell> {
    let mut coords: Vec<ExtIndex> = Vec::new();
    if v.is_edged() {
        coords.push(ExtIndex::NegInf);
    }
    for i in (1..=n).rev() {
        coords.push(ExtIndex::Neg(i));
    }
    if v.is_odd() {
        coords.push(ExtIndex::Zero);
    }
    for i in 1..=n {
        coords.push(ExtIndex::Pos(i));
    }
    if v.is_edged() {
        coords.push(ExtIndex::PosInf);
    }
    let mut out = Vec::new();
    for f in Face::ALL {
        for &a in &coords {
            for &b in &coords {
                out.push(cell_at(f, a, b));
            }
        }
    }
    out
}

/// Applies `seq` to an explicit labelling of the surrogate cube.
pub fn surrogate_simulate<V: Clone>(
    n: u64,
    v: CubeVariant,
    seq: &[BasicTwist],
    initial: &std::collections::HashMap<Cell, V>,
) -> Result<std::collections::HashMap<Cell, V>, GeometryError> {
    surrogate_simulate_bounded(n, SURROGATE_BOUND, v, seq, initial)
}

/// [`surrogate_simulate`] with an explicit size bound.
pub fn surrogate_simulate_bounded<V: Clone>(
    n: u64,
    bound: u64,
    v: CubeVariant,
    seq: &[BasicTwist],
    initial: &std::collections::HashMap<Cell, V>,
) -> Result<std::collections::HashMap<Cell, V>, GeometryError> {
    if n > bound {
        return Err(GeometryError::BoundExceeded { n, bound });
    }
    for t in seq {
        t.validate(v)?;
        if let Some(m) = t.layer.magnitude() {
            if m > n {
                return Err(GeometryError::InvalidLayer(t.layer));
            }
        }
    }
    let mut state = initial.clone();
    for &t in seq {
        let mut next = std::collections::HashMap::with_capacity(state.len());
        for (cell, val) in state {
            next.insert(twist_cell(t, cell), val);
        }
        state = next;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtIndex::*;

    #[test]
    fn documented_twist_images() {
        let v = CubeVariant::ODD_EDGED;
        let (a, b) = (Pos(2), Pos(5));
        let t = BasicTwist::new(Axis::X, a, 1);
        let c = Cell::plain(a, b, PosInf);
        assert_eq!(apply_twist_cell(t, c, v).unwrap(), Cell::plain(a, NegInf, b));
        let t = BasicTwist::new(Axis::X, PosInf, 1);
        let c = Cell::plain(PosInf, a, b);
        assert_eq!(apply_twist_cell(t, c, v).unwrap(), Cell::plain(PosInf, b.neg(), a));
        // the edged face action carries the home tag with the coordinate
        let c = Cell::new(PosInf, b, PosInf, Axis::Z);
        let img = apply_twist_cell(t, c, v).unwrap();
        assert_eq!(img, Cell::new(PosInf, NegInf, b, Axis::Y));
    }

    #[test]
    fn zero_layer_rejected_on_even() {
        let t = BasicTwist::new(Axis::Y, Zero, 1);
        let c = Cell::plain(Pos(1), PosInf, Pos(1));
        assert_eq!(
            apply_twist_cell(t, c, CubeVariant::EVEN_EDGELESS),
            Err(GeometryError::InvalidLayer(Zero))
        );
    }

    #[test]
    fn rotations_are_closed() {
        let all = Rotation::all();
        for a in all {
            for b in all {
                assert!(all.contains(&a.compose(b)));
            }
            assert_eq!(a.compose(&a.inverse()), Rotation::IDENTITY);
        }
        assert_eq!(all[0], Rotation::IDENTITY);
    }

    #[test]
    fn quarter_rotation_matches_twist() {
        for axis in Axis::ALL {
            let r = Rotation::quarter(axis);
            let t = BasicTwist::new(axis, PosInf, 1);
            for c in surrogate_cells(2, CubeVariant::ODD_EDGED) {
                if c.c[axis.index()] == PosInf {
                    assert_eq!(r.apply_cell(c), twist_cell(t, c));
                }
            }
        }
    }

    #[test]
    fn front_face_examples() {
        let c = cell_at(Face::Front, Neg(3), Pos(5));
        assert_eq!(cluster_of(c, CubeVariant::ODD_EDGELESS), ClusterId::rep(5, 3));
        let c = cell_at(Face::Front, Pos(4), Zero);
        assert_eq!(cluster_of(c, CubeVariant::ODD_EDGELESS), ClusterId::rep(4, 0));
        let c = Cell::plain(Zero, Zero, PosInf);
        assert_eq!(cluster_of(c, CubeVariant::ODD_EDGELESS), ClusterId::Center);
    }

    #[test]
    fn diagonal_cluster_cells() {
        let cells = cells_of_cluster(ClusterId::rep(3, 3));
        for c in &cells {
            let (_, a, b) = face_coords(*c);
            assert_eq!(a.magnitude(), Some(3));
            assert_eq!(b.magnitude(), Some(3));
        }
    }

    #[test]
    fn coupled_examples() {
        let v = CubeVariant::ODD_EDGED;
        let c = Cell::new(NegInf, Pos(2), PosInf, Axis::Z);
        assert_eq!(
            coupled_cells(c, v).unwrap(),
            vec![Cell::new(NegInf, Pos(2), PosInf, Axis::X)]
        );
        let c = Cell::new(PosInf, PosInf, PosInf, Axis::Y);
        assert_eq!(coupled_cells(c, v).unwrap().len(), 2);
        let c = Cell::plain(Pos(1), Pos(2), PosInf);
        assert!(coupled_cells(c, v).unwrap().is_empty());
        assert_eq!(
            coupled_cells(c, CubeVariant::ODD_EDGELESS),
            Err(GeometryError::EdgelessVariant)
        );
    }

    #[test]
    fn up_face_quarter_on_generic() {
        let t = BasicTwist::new(Axis::Y, PosInf, 1);
        let p = twist_cluster_perm(t, RelationClass::FacePos, ClusterKind::Generic).unwrap();
        let up: Vec<usize> = (8..12).collect();
        for s in 0..24 {
            if up.contains(&s) {
                assert!(up.contains(&(p.image(s))));
                assert_ne!(p.image(s), s);
            } else {
                assert_eq!(p.image(s), s);
            }
        }
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn incompatible_relations() {
        let t = BasicTwist::new(Axis::X, Pos(1), 1);
        assert!(twist_cluster_perm(t, RelationClass::SliceZero, ClusterKind::Generic).is_err());
        assert!(twist_cluster_perm(t, RelationClass::SlicePosY, ClusterKind::Cross).is_err());
        assert!(twist_cluster_perm(t, RelationClass::SlicePosX, ClusterKind::EdgeSide).is_err());
    }
}
