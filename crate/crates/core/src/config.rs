//! Finitely presented configurations of the infinite cube.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::geometry::{
    cluster_twist_perm, cells_of_cluster, face_coords, BasicTwist, ClusterId, CubeVariant, ExtIndex,
    Face, GeometryError, Rotation,
};
use crate::periodic::PeriodicSet;
use crate::perm::{Parity, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("no class contains index {0}")]
    UnresolvedClass(u64),
    #[error("no table entry for {0}")]
    MissingEntry(String),
    #[error("cluster {0} is not valid for this variant")]
    InvalidCluster(ClusterId),
    #[error("color multisets differ")]
    NotMatchable,
    #[error("configuration is not standard")]
    NotStandard,
    #[error("superflips are defined on the odd edgeless cube only")]
    UnsupportedVariant,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    White,
    Green,
    Orange,
    Yellow,
    Blue,
    NaC,
}

impl Color {
    pub const FACE_COLORS: [Color; 6] = [
        Color::Red,
        Color::White,
        Color::Green,
        Color::Orange,
        Color::Yellow,
        Color::Blue,
    ];

    pub fn of_face(face: Face) -> Color {
        match face {
            Face::Right => Color::Red,
            Face::Left => Color::Orange,
            Face::Up => Color::Blue,
            Face::Down => Color::Green,
            Face::Front => Color::White,
            Face::Back => Color::Yellow,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::White => 'W',
            Color::Green => 'G',
            Color::Orange => 'O',
            Color::Yellow => 'Y',
            Color::Blue => 'B',
            Color::NaC => 'N',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        Some(match c {
            'R' => Color::Red,
            'W' => Color::White,
            'G' => Color::Green,
            'O' => Color::Orange,
            'Y' => Color::Yellow,
            'B' => Color::Blue,
            'N' => Color::NaC,
            _ => return None,
        })
    }
}

/// Colors of a cluster's slots (24 entries, 6 for the center).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterColoring(pub Vec<Color>);

impl ClusterColoring {
    /// Solved coloring of a 24-slot cluster.
    pub fn solved() -> ClusterColoring {
        ClusterColoring(
            (0..24)
                .map(|s| Color::of_face(Face::ALL[s / 4]))
                .collect(),
        )
    }

    pub fn solved_center() -> ClusterColoring {
        ClusterColoring(Face::ALL.iter().map(|&f| Color::of_face(f)).collect())
    }

    pub fn solved_for(id: ClusterId) -> ClusterColoring {
        match id {
            ClusterId::Center => ClusterColoring::solved_center(),
            _ => ClusterColoring::solved(),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn permuted(&self, p: &Perm) -> ClusterColoring {
        ClusterColoring(p.act(&self.0))
    }

    pub fn is_legal(&self) -> bool {
        !self.0.contains(&Color::NaC)
    }

    /// Four slots of each of the six colors.
    pub fn is_four_of_each(&self) -> bool {
        self.0.len() == 24
            && Color::FACE_COLORS
                .iter()
                .all(|c| self.0.iter().filter(|&&x| x == *c).count() == 4)
    }

    /// Every face's four slots share a color.
    pub fn is_face_invariant(&self) -> bool {
        if self.0.len() != 24 {
            return true;
        }
        self.0.chunks(4).all(|f| f.iter().all(|&c| c == f[0]))
    }

    /// The center shows a global rotation of the solved center.
    pub fn is_center_rotation(&self) -> bool {
        center_rotation(self).is_some()
    }

    pub fn letters(&self) -> String {
        self.0.iter().map(|c| c.letter()).collect()
    }

    pub fn from_letters(s: &str) -> Option<ClusterColoring> {
        s.chars()
            .map(Color::from_letter)
            .collect::<Option<Vec<_>>>()
            .map(ClusterColoring)
    }
}

/// A rotation `G` with `center[G(F)] = color(F)` for every face, if any.
pub fn center_rotation(center: &ClusterColoring) -> Option<Rotation> {
    if center.0.len() != 6 {
        return None;
    }
    Rotation::all().iter().copied().find(|g| {
        Face::ALL.iter().all(|&f| {
            let (axis, sign) = f.normal();
            let (a2, s2) = g.apply_axis(axis, sign);
            center.0[Face::from_normal(a2, s2).index()] == Color::of_face(f)
        })
    })
}

/// The second coordinate of a table key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Zero,
    Class(usize),
    Inf,
}

/// Order relation between the two representative coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Eq,
    Gt,
}

/// Table key: classes of `rx` and `ry` plus their order relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub x: Coord,
    pub y: Coord,
    pub rel: Rel,
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |c: Coord| match c {
            Coord::Zero => "zero".to_string(),
            Coord::Inf => "inf".to_string(),
            Coord::Class(i) => format!("k{i}"),
        };
        let r = match self.rel {
            Rel::Lt => "lt",
            Rel::Eq => "eq",
            Rel::Gt => "gt",
        };
        write!(f, "{} {} {}", c(self.x), c(self.y), r)
    }
}

/// A configuration given by a finite partition of the positive integers into
/// eventually periodic classes and one cluster coloring per realizable key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedConfiguration {
    pub variant: CubeVariant,
    classes: Vec<PeriodicSet>,
    table: BTreeMap<Key, ClusterColoring>,
    center: Option<ClusterColoring>,
}

fn rel_of(a: ExtIndex, b: ExtIndex) -> Rel {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Rel::Lt,
        std::cmp::Ordering::Equal => Rel::Eq,
        std::cmp::Ordering::Greater => Rel::Gt,
    }
}

impl PresentedConfiguration {
    /// Builds a configuration from classes and a coloring rule. Classes are
    /// put into canonical order (by least element) and empty classes dropped
    /// before the rule is consulted.
    pub fn from_rule(
        variant: CubeVariant,
        classes: Vec<PeriodicSet>,
        mut rule: impl FnMut(&[PeriodicSet], Key) -> ClusterColoring,
        center: Option<ClusterColoring>,
    ) -> PresentedConfiguration {
        let mut classes: Vec<PeriodicSet> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        classes.sort_by_key(|c| c.min());
        let keys = realizable_keys(variant, &classes);
        let table = keys.into_iter().map(|k| (k, rule(&classes, k))).collect();
        PresentedConfiguration {
            variant,
            classes,
            table,
            center: if variant.is_odd() { center } else { None },
        }
    }

    /// Assembles a configuration from raw parts, checking totality.
    pub fn from_parts(
        variant: CubeVariant,
        classes: Vec<PeriodicSet>,
        table: BTreeMap<Key, ClusterColoring>,
        center: Option<ClusterColoring>,
    ) -> Result<PresentedConfiguration, ConfigError> {
        let cfg = PresentedConfiguration {
            variant,
            classes,
            table,
            center,
        };
        cfg.check_totality()?;
        Ok(cfg)
    }

    fn check_totality(&self) -> Result<(), ConfigError> {
        let mut union = PeriodicSet::empty();
        for c in &self.classes {
            if !union.intersect(c).is_empty() {
                return Err(ConfigError::MissingEntry("overlapping classes".into()));
            }
            union = union.union(c);
        }
        if union != PeriodicSet::all() {
            let missing = union.complement().min().unwrap_or(0);
            return Err(ConfigError::UnresolvedClass(missing));
        }
        for k in realizable_keys(self.variant, &self.classes) {
            match self.table.get(&k) {
                Some(c) if c.len() == 24 => {}
                _ => return Err(ConfigError::MissingEntry(k.to_string())),
            }
        }
        if self.variant.is_odd() != self.center.is_some() {
            return Err(ConfigError::MissingEntry("center".into()));
        }
        if let Some(c) = &self.center {
            if c.len() != 6 {
                return Err(ConfigError::MissingEntry("center".into()));
            }
        }
        Ok(())
    }

    pub fn classes(&self) -> &[PeriodicSet] {
        &self.classes
    }

    pub fn table(&self) -> &BTreeMap<Key, ClusterColoring> {
        &self.table
    }

    pub fn center(&self) -> Option<&ClusterColoring> {
        self.center.as_ref()
    }

    pub fn class_of(&self, n: u64) -> Result<usize, ConfigError> {
        self.classes
            .iter()
            .position(|c| c.contains(n))
            .ok_or(ConfigError::UnresolvedClass(n))
    }

    pub fn key_of(&self, id: ClusterId) -> Result<Key, ConfigError> {
        let ClusterId::Rep { rx, ry } = id else {
            return Err(ConfigError::InvalidCluster(id));
        };
        let coord = |e: ExtIndex| -> Result<Coord, ConfigError> {
            Ok(match e {
                ExtIndex::Zero => Coord::Zero,
                ExtIndex::PosInf => Coord::Inf,
                ExtIndex::Pos(n) => Coord::Class(self.class_of(n)?),
                _ => return Err(ConfigError::InvalidCluster(id)),
            })
        };
        Ok(Key {
            x: coord(rx)?,
            y: coord(ry)?,
            rel: rel_of(rx, ry),
        })
    }

    pub fn cluster_coloring_at(&self, id: ClusterId) -> Result<ClusterColoring, ConfigError> {
        if !id.is_valid(self.variant) {
            return Err(ConfigError::InvalidCluster(id));
        }
        if id == ClusterId::Center {
            return self
                .center
                .clone()
                .ok_or_else(|| ConfigError::MissingEntry("center".into()));
        }
        let key = self.key_of(id)?;
        self.table
            .get(&key)
            .cloned()
            .ok_or_else(|| ConfigError::MissingEntry(key.to_string()))
    }

    /// A concrete cluster governed by `key`.
    pub fn witness(&self, key: Key) -> Option<ClusterId> {
        witness_for(&self.classes, key)
    }

    /// Splits every class along each of `sets`.
    pub fn refine(&self, sets: &[PeriodicSet]) -> PresentedConfiguration {
        let mut pieces: Vec<(PeriodicSet, usize)> = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        for s in sets {
            let mut next = Vec::new();
            for (c, parent) in pieces {
                let inside = c.intersect(s);
                let outside = c.difference(s);
                for piece in [inside, outside] {
                    if !piece.is_empty() {
                        next.push((piece, parent));
                    }
                }
            }
            pieces = next;
        }
        pieces.sort_by_key(|(c, _)| c.min());
        let parents: Vec<usize> = pieces.iter().map(|(_, p)| *p).collect();
        let classes: Vec<PeriodicSet> = pieces.into_iter().map(|(c, _)| c).collect();
        let lift = |c: Coord| match c {
            Coord::Class(i) => Coord::Class(parents[i]),
            other => other,
        };
        let table = realizable_keys(self.variant, &classes)
            .into_iter()
            .map(|k| {
                let parent = Key {
                    x: lift(k.x),
                    y: lift(k.y),
                    rel: k.rel,
                };
                (k, self.table[&parent].clone())
            })
            .collect();
        PresentedConfiguration {
            variant: self.variant,
            classes,
            table,
            center: self.center.clone(),
        }
    }

    /// Replaces every entry (and the center) by `f(witness, coloring)`.
    pub fn map_entries(
        &self,
        mut f: impl FnMut(ClusterId, &ClusterColoring) -> ClusterColoring,
    ) -> PresentedConfiguration {
        let table = self
            .table
            .iter()
            .map(|(k, c)| {
                let w = witness_for(&self.classes, *k).expect("realizable key");
                (*k, f(w, c))
            })
            .collect();
        PresentedConfiguration {
            variant: self.variant,
            classes: self.classes.clone(),
            table,
            center: self.center.as_ref().map(|c| f(ClusterId::Center, c)),
        }
    }

    /// Every concrete cluster with coordinates at most `n` (finite only).
    pub fn window_clusters(&self, n: u64) -> Vec<ClusterId> {
        window_clusters(self.variant, n)
    }

    pub fn is_standard(&self) -> bool {
        self.table.values().all(|c| c.is_four_of_each())
            && self.center.as_ref().is_none_or(|c| c.is_center_rotation())
    }

    pub fn is_face_invariant(&self) -> bool {
        self.table.values().all(|c| c.is_face_invariant())
    }

    pub fn is_legal(&self) -> bool {
        self.table.values().all(|c| c.is_legal())
            && self.center.as_ref().is_none_or(|c| c.is_legal())
    }
}

/// Clusters with coordinates at most `n`, including edge clusters on the
/// edged cube and the center on the odd cube.
pub fn window_clusters(v: CubeVariant, n: u64) -> Vec<ClusterId> {
    let mut out = Vec::new();
    if v.is_odd() {
        out.push(ClusterId::Center);
    }
    let mut xs: Vec<ExtIndex> = (1..=n).map(ExtIndex::Pos).collect();
    let mut ys: Vec<ExtIndex> = Vec::new();
    if v.is_odd() {
        ys.push(ExtIndex::Zero);
    }
    ys.extend((1..=n).map(ExtIndex::Pos));
    if v.is_edged() {
        xs.push(ExtIndex::PosInf);
        ys.push(ExtIndex::PosInf);
    }
    for &rx in &xs {
        for &ry in &ys {
            out.push(ClusterId::Rep { rx, ry });
        }
    }
    out
}

fn pair_nonempty(a: &PeriodicSet, b: &PeriodicSet, rel: Rel) -> bool {
    match rel {
        Rel::Eq => false,
        Rel::Lt => match (a.min(), b.is_infinite(), b.max()) {
            (Some(_), true, _) => true,
            (Some(m), false, Some(bm)) => bm > m,
            _ => false,
        },
        Rel::Gt => pair_nonempty(b, a, Rel::Lt),
    }
}

/// All keys that govern at least one concrete cluster.
pub fn realizable_keys(v: CubeVariant, classes: &[PeriodicSet]) -> Vec<Key> {
    let mut keys = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        if a.is_empty() {
            continue;
        }
        if v.is_odd() {
            keys.push(Key {
                x: Coord::Class(i),
                y: Coord::Zero,
                rel: Rel::Gt,
            });
        }
        for (j, b) in classes.iter().enumerate() {
            if i == j {
                keys.push(Key {
                    x: Coord::Class(i),
                    y: Coord::Class(i),
                    rel: Rel::Eq,
                });
            }
            for rel in [Rel::Lt, Rel::Gt] {
                if pair_nonempty(a, b, rel) {
                    keys.push(Key {
                        x: Coord::Class(i),
                        y: Coord::Class(j),
                        rel,
                    });
                }
            }
        }
        if v.is_edged() {
            keys.push(Key {
                x: Coord::Class(i),
                y: Coord::Inf,
                rel: Rel::Lt,
            });
            keys.push(Key {
                x: Coord::Inf,
                y: Coord::Class(i),
                rel: Rel::Gt,
            });
        }
    }
    if v.is_edged() {
        if v.is_odd() {
            keys.push(Key {
                x: Coord::Inf,
                y: Coord::Zero,
                rel: Rel::Gt,
            });
        }
        keys.push(Key {
            x: Coord::Inf,
            y: Coord::Inf,
            rel: Rel::Eq,
        });
    }
    keys.sort();
    keys
}

/// The least concrete cluster governed by `key`.
pub fn witness_for(classes: &[PeriodicSet], key: Key) -> Option<ClusterId> {
    let class = |c: Coord| match c {
        Coord::Class(i) => classes.get(i),
        _ => None,
    };
    let pos = ExtIndex::Pos;
    let (rx, ry) = match (key.x, key.y, key.rel) {
        (Coord::Class(_), Coord::Zero, _) => (pos(class(key.x)?.min()?), ExtIndex::Zero),
        (Coord::Class(_), Coord::Inf, _) => (pos(class(key.x)?.min()?), ExtIndex::PosInf),
        (Coord::Inf, Coord::Class(_), _) => (ExtIndex::PosInf, pos(class(key.y)?.min()?)),
        (Coord::Inf, Coord::Zero, _) => (ExtIndex::PosInf, ExtIndex::Zero),
        (Coord::Inf, Coord::Inf, _) => (ExtIndex::PosInf, ExtIndex::PosInf),
        (Coord::Class(_), Coord::Class(_), Rel::Eq) => {
            let m = class(key.x)?.min()?;
            (pos(m), pos(m))
        }
        (Coord::Class(_), Coord::Class(_), Rel::Lt) => {
            let x = class(key.x)?.min()?;
            (pos(x), pos(class(key.y)?.next_after(x)?))
        }
        (Coord::Class(_), Coord::Class(_), Rel::Gt) => {
            let y = class(key.y)?.min()?;
            (pos(class(key.x)?.next_after(y)?), pos(y))
        }
        _ => return None,
    };
    Some(ClusterId::Rep { rx, ry })
}

/// The solved configuration: one class, every cluster solved.
pub fn solved_config(v: CubeVariant) -> PresentedConfiguration {
    PresentedConfiguration::from_rule(
        v,
        vec![PeriodicSet::all()],
        |_, _| ClusterColoring::solved(),
        Some(ClusterColoring::solved_center()),
    )
}

/// Applies a finite twist sequence exactly.
pub fn apply_finite_sequence(
    cfg: &PresentedConfiguration,
    seq: &[BasicTwist],
) -> Result<PresentedConfiguration, ConfigError> {
    for t in seq {
        t.validate(cfg.variant)?;
    }
    let touched: Vec<PeriodicSet> = seq
        .iter()
        .filter_map(|t| t.layer.magnitude().filter(|&m| m > 0))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(PeriodicSet::singleton)
        .collect();
    let refined = cfg.refine(&touched);
    Ok(refined.map_entries(|id, c| {
        seq.iter()
            .fold(c.clone(), |acc, &t| acc.permuted(cluster_twist_perm(t, id)))
    }))
}

/// An even permutation `π` with `target[s] = reference[π(s)]` for all slots.
pub fn coloring_as_even_perm(
    target: &ClusterColoring,
    reference: &ClusterColoring,
) -> Result<Perm, ConfigError> {
    let n = target.len();
    if reference.len() != n {
        return Err(ConfigError::NotMatchable);
    }
    let mut used = vec![false; n];
    let mut img = Vec::with_capacity(n);
    for s in 0..n {
        let r = (0..n)
            .find(|&r| !used[r] && reference.0[r] == target.0[s])
            .ok_or(ConfigError::NotMatchable)?;
        used[r] = true;
        img.push(r as u8);
    }
    let mut pi = Perm::from_images(img);
    if pi.parity() == Parity::Odd {
        let pair = (0..n).find_map(|a| ((a + 1)..n).find(|&b| target.0[a] == target.0[b]).map(|b| (a, b)));
        let (a, b) = pair.ok_or(ConfigError::NotMatchable)?;
        pi = pi.compose(&Perm::cycle(n, &[a, b]));
    }
    Ok(pi)
}

/// Which superflip to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperflipKind {
    Omega,
    OmegaStar,
}

/// Coloring in which every tile shows the color of the face across its
/// nearest edge (`reversed`: across the edge of the smaller coordinate).
fn flipped_coloring(id: ClusterId, reversed: bool) -> ClusterColoring {
    let colors = cells_of_cluster(id)
        .into_iter()
        .map(|cell| {
            let (face, a, b) = face_coords(cell);
            let frame = face.frame();
            let ma = a.magnitude().unwrap_or(0);
            let mb = b.magnitude().unwrap_or(0);
            let along_u = if mb == 0 || ma == 0 {
                ma > mb
            } else {
                (ma > mb) != reversed
            };
            let (axis, sign) = if along_u {
                frame.apply_axis(crate::geometry::Axis::X, a.signum())
            } else {
                frame.apply_axis(crate::geometry::Axis::Y, b.signum())
            };
            Color::of_face(Face::from_normal(axis, sign))
        })
        .collect();
    ClusterColoring(colors)
}

/// The ω- and ω*-superflips of the odd edgeless cube.
pub fn superflip_config(kind: SuperflipKind) -> PresentedConfiguration {
    let odd = PeriodicSet::residue_class(2, 1);
    let even = PeriodicSet::residue_class(2, 0);
    let reversed = kind == SuperflipKind::OmegaStar;
    PresentedConfiguration::from_rule(
        CubeVariant::ODD_EDGELESS,
        vec![odd, even],
        |classes, key| {
            let w = witness_for(classes, key).expect("realizable key");
            let ClusterId::Rep { rx, ry } = w else {
                unreachable!()
            };
            let x = rx.magnitude().unwrap_or(0);
            let y = ry.magnitude().unwrap_or(0);
            let flip = if y == 0 {
                (x % 2 == 1) != reversed
            } else {
                x != y && (x + y) % 2 == 1
            };
            if flip {
                flipped_coloring(w, reversed)
            } else {
                ClusterColoring::solved()
            }
        },
        Some(ClusterColoring::solved_center()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Axis;

    #[test]
    fn solved_predicates() {
        for v in CubeVariant::ALL {
            let s = solved_config(v);
            assert!(s.is_standard() && s.is_face_invariant() && s.is_legal());
        }
    }

    #[test]
    fn one_slice_twist_breaks_face_invariance() {
        let s = solved_config(CubeVariant::ODD_EDGELESS);
        let t = BasicTwist::new(Axis::X, ExtIndex::Pos(1), 1);
        let c = apply_finite_sequence(&s, &[t]).unwrap();
        assert!(c.is_standard());
        assert!(!c.is_face_invariant());
        assert_eq!(c.classes().len(), 2);
    }

    #[test]
    fn quarter_twist_four_times_is_identity() {
        let s = solved_config(CubeVariant::EVEN_EDGED);
        let t = BasicTwist::new(Axis::Z, ExtIndex::Pos(2), 1);
        let c = apply_finite_sequence(&s, &[t, t, t, t]).unwrap();
        for id in c.window_clusters(4) {
            assert_eq!(c.cluster_coloring_at(id).unwrap(), s.cluster_coloring_at(id).unwrap());
        }
    }

    #[test]
    fn superflips_are_standard_and_distinct() {
        let a = superflip_config(SuperflipKind::Omega);
        let b = superflip_config(SuperflipKind::OmegaStar);
        assert!(a.is_standard() && b.is_standard());
        assert!(!a.is_face_invariant());
        assert_ne!(a, b);
        // diagonals of the Front face stay white
        for n in 1..6 {
            let c = a.cluster_coloring_at(ClusterId::rep(n, n)).unwrap();
            assert!(c.0[16..20].iter().all(|&x| x == Color::White));
        }
    }

    #[test]
    fn nac_is_illegal() {
        let s = solved_config(CubeVariant::ODD_EDGELESS);
        let broken = s.map_entries(|_, c| {
            let mut c = c.clone();
            if c.len() == 24 {
                c.0[3] = Color::NaC;
            }
            c
        });
        assert!(!broken.is_legal());
        assert!(s.is_legal());
    }

    #[test]
    fn even_witness() {
        let solved = ClusterColoring::solved();
        let p = coloring_as_even_perm(&solved, &solved).unwrap();
        assert_eq!(p.parity(), Parity::Even);
    }
}
