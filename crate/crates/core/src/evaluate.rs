//! Limit evaluation of schedules.
//!
//! Every cluster is evaluated independently on its slot values. A cluster
//! only ever sees the twists whose layer meets one of its coordinates plus
//! the face twists, so inside one stage the face twists between two hits
//! are applied as a single precomputed product.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;

use crate::config::{solved_config, Color, ClusterColoring, Coord, Key, PresentedConfiguration};
use crate::geometry::{
    cluster_twist_perm, twist_cluster_perm, BasicTwist, ClusterId, ClusterKind, CubeVariant,
    ExtIndex, RelationClass,
};
use crate::moves::SliceType;
use crate::periodic::PeriodicSet;
use crate::perm::Perm;
use crate::schedule::{
    cluster_magnitudes, Schedule, ScheduleError, ScheduleItem, Segment, StageFamily, TemplateItem,
};

/// Slot values that have a "not a color" marker.
pub trait Label: Clone + Eq {
    const NAC: Self;
}

impl Label for Color {
    const NAC: Color = Color::NaC;
}

impl Label for u8 {
    const NAC: u8 = u8::MAX;
}

#[derive(Clone, Copy)]
enum Flat<'a> {
    Twist(BasicTwist),
    /// Slice type over the members of the set strictly above the bound.
    Par(SliceType, &'a PeriodicSet, u64),
}

impl Flat<'_> {
    fn face(&self) -> Option<BasicTwist> {
        match self {
            Flat::Twist(t) if t.is_face() => Some(*t),
            _ => None,
        }
    }

    /// The twist this item applies at magnitude `m` (0 for the zero layer).
    fn at(&self, m: u64) -> Option<BasicTwist> {
        match *self {
            Flat::Twist(t) => (!t.is_face() && t.layer.magnitude() == Some(m)).then_some(t),
            Flat::Par(ty, set, above) => (m > above && set.contains(m)).then(|| ty.at(m)),
        }
    }
}

fn flatten(items: &[ScheduleItem]) -> Vec<Flat<'_>> {
    items
        .iter()
        .map(|it| match it {
            ScheduleItem::Single(t) => Flat::Twist(*t),
            ScheduleItem::ParallelSlice(ty, set) => Flat::Par(*ty, set, 0),
        })
        .collect()
}

fn flatten_template(fam: &StageFamily, n: u64) -> Vec<Flat<'_>> {
    let Some(t) = fam.template_at(n) else {
        return vec![];
    };
    t.items
        .iter()
        .map(|it| match *it {
            TemplateItem::Single(t) => Flat::Twist(t),
            TemplateItem::AtStage(ty) => Flat::Twist(ty.at(n)),
            TemplateItem::Above(ty, i) => Flat::Par(ty, &fam.sets()[i], n),
        })
        .collect()
}

fn face_perm(t: BasicTwist, kind: ClusterKind) -> &'static Perm {
    let rel = if t.layer == ExtIndex::PosInf {
        RelationClass::FacePos
    } else {
        RelationClass::FaceNeg
    };
    twist_cluster_perm(t, rel, kind).expect("face twists act on every cluster kind")
}

struct Track<V> {
    tag: usize,
    id: ClusterId,
    state: Vec<V>,
}

impl<V: Label> Track<V> {
    fn apply(&mut self, p: &Perm) {
        self.state = p.act(&self.state);
    }
}

/// Runs one finite stage on every track; returns which tracks were hit by
/// a slice twist.
fn run_stage<V: Label>(items: &[Flat], tracks: &mut [Track<V>]) -> Vec<bool> {
    let faces: Vec<(usize, BasicTwist)> = items
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.face().map(|t| (i, t)))
        .collect();
    let mags: BTreeSet<u64> = tracks
        .iter()
        .flat_map(|t| cluster_magnitudes(t.id))
        .collect();
    let mut hits: HashMap<u64, Vec<(usize, BasicTwist)>> = HashMap::new();
    for (i, it) in items.iter().enumerate() {
        match it {
            Flat::Twist(t) => {
                if let Some(m) = t.layer.magnitude() {
                    if mags.contains(&m) {
                        hits.entry(m).or_default().push((i, *t));
                    }
                }
            }
            Flat::Par(..) => {
                for &m in &mags {
                    if let Some(t) = it.at(m) {
                        hits.entry(m).or_default().push((i, t));
                    }
                }
            }
        }
    }
    let mut prefixes: HashMap<ClusterKind, Vec<Perm>> = HashMap::new();
    let mut hit_flags = Vec::with_capacity(tracks.len());
    for tr in tracks.iter_mut() {
        let kind = tr.id.kind();
        let prefix = prefixes.entry(kind).or_insert_with(|| {
            let mut acc = Perm::identity(tr.state.len());
            let mut out = vec![acc.clone()];
            for &(_, t) in &faces {
                acc = acc.then(face_perm(t, kind));
                out.push(acc.clone());
            }
            out
        });
        let mut own: Vec<(usize, BasicTwist)> = cluster_magnitudes(tr.id)
            .iter()
            .filter_map(|m| hits.get(m))
            .flatten()
            .copied()
            .collect();
        own.sort_by_key(|&(i, _)| i);
        own.dedup_by_key(|&mut (i, _)| i);
        hit_flags.push(!own.is_empty());
        let mut done = 0;
        let mut advance = |tr: &mut Track<V>, upto: usize| {
            if upto > done {
                let seg = prefix[done].invert().then(&prefix[upto]);
                tr.apply(&seg);
                done = upto;
            }
        };
        for (pos, t) in own {
            let f = faces.partition_point(|&(p, _)| p < pos);
            advance(tr, f);
            tr.apply(cluster_twist_perm(t, tr.id));
        }
        advance(tr, faces.len());
    }
    hit_flags
}

/// Runs a block ω times on one track: a slot converges iff its value is
/// the same at every point of one full period, intermediate positions
/// included.
fn run_repeat<V: Label>(block: &[Flat], tr: &mut Track<V>) {
    let kind = tr.id.kind();
    let mags = cluster_magnitudes(tr.id);
    let mut eff: Vec<&'static Perm> = Vec::new();
    for it in block {
        if let Some(t) = it.face() {
            eff.push(face_perm(t, kind));
        } else {
            for &m in &mags {
                if let Some(t) = it.at(m) {
                    eff.push(cluster_twist_perm(t, tr.id));
                }
            }
        }
    }
    let p = eff
        .iter()
        .fold(Perm::identity(tr.state.len()), |acc, q| acc.then(q));
    let start = tr.state.clone();
    let mut unstable = vec![false; start.len()];
    let mut cur = start.clone();
    for _ in 0..p.order() {
        for q in &eff {
            cur = q.act(&cur);
            for (s, v) in cur.iter().enumerate() {
                if *v != start[s] {
                    unstable[s] = true;
                }
            }
        }
    }
    for (s, u) in unstable.into_iter().enumerate() {
        if u {
            tr.state[s] = V::NAC;
        }
    }
}

fn run_family<V: Label>(fam: &StageFamily, tracks: &mut [Track<V>]) -> Result<(), ScheduleError> {
    let q = fam.quiescence().ok_or_else(|| {
        ScheduleError::UnsupportedSchedule("stage family without quiescence certificate".into())
    })?;
    let mut bounds = HashMap::new();
    for tr in tracks.iter() {
        let b = q.bound(tr.id).ok_or_else(|| {
            ScheduleError::UnsupportedSchedule(format!("no certificate for {}", tr.id))
        })?;
        let top = cluster_magnitudes(tr.id).into_iter().max().unwrap_or(0);
        bounds.insert(tr.tag, (b, b.max(top)));
    }
    tracks.sort_by_key(|t| std::cmp::Reverse(bounds[&t.tag].1));
    let horizon = tracks.first().map_or(0, |t| bounds[&t.tag].1);
    for n in 1..=horizon {
        let active = tracks.partition_point(|t| bounds[&t.tag].1 >= n);
        let items = flatten_template(fam, n);
        if items.is_empty() {
            continue;
        }
        let hit = run_stage(&items, &mut tracks[..active]);
        for (tr, h) in tracks[..active].iter().zip(hit) {
            if h && n > bounds[&tr.tag].0 {
                return Err(ScheduleError::CertificateViolation(format!(
                    "{} is hit at stage {n}",
                    tr.id
                )));
            }
        }
    }
    // past its horizon a cluster sees only the templates' face twists
    for tr in tracks.iter() {
        let h = bounds[&tr.tag].1;
        let kind = tr.id.kind();
        for tpl in fam.templates() {
            if tpl.selector.next_after(h).is_none() {
                continue;
            }
            for it in &tpl.items {
                if let TemplateItem::Single(t) = it {
                    if face_perm(*t, kind).act(&tr.state) != tr.state {
                        return Err(ScheduleError::CertificateViolation(format!(
                            "{} is moved by {t} after stage {h}",
                            tr.id
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_power<V: Label>(inner: &Schedule, k: u64, tracks: &mut [Track<V>]) -> Result<(), ScheduleError> {
    let mut probe: Vec<Track<u8>> = tracks
        .iter()
        .map(|t| Track {
            tag: t.tag,
            id: t.id,
            state: (0..t.state.len() as u8).collect(),
        })
        .collect();
    run_segments(inner.segments(), &mut probe)?;
    for (tr, pr) in tracks.iter_mut().zip(probe) {
        let p = labels_to_perm(&pr.state).ok_or_else(|| {
            ScheduleError::UnsupportedSchedule("power of a divergent schedule".into())
        })?;
        tr.apply(&p.pow(k));
    }
    Ok(())
}

fn run_segments<V: Label>(segs: &[Segment], tracks: &mut [Track<V>]) -> Result<(), ScheduleError> {
    for seg in segs {
        match seg {
            Segment::Stages(stages) => {
                for st in stages {
                    run_stage(&flatten(st), tracks);
                }
            }
            Segment::Power(inner, k) => run_power(inner, *k, tracks)?,
            Segment::Repeat(block) => {
                let flat = flatten(block);
                for tr in tracks.iter_mut() {
                    run_repeat(&flat, tr);
                }
            }
            Segment::Family(fam) => {
                run_family(fam, tracks)?;
                tracks.sort_by_key(|t| t.tag);
            }
        }
    }
    Ok(())
}

/// `labels[j] = i` means the tile from slot `i` sits in slot `j`.
fn labels_to_perm(labels: &[u8]) -> Option<Perm> {
    Perm::try_from_images(labels.to_vec()).map(|p| p.invert())
}

fn check_variant(s: &Schedule, v: CubeVariant) -> Result<(), ScheduleError> {
    for seg in s.segments() {
        match seg {
            Segment::Stages(st) => {
                for it in st.iter().flatten() {
                    if let ScheduleItem::Single(t) = it {
                        t.validate(v)?;
                    }
                }
            }
            Segment::Power(inner, _) => check_variant(inner, v)?,
            Segment::Repeat(block) => {
                for it in block {
                    if let ScheduleItem::Single(t) = it {
                        t.validate(v)?;
                    }
                }
            }
            Segment::Family(_) => {}
        }
    }
    Ok(())
}

/// Index sets whose members a segment treats individually.
fn touched_sets(seg: &Segment) -> Vec<PeriodicSet> {
    let from_items = |items: &mut dyn Iterator<Item = &ScheduleItem>| -> Vec<PeriodicSet> {
        let mut singles = BTreeSet::new();
        let mut sets = Vec::new();
        for it in items {
            match it {
                ScheduleItem::Single(t) => {
                    if let Some(m) = t.layer.magnitude().filter(|&m| m > 0) {
                        singles.insert(m);
                    }
                }
                ScheduleItem::ParallelSlice(_, set) => {
                    if !sets.contains(&**set) {
                        sets.push((**set).clone());
                    }
                }
            }
        }
        sets.extend(singles.into_iter().map(PeriodicSet::singleton));
        sets
    };
    match seg {
        Segment::Stages(st) => from_items(&mut st.iter().flatten()),
        Segment::Repeat(block) => from_items(&mut block.iter()),
        Segment::Power(inner, _) => inner.segments().iter().flat_map(touched_sets).collect(),
        Segment::Family(fam) => fam
            .sets()
            .iter()
            .map(|s| (**s).clone())
            .chain(fam.templates().iter().map(|t| t.selector.clone()))
            .collect(),
    }
}

/// The first few concrete clusters governed by `key`, smallest first.
pub fn key_members(classes: &[PeriodicSet], key: Key, count: usize) -> Vec<ClusterId> {
    let firsts = |c: Coord, after: u64, k: usize| -> Vec<ExtIndex> {
        match c {
            Coord::Zero => vec![ExtIndex::Zero],
            Coord::Inf => vec![ExtIndex::PosInf],
            Coord::Class(i) => {
                let mut out = Vec::new();
                let mut n = after;
                while out.len() < k {
                    match classes[i].next_after(n) {
                        Some(m) => {
                            out.push(ExtIndex::Pos(m));
                            n = m;
                        }
                        None => break,
                    }
                }
                out
            }
        }
    };
    let mag = |e: ExtIndex| e.magnitude().unwrap_or(0);
    let mut pairs: Vec<(ExtIndex, ExtIndex)> = Vec::new();
    match (key.x, key.y) {
        (Coord::Class(_), Coord::Class(_)) => match key.rel {
            crate::config::Rel::Eq => {
                pairs = firsts(key.x, 0, count).into_iter().map(|a| (a, a)).collect();
            }
            crate::config::Rel::Lt => {
                for a in firsts(key.x, 0, 16) {
                    for b in firsts(key.y, mag(a), count) {
                        pairs.push((a, b));
                    }
                }
            }
            crate::config::Rel::Gt => {
                for b in firsts(key.y, 0, 16) {
                    for a in firsts(key.x, mag(b), count) {
                        pairs.push((a, b));
                    }
                }
            }
        },
        _ => {
            for a in firsts(key.x, 0, count) {
                for b in firsts(key.y, 0, count) {
                    pairs.push((a, b));
                }
            }
        }
    }
    pairs.sort_by_key(|&(a, b)| (a.max(b), a, b));
    pairs.dedup();
    pairs
        .into_iter()
        .take(count)
        .map(|(rx, ry)| ClusterId::Rep { rx, ry })
        .collect()
}

/// Number of members checked per class when a stage family is evaluated at
/// class level.
pub const FAMILY_WITNESSES: usize = 3;

fn apply_segment_classes(
    seg: &Segment,
    cfg: &PresentedConfiguration,
) -> Result<PresentedConfiguration, ScheduleError> {
    let family = matches!(seg, Segment::Family(_));
    let base = cfg.refine(&touched_sets(seg));
    let per_key = if family { FAMILY_WITNESSES } else { 1 };
    let mut tracks = Vec::new();
    let mut keys = Vec::new();
    for (k, c) in base.table() {
        for id in key_members(base.classes(), *k, per_key) {
            tracks.push(Track {
                tag: tracks.len(),
                id,
                state: c.0.clone(),
            });
            keys.push(Some(*k));
        }
    }
    if let Some(c) = base.center() {
        tracks.push(Track {
            tag: tracks.len(),
            id: ClusterId::Center,
            state: c.0.clone(),
        });
        keys.push(None);
    }
    run_segments(std::slice::from_ref(seg), &mut tracks)?;
    let mut table: BTreeMap<Key, ClusterColoring> = BTreeMap::new();
    let mut center = None;
    for tr in tracks {
        let col = ClusterColoring(tr.state);
        match keys[tr.tag] {
            Some(k) => match table.get(&k) {
                Some(prev) if *prev != col => {
                    return Err(ScheduleError::NonUniformClass(k.to_string()))
                }
                _ => {
                    table.insert(k, col);
                }
            },
            None => center = Some(col),
        }
    }
    Ok(PresentedConfiguration::from_parts(
        base.variant,
        base.classes().to_vec(),
        table,
        center,
    )?)
}

/// What to evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    /// Every table entry of the presentation and the center.
    AllClasses,
    Clusters(Vec<ClusterId>),
}

/// Outcome for one cluster: the limit coloring, or the slots whose limit
/// does not exist (shown as NaC in the coloring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterVerdict {
    Converged(ClusterColoring),
    Diverged {
        coloring: ClusterColoring,
        unstable: Vec<usize>,
    },
}

impl ClusterVerdict {
    fn of(coloring: ClusterColoring) -> ClusterVerdict {
        let unstable: Vec<usize> = coloring
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Color::NaC)
            .map(|(i, _)| i)
            .collect();
        if unstable.is_empty() {
            ClusterVerdict::Converged(coloring)
        } else {
            ClusterVerdict::Diverged { coloring, unstable }
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, ClusterVerdict::Converged(_))
    }

    pub fn coloring(&self) -> &ClusterColoring {
        match self {
            ClusterVerdict::Converged(c) => c,
            ClusterVerdict::Diverged { coloring, .. } => coloring,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub clusters: Vec<(ClusterId, ClusterVerdict)>,
    pub classes: BTreeMap<Key, ClusterVerdict>,
    pub center: Option<ClusterVerdict>,
    /// The resulting configuration when every class converged.
    pub config: Option<PresentedConfiguration>,
}

impl Verdict {
    pub fn all_converged(&self) -> bool {
        self.clusters.iter().all(|(_, v)| v.is_converged())
            && self.classes.values().all(|v| v.is_converged())
            && self.center.as_ref().is_none_or(|v| v.is_converged())
    }
}

/// Evaluates `s` over `cfg`.
///
/// Explicit stages, finite powers and repeat blocks are evaluated exactly.
/// Stage families need a quiescence certificate, which is checked rather
/// than trusted; at class level a family is run on the first
/// [`FAMILY_WITNESSES`] members of each class, which must agree.
pub fn evaluate(
    s: &Schedule,
    cfg: &PresentedConfiguration,
    query: &Query,
) -> Result<Verdict, ScheduleError> {
    check_variant(s, cfg.variant)?;
    match query {
        Query::AllClasses => {
            let mut cur = cfg.clone();
            for seg in s.segments() {
                cur = apply_segment_classes(seg, &cur)?;
            }
            let classes: BTreeMap<Key, ClusterVerdict> = cur
                .table()
                .iter()
                .map(|(k, c)| (*k, ClusterVerdict::of(c.clone())))
                .collect();
            let center = cur.center().map(|c| ClusterVerdict::of(c.clone()));
            let mut v = Verdict {
                clusters: vec![],
                classes,
                center,
                config: None,
            };
            if v.all_converged() {
                v.config = Some(cur);
            }
            Ok(v)
        }
        Query::Clusters(ids) => {
            let mut tracks = Vec::with_capacity(ids.len());
            for (tag, &id) in ids.iter().enumerate() {
                tracks.push(Track {
                    tag,
                    id,
                    state: cfg.cluster_coloring_at(id)?.0,
                });
            }
            run_segments(s.segments(), &mut tracks)?;
            tracks.sort_by_key(|t| t.tag);
            Ok(Verdict {
                clusters: tracks
                    .into_iter()
                    .map(|t| (t.id, ClusterVerdict::of(ClusterColoring(t.state))))
                    .collect(),
                ..Verdict::default()
            })
        }
    }
}

/// Colorings of `clusters` after every finitely indexed stage: entry 0 is
/// the input, then one entry per explicit stage, then one per family stage
/// up to `family_stages`. Only explicit stages and families are supported.
pub fn trace_stages(
    s: &Schedule,
    cfg: &PresentedConfiguration,
    clusters: &[ClusterId],
    family_stages: u64,
) -> Result<Vec<Vec<ClusterColoring>>, ScheduleError> {
    check_variant(s, cfg.variant)?;
    let mut tracks = Vec::with_capacity(clusters.len());
    for (tag, &id) in clusters.iter().enumerate() {
        tracks.push(Track {
            tag,
            id,
            state: cfg.cluster_coloring_at(id)?.0,
        });
    }
    let snap = |tracks: &[Track<Color>]| {
        tracks
            .iter()
            .map(|t| ClusterColoring(t.state.clone()))
            .collect::<Vec<_>>()
    };
    let mut out = vec![snap(&tracks)];
    for seg in s.segments() {
        match seg {
            Segment::Stages(stages) => {
                for st in stages {
                    run_stage(&flatten(st), &mut tracks);
                    out.push(snap(&tracks));
                }
            }
            Segment::Family(fam) => {
                for n in 1..=family_stages {
                    run_stage(&flatten_template(fam, n), &mut tracks);
                    out.push(snap(&tracks));
                }
            }
            _ => {
                return Err(ScheduleError::UnsupportedSchedule(
                    "tracing covers explicit stages and families only".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// The identity labelling after a schedule: for each class, the slot
/// labels (`labels[j] = i` when the tile from slot `i` ends in slot `j`,
/// `u8::MAX` where the limit does not exist).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    pub variant: CubeVariant,
    pub classes: Vec<PeriodicSet>,
    pub table: BTreeMap<Key, Vec<u8>>,
    pub center: Option<Vec<u8>>,
}

impl Labelling {
    pub fn is_convergent(&self) -> bool {
        self.table
            .values()
            .chain(self.center.iter())
            .all(|l| !l.contains(&u8::NAC))
    }

    /// Tile-destination permutation of a class, if it converged.
    pub fn perm(&self, key: Key) -> Option<Perm> {
        labels_to_perm(self.table.get(&key)?)
    }

    /// Every class permutation followed by the center's.
    pub fn perms(&self) -> Option<Vec<Perm>> {
        self.table
            .values()
            .chain(self.center.iter())
            .map(|l| labels_to_perm(l))
            .collect()
    }
}

fn identity_labelling_with(
    s: &Schedule,
    variant: CubeVariant,
    extra: &[PeriodicSet],
) -> Result<Labelling, ScheduleError> {
    check_variant(s, variant)?;
    if s.segments().iter().any(|g| matches!(g, Segment::Family(_))) {
        return Err(ScheduleError::UnsupportedSchedule(
            "identity labelling of stage families".into(),
        ));
    }
    let mut sets: Vec<PeriodicSet> = s.segments().iter().flat_map(touched_sets).collect();
    sets.extend(extra.iter().cloned());
    let base = solved_config(variant).refine(&sets);
    let mut tracks = Vec::new();
    let mut keys = Vec::new();
    for k in base.table().keys() {
        let id = base.witness(*k).expect("realizable key");
        tracks.push(Track {
            tag: tracks.len(),
            id,
            state: (0..24u8).collect(),
        });
        keys.push(Some(*k));
    }
    if variant.is_odd() {
        tracks.push(Track {
            tag: tracks.len(),
            id: ClusterId::Center,
            state: (0..6u8).collect(),
        });
        keys.push(None);
    }
    run_segments(s.segments(), &mut tracks)?;
    tracks.sort_by_key(|t| t.tag);
    let mut table = BTreeMap::new();
    let mut center = None;
    for tr in tracks {
        match keys[tr.tag] {
            Some(k) => {
                table.insert(k, tr.state);
            }
            None => center = Some(tr.state),
        }
    }
    Ok(Labelling {
        variant,
        classes: base.classes().to_vec(),
        table,
        center,
    })
}

/// Evaluates `s` over the identity labelling, per class of the partition
/// induced by the schedule's own index sets.
pub fn identity_labelling(s: &Schedule, variant: CubeVariant) -> Result<Labelling, ScheduleError> {
    identity_labelling_with(s, variant, &[])
}

/// Whether two twist-finite schedules act identically, compared on the
/// identity labelling over the common refinement of their partitions.
pub fn sequences_equivalent(
    s1: &Schedule,
    s2: &Schedule,
    variant: CubeVariant,
) -> Result<bool, ScheduleError> {
    if !s1.is_twist_finite() || !s2.is_twist_finite() {
        return Err(ScheduleError::NotTwistFinite);
    }
    let sets1: Vec<PeriodicSet> = s1.segments().iter().flat_map(touched_sets).collect();
    let sets2: Vec<PeriodicSet> = s2.segments().iter().flat_map(touched_sets).collect();
    let l1 = identity_labelling_with(s1, variant, &sets2)?;
    let l2 = identity_labelling_with(s2, variant, &sets1)?;
    Ok(l1.table == l2.table && l1.center == l2.center)
}

/// The lcm of the orders of the per-class permutations induced by a
/// twist-finite schedule.
pub fn repetition_exponent(s: &Schedule, variant: CubeVariant) -> Result<u64, ScheduleError> {
    if !s.is_twist_finite() {
        return Err(ScheduleError::NotTwistFinite);
    }
    let lab = identity_labelling(s, variant)?;
    let perms = lab.perms().ok_or(ScheduleError::NotTwistFinite)?;
    Ok(perms.iter().fold(1u64, |acc, p| acc.lcm(&p.order())))
}

/// `s` repeated `e − 1` times, `e` the [`repetition_exponent`]; `s` followed
/// by the result acts as the identity on every class.
pub fn inverse_by_repetition(s: &Schedule, variant: CubeVariant) -> Result<Schedule, ScheduleError> {
    let e = repetition_exponent(s, variant)?;
    s.power(e - 1)
}
