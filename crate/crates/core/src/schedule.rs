//! Transfinite twist schedules as finite data.
//!
//! A schedule is a list of segments. Explicit stages and finite powers are
//! ordinary finite lists of items, where an item may be a whole parallel
//! slice block of length up to ω. A repeat segment runs its block ω times.
//! A stage family describes ω stages by per-stage templates selected by the
//! class of the stage index.

use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::config::ConfigError;
use crate::geometry::{relation_of, BasicTwist, ClusterId, GeometryError, RelationClass};
use crate::moves::SliceType;
use crate::ordinal::OrdinalLen;
use crate::periodic::PeriodicSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule class not supported by the evaluator: {0}")]
    UnsupportedSchedule(String),
    #[error("quiescence certificate violated at {0}")]
    CertificateViolation(String),
    #[error("schedule is not twist-finite")]
    NotTwistFinite,
    #[error("ordinal length {0} exceeds ω²")]
    TooLong(OrdinalLen),
    #[error("invalid stage family: {0}")]
    InvalidFamily(String),
    #[error("class {0} evaluates differently on its members")]
    NonUniformClass(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One schedule item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleItem {
    Single(BasicTwist),
    /// The slice type applied once at every index of the set. Slices of one
    /// type commute, so the order inside the block does not matter.
    ParallelSlice(SliceType, Arc<PeriodicSet>),
}

impl ScheduleItem {
    pub fn parallel(ty: SliceType, set: PeriodicSet) -> ScheduleItem {
        ScheduleItem::ParallelSlice(ty, Arc::new(set))
    }

    pub fn ordinal_length(&self) -> OrdinalLen {
        match self {
            ScheduleItem::Single(_) => OrdinalLen::finite(1),
            ScheduleItem::ParallelSlice(_, set) => set_length(set),
        }
    }

    /// Twists of this item acting on `id`, in canonical order.
    pub fn twists_on(&self, id: ClusterId) -> Vec<BasicTwist> {
        match self {
            ScheduleItem::Single(t) => {
                if relation_of(*t, id) == RelationClass::None {
                    vec![]
                } else {
                    vec![*t]
                }
            }
            ScheduleItem::ParallelSlice(ty, set) => cluster_magnitudes(id)
                .into_iter()
                .filter(|&m| m > 0 && set.contains(m))
                .map(|m| ty.at(m))
                .collect(),
        }
    }
}

fn set_length(set: &PeriodicSet) -> OrdinalLen {
    match set.len() {
        Some(n) => OrdinalLen::finite(n),
        None => OrdinalLen::OMEGA,
    }
}

/// Distinct finite magnitudes of a cluster's coordinates, ascending; `0`
/// stands for the zero layer.
pub fn cluster_magnitudes(id: ClusterId) -> Vec<u64> {
    let mut out = Vec::new();
    match id {
        ClusterId::Center => out.push(0),
        ClusterId::Rep { rx, ry } => {
            for c in [rx, ry] {
                if let Some(m) = c.magnitude() {
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub type Stage = Vec<ScheduleItem>;

fn stage_length(stage: &[ScheduleItem]) -> OrdinalLen {
    stage
        .iter()
        .fold(OrdinalLen::ZERO, |acc, it| acc + it.ordinal_length())
}

/// A template item of a stage family, instantiated at stage `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateItem {
    /// A fixed face twist.
    Single(BasicTwist),
    /// The slice type at index `n`.
    AtStage(SliceType),
    /// The slice type over `sets[i] ∩ (n, ∞)`.
    Above(SliceType, usize),
}

/// Stage template used at every stage index in `selector`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageTemplate {
    pub selector: PeriodicSet,
    pub items: Vec<TemplateItem>,
}

/// Stage bounds after which a cluster sees only face twists: `center` for
/// the center cluster and `max(x, y) + rep_offset` for `C(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quiescence {
    pub center: u64,
    pub rep_offset: u64,
}

impl Quiescence {
    pub fn bound(&self, id: ClusterId) -> Option<u64> {
        match id {
            ClusterId::Center => Some(self.center),
            ClusterId::Rep { rx, ry } => {
                let x = rx.magnitude()?;
                let y = ry.magnitude()?;
                Some(x.max(y) + self.rep_offset)
            }
        }
    }
}

/// ω stages indexed by `n = 1, 2, …`; stage `n` instantiates the template
/// whose selector contains `n` (an empty stage if none does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageFamily {
    sets: Vec<Arc<PeriodicSet>>,
    templates: Vec<StageTemplate>,
    quiescence: Option<Quiescence>,
}

impl StageFamily {
    pub fn new(
        sets: Vec<PeriodicSet>,
        templates: Vec<StageTemplate>,
        quiescence: Option<Quiescence>,
    ) -> Result<StageFamily, ScheduleError> {
        let mut seen = PeriodicSet::empty();
        for t in &templates {
            if !seen.intersect(&t.selector).is_empty() {
                return Err(ScheduleError::InvalidFamily("selectors overlap".into()));
            }
            seen = seen.union(&t.selector);
            for it in &t.items {
                match it {
                    TemplateItem::Single(tw) if !tw.is_face() => {
                        return Err(ScheduleError::InvalidFamily(format!(
                            "template twist {tw} is not a face twist"
                        )))
                    }
                    TemplateItem::Above(_, i) if *i >= sets.len() => {
                        return Err(ScheduleError::InvalidFamily(format!("no set {i}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(StageFamily {
            sets: sets.into_iter().map(Arc::new).collect(),
            templates,
            quiescence,
        })
    }

    pub fn sets(&self) -> &[Arc<PeriodicSet>] {
        &self.sets
    }

    pub fn templates(&self) -> &[StageTemplate] {
        &self.templates
    }

    pub fn quiescence(&self) -> Option<Quiescence> {
        self.quiescence
    }

    pub fn template_at(&self, n: u64) -> Option<&StageTemplate> {
        self.templates.iter().find(|t| t.selector.contains(n))
    }

    /// Stage `n` as explicit items.
    pub fn instantiate(&self, n: u64) -> Stage {
        let Some(t) = self.template_at(n) else {
            return vec![];
        };
        t.items
            .iter()
            .map(|it| match *it {
                TemplateItem::Single(tw) => ScheduleItem::Single(tw),
                TemplateItem::AtStage(ty) => ScheduleItem::Single(ty.at(n)),
                TemplateItem::Above(ty, i) => ScheduleItem::parallel(ty, self.sets[i].above(n)),
            })
            .collect()
    }

    fn template_length(&self, t: &StageTemplate, n: u64) -> OrdinalLen {
        t.items.iter().fold(OrdinalLen::ZERO, |acc, it| {
            acc + match *it {
                TemplateItem::Single(_) | TemplateItem::AtStage(_) => OrdinalLen::finite(1),
                TemplateItem::Above(_, i) => set_length(&self.sets[i].above(n)),
            }
        })
    }

    fn has_infinite_above(&self, t: &StageTemplate) -> bool {
        t.items
            .iter()
            .any(|it| matches!(it, TemplateItem::Above(_, i) if self.sets[*i].is_infinite()))
    }

    pub fn ordinal_length(&self) -> OrdinalLen {
        let infinite = |t: &&StageTemplate| t.selector.is_infinite();
        if self
            .templates
            .iter()
            .filter(infinite)
            .any(|t| self.has_infinite_above(t))
        {
            return OrdinalLen::OMEGA_SQUARED;
        }
        // only finitely many stages can have infinite length from here on
        let n0 = self
            .templates
            .iter()
            .filter(|t| self.has_infinite_above(t))
            .filter_map(|t| t.selector.max())
            .max()
            .unwrap_or(0);
        let tail_infinite = self.templates.iter().filter(infinite).any(|t| {
            t.items
                .iter()
                .any(|it| !matches!(it, TemplateItem::Above(..)))
        });
        let bound = if tail_infinite {
            n0
        } else {
            let finite_selectors = self.templates.iter().filter_map(|t| t.selector.max());
            let finite_sets = self.sets.iter().filter_map(|s| s.max());
            finite_selectors.chain(finite_sets).chain([n0]).max().unwrap_or(0)
        };
        let mut total = OrdinalLen::ZERO;
        for n in 1..=bound {
            if let Some(t) = self.template_at(n) {
                total = total + self.template_length(t, n);
            }
        }
        if tail_infinite {
            total = total + OrdinalLen::OMEGA;
        }
        total
    }

    fn occurrences(&self, t: BasicTwist) -> Occurrences {
        let mut total = Occurrences::Finite(0);
        for tpl in &self.templates {
            for it in &tpl.items {
                let add = match *it {
                    TemplateItem::Single(tw) if tw == t => match tpl.selector.len() {
                        Some(k) => Occurrences::Finite(k),
                        None => Occurrences::Omega,
                    },
                    TemplateItem::AtStage(ty) => match t.layer.magnitude() {
                        Some(m) if m > 0 && ty.at(m) == t && tpl.selector.contains(m) => {
                            Occurrences::Finite(1)
                        }
                        _ => Occurrences::Finite(0),
                    },
                    TemplateItem::Above(ty, i) => match t.layer.magnitude() {
                        Some(m) if m > 0 && ty.at(m) == t && self.sets[i].contains(m) => {
                            Occurrences::Finite((1..m).filter(|&n| tpl.selector.contains(n)).count()
                                as u64)
                        }
                        _ => Occurrences::Finite(0),
                    },
                    _ => Occurrences::Finite(0),
                };
                total = total.plus(add);
            }
        }
        total
    }

    fn is_twist_finite(&self) -> bool {
        self.templates.iter().all(|t| {
            !t.selector.is_infinite()
                || t.items
                    .iter()
                    .all(|it| !matches!(it, TemplateItem::Single(_)))
        })
    }
}

/// How often a twist occurs in a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Occurrences {
    Finite(u64),
    Omega,
}

impl Occurrences {
    fn plus(self, other: Occurrences) -> Occurrences {
        match (self, other) {
            (Occurrences::Finite(a), Occurrences::Finite(b)) => Occurrences::Finite(a + b),
            _ => Occurrences::Omega,
        }
    }

    fn times(self, k: u64) -> Occurrences {
        match self {
            Occurrences::Finite(a) => Occurrences::Finite(a * k),
            Occurrences::Omega if k == 0 => Occurrences::Finite(0),
            Occurrences::Omega => Occurrences::Omega,
        }
    }
}

fn stage_occurrences(stages: &[Stage], t: BasicTwist) -> u64 {
    let m = t.layer.magnitude();
    stages
        .iter()
        .flatten()
        .filter(|it| match it {
            ScheduleItem::Single(tw) => *tw == t,
            ScheduleItem::ParallelSlice(ty, set) => match m {
                Some(m) if m > 0 => set.contains(m) && ty.at(m) == t,
                _ => false,
            },
        })
        .count() as u64
}

/// A schedule segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    /// Explicit stages, applied in order.
    Stages(Vec<Stage>),
    /// A staged schedule repeated a finite number of times.
    Power(Box<Schedule>, u64),
    /// The block repeated ω times.
    Repeat(Vec<ScheduleItem>),
    Family(StageFamily),
}

impl Segment {
    pub fn ordinal_length(&self) -> OrdinalLen {
        match self {
            Segment::Stages(st) => st
                .iter()
                .fold(OrdinalLen::ZERO, |acc, s| acc + stage_length(s)),
            Segment::Power(inner, k) => inner.ordinal_length().times(*k),
            Segment::Repeat(block) => stage_length(block)
                .times_omega()
                .unwrap_or(OrdinalLen::new(u64::MAX, 0, 0)),
            Segment::Family(f) => f.ordinal_length(),
        }
    }

    /// Number of stages, `None` when there are ω of them.
    fn stage_count(&self) -> Option<u64> {
        match self {
            Segment::Stages(st) => Some(st.len() as u64),
            Segment::Power(inner, k) => Some(inner.stage_total()? * k),
            Segment::Repeat(block) if block.is_empty() => Some(0),
            Segment::Repeat(_) | Segment::Family(_) => None,
        }
    }

    /// The `i`-th stage of this segment (each repetition of a repeat block
    /// counts as one stage).
    fn stage(&self, i: u64) -> Stage {
        match self {
            Segment::Stages(st) => st[i as usize].clone(),
            Segment::Power(inner, _) => {
                let per = inner.stage_total().unwrap_or(1).max(1);
                inner.stage(i % per).unwrap_or_default()
            }
            Segment::Repeat(block) => block.clone(),
            Segment::Family(f) => f.instantiate(i + 1),
        }
    }
}

/// A schedule of ordinal length at most ω².
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    segments: Vec<Segment>,
}

impl Schedule {
    pub fn new(segments: Vec<Segment>) -> Result<Schedule, ScheduleError> {
        for seg in &segments {
            if let Segment::Power(inner, _) = seg {
                if !inner.is_staged() {
                    return Err(ScheduleError::UnsupportedSchedule(
                        "powers of unstaged schedules".into(),
                    ));
                }
            }
        }
        let s = Schedule { segments };
        let len = s.ordinal_length();
        if len > OrdinalLen::OMEGA_SQUARED {
            return Err(ScheduleError::TooLong(len));
        }
        Ok(s)
    }

    pub fn empty() -> Schedule {
        Schedule::default()
    }

    /// One stage of single twists.
    pub fn from_twists(twists: &[BasicTwist]) -> Schedule {
        let stage: Stage = twists.iter().map(|&t| ScheduleItem::Single(t)).collect();
        Schedule {
            segments: vec![Segment::Stages(vec![stage])],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `self ⌢ other`.
    pub fn concat(&self, other: &Schedule) -> Result<Schedule, ScheduleError> {
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        Schedule::new(segs)
    }

    pub fn ordinal_length(&self) -> OrdinalLen {
        self.segments
            .iter()
            .fold(OrdinalLen::ZERO, |acc, s| acc + s.ordinal_length())
    }

    /// Exact number of occurrences of `t`.
    pub fn twist_occurrences(&self, t: BasicTwist) -> Occurrences {
        self.segments.iter().fold(Occurrences::Finite(0), |acc, seg| {
            acc.plus(match seg {
                Segment::Stages(st) => Occurrences::Finite(stage_occurrences(st, t)),
                Segment::Power(inner, k) => inner.twist_occurrences(t).times(*k),
                Segment::Repeat(block) => {
                    match stage_occurrences(std::slice::from_ref(block), t) {
                        0 => Occurrences::Finite(0),
                        _ => Occurrences::Omega,
                    }
                }
                Segment::Family(f) => f.occurrences(t),
            })
        })
    }

    /// True iff no basic twist occurs infinitely often.
    pub fn is_twist_finite(&self) -> bool {
        self.segments.iter().all(|seg| match seg {
            Segment::Stages(_) | Segment::Power(..) => true,
            Segment::Repeat(block) => block.iter().all(|it| match it {
                ScheduleItem::Single(_) => false,
                ScheduleItem::ParallelSlice(_, set) => set.is_empty(),
            }),
            Segment::Family(f) => f.is_twist_finite(),
        })
    }

    /// True when every segment is a list of explicit stages or a finite
    /// power of one.
    pub fn is_staged(&self) -> bool {
        self.segments
            .iter()
            .all(|s| matches!(s, Segment::Stages(_) | Segment::Power(..)))
    }

    /// The twists acting on `id` within the given stages, in schedule order.
    /// Stages are numbered across segments; the first segment with ω stages
    /// absorbs every later index.
    pub fn effective_subsequence(&self, id: ClusterId, stages: Range<u64>) -> Vec<BasicTwist> {
        let mut out = Vec::new();
        for i in stages {
            if let Some(stage) = self.stage(i) {
                for it in &stage {
                    out.extend(it.twists_on(id));
                }
            }
        }
        out
    }

    /// Total number of stages, `None` when infinite.
    pub fn stage_total(&self) -> Option<u64> {
        self.segments.iter().map(|s| s.stage_count()).sum()
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: u64) -> Result<Schedule, ScheduleError> {
        if k == 0 {
            return Ok(Schedule::empty());
        }
        Schedule::new(vec![Segment::Power(Box::new(self.clone()), k)])
    }

    /// The `i`-th stage in global numbering.
    pub fn stage(&self, mut i: u64) -> Option<Stage> {
        for seg in &self.segments {
            match seg.stage_count() {
                Some(c) if i >= c => i -= c,
                _ => return Some(seg.stage(i)),
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Axis, ExtIndex, Face};
    use crate::moves::FaceType;
    use crate::solver::generators::base_schema;

    fn tx(n: i64) -> BasicTwist {
        BasicTwist::new(Axis::X, ExtIndex::from_i64(n), 1)
    }

    #[test]
    fn lengths() {
        let five = Schedule::from_twists(&[tx(1); 5]);
        assert_eq!(five.ordinal_length(), OrdinalLen::finite(5));
        let ty = SliceType::new(Axis::X, 1, 1);
        let s = Schedule::new(vec![Segment::Stages(vec![vec![
            ScheduleItem::parallel(ty, PeriodicSet::all()),
            ScheduleItem::Single(tx(2)),
        ]])])
        .unwrap();
        assert_eq!(s.ordinal_length(), OrdinalLen::new(0, 1, 1));
    }

    #[test]
    fn occurrences() {
        let ty = SliceType::new(Axis::X, 1, 1);
        let s = Schedule::new(vec![Segment::Stages(vec![vec![ScheduleItem::parallel(
            ty,
            PeriodicSet::all(),
        )]])])
        .unwrap();
        assert_eq!(s.twist_occurrences(tx(4)), Occurrences::Finite(1));
        assert!(s.is_twist_finite());
        let r = Schedule::new(vec![Segment::Repeat(vec![ScheduleItem::Single(tx(1))])]).unwrap();
        assert_eq!(r.twist_occurrences(tx(1)), Occurrences::Omega);
        assert_eq!(r.twist_occurrences(tx(2)), Occurrences::Finite(0));
        assert!(!r.is_twist_finite());
    }

    #[test]
    fn family_counts() {
        let ty = SliceType::new(Axis::X, 1, 1);
        let u = FaceType::new(Face::Up, 1).twist();
        let fam = StageFamily::new(
            vec![PeriodicSet::all()],
            vec![StageTemplate {
                selector: PeriodicSet::all(),
                items: vec![
                    TemplateItem::AtStage(ty),
                    TemplateItem::Above(ty, 0),
                    TemplateItem::Single(u),
                ],
            }],
            None,
        )
        .unwrap();
        let s = Schedule::new(vec![Segment::Family(fam)]).unwrap();
        assert_eq!(s.ordinal_length(), OrdinalLen::OMEGA_SQUARED);
        // T_{x,4}: once at stage 4, once in each of stages 1..3
        assert_eq!(s.twist_occurrences(tx(4)), Occurrences::Finite(4));
        assert_eq!(s.twist_occurrences(u), Occurrences::Omega);
        assert!(!s.is_twist_finite());
    }

    #[test]
    fn family_rejects_slice_singles() {
        let r = StageFamily::new(
            vec![],
            vec![StageTemplate {
                selector: PeriodicSet::all(),
                items: vec![TemplateItem::Single(tx(1))],
            }],
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn effective_subsequences() {
        let ty = SliceType::new(Axis::Y, -1, 3);
        let s = Schedule::new(vec![Segment::Stages(vec![vec![ScheduleItem::parallel(
            ty,
            PeriodicSet::all(),
        )]])])
        .unwrap();
        let eff = s.effective_subsequence(ClusterId::rep(7, 3), 0..1);
        assert_eq!(eff, vec![ty.at(3), ty.at(7)]);
        let t = Schedule::from_twists(&[tx(2), tx(5)]);
        assert!(t.effective_subsequence(ClusterId::rep(7, 3), 0..1).is_empty());
        let base = Schedule::from_twists(&base_schema().instantiate(4, 2));
        assert_eq!(base.effective_subsequence(ClusterId::rep(4, 2), 0..1).len(), 10);
    }

    #[test]
    fn too_long_is_rejected() {
        let ty = SliceType::new(Axis::X, 1, 1);
        let block = vec![ScheduleItem::parallel(ty, PeriodicSet::all())];
        let one = Segment::Repeat(block);
        assert!(Schedule::new(vec![one.clone()]).is_ok());
        assert!(Schedule::new(vec![one.clone(), one]).is_err());
    }
}
