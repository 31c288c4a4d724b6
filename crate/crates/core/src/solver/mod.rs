//! Cluster-move synthesis and the transfinite solving algorithms.

pub mod generators;
pub mod tables;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::LazyLock;

use num_bigint::BigUint;
use thiserror::Error;

use crate::config::{
    coloring_as_even_perm, ClusterColoring, ConfigError, Coord, Key,
    PresentedConfiguration, Rel,
};
use crate::evaluate::{evaluate, inverse_by_repetition, repetition_exponent, Query};
use crate::geometry::{
    cells_of_cluster, cluster_twist_perm, locate, surrogate_cells, surrogate_simulate, Axis,
    BasicTwist, Cell, ClusterId, ClusterKind, CubeVariant, ExtIndex, GeometryError,
};
use crate::group::{lcm_of_orders_s24, Factorizer, PermError};
use crate::moves::{ClusterMoveSolution, Parts, SliceType};
use crate::periodic::PeriodicSet;
use crate::schedule::{
    Quiescence, Schedule, ScheduleError, ScheduleItem, Segment, Stage, StageFamily, StageTemplate,
    TemplateItem,
};
use generators::{generator_set, three_cycle_generators};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("configuration is not standard")]
    NotStandard,
    #[error("target is not invariant under face twists")]
    TargetNotFaceInvariant,
    #[error("index sets of a parallel block intersect")]
    SetsNotDisjoint,
    #[error("schedule is not twist-finite")]
    NotTwistFinite,
    #[error("operation not available on the {0} cube")]
    UnsupportedVariant(CubeVariant),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

static FACTORIZER: LazyLock<Factorizer> = LazyLock::new(|| {
    Factorizer::new(generator_set().clone()).expect("the generator set is nonempty")
});

/// A cluster move solution taking a cluster colored `from` to `to`.
pub fn synthesize_transition(
    from: &ClusterColoring,
    to: &ClusterColoring,
) -> Result<ClusterMoveSolution, SolverError> {
    if from.len() != 24 || !from.is_four_of_each() || !to.is_four_of_each() {
        return Err(SolverError::NotStandard);
    }
    // to[s] = from[π(s)], so the tile in slot π(s) has to travel to s
    let pi = coloring_as_even_perm(to, from)?;
    let word = FACTORIZER.factor(&pi.invert())?;
    let gens = three_cycle_generators();
    let mut cms = ClusterMoveSolution::default();
    for (g, sign) in word.letters {
        // a 3-cycle's inverse is its square
        let reps = if sign > 0 { 1 } else { 2 };
        for _ in 0..reps {
            cms.extend(&gens[g].schema);
        }
    }
    Ok(cms)
}

/// A cluster move solution for a cluster colored `target`, which it brings
/// to the solved coloring.
pub fn synthesize_cluster_solution(
    target: &ClusterColoring,
    kind: ClusterKind,
) -> Result<ClusterMoveSolution, SolverError> {
    if !matches!(
        kind,
        ClusterKind::Generic | ClusterKind::Cross | ClusterKind::Diagonal
    ) {
        return Err(SolverError::NotStandard);
    }
    synthesize_transition(target, &ClusterColoring::solved())
}

fn surrogate_identity(n: u64) -> HashMap<Cell, Cell> {
    surrogate_cells(n, CubeVariant::ODD_EDGELESS)
        .into_iter()
        .map(|c| (c, c))
        .collect()
}

/// Checks properties (I), (II) and (III) of a cluster move solution taking
/// `from` to `to`, at every sample representative, on the finite surrogate.
pub fn verify_cms(
    cms: &ClusterMoveSolution,
    from: &ClusterColoring,
    to: &ClusterColoring,
    samples: &[(u64, u64)],
) -> bool {
    let v = CubeVariant::ODD_EDGELESS;
    for &(x, y) in samples {
        let n = x.max(y).max(1);
        let start = surrogate_identity(n);
        let run = |parts: Parts| surrogate_simulate(n, v, &cms.instantiate_parts(x, y, parts), &start);
        let Ok(full) = run(Parts::ALL) else {
            return false;
        };
        // (I): the labels now in C(x, y) carry the colors of their origins
        let id = ClusterId::rep(x, y);
        let reached: Vec<_> = cells_of_cluster(id)
            .into_iter()
            .map(|c| {
                let origin = full[&c];
                let (cid, slot) = locate(origin);
                (cid == id).then(|| from.0[slot.0 as usize])
            })
            .collect();
        if reached.iter().zip(&to.0).any(|(r, t)| *r != Some(*t)) {
            return false;
        }
        // (II)
        if x != y && y != 0 {
            let mirror = ClusterId::rep(y, x);
            if cells_of_cluster(mirror).into_iter().any(|c| full[&c] != c) {
                return false;
            }
        }
        // (III)
        let drops = [
            Parts { a: true, b: false, c: true },
            Parts { a: false, b: true, c: true },
            Parts { a: false, b: false, c: true },
        ];
        for parts in drops {
            match run(parts) {
                Ok(out) if out.iter().all(|(c, o)| c == o) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Index set for the `y` side of a parallel block: optionally the zero
/// layer plus a set of positive indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIndices {
    pub zero: bool,
    pub set: PeriodicSet,
}

impl BlockIndices {
    pub fn zero() -> BlockIndices {
        BlockIndices {
            zero: true,
            set: PeriodicSet::empty(),
        }
    }

    pub fn set(set: PeriodicSet) -> BlockIndices {
        BlockIndices { zero: false, set }
    }
}

/// `s₁ ⌢ … ⌢ s_k` with `s_i` the `a_i` slices over `x`, the `b_i` slices
/// over `y` and the face move `c_i`.
pub fn parallel_block(
    cms: &ClusterMoveSolution,
    x: &PeriodicSet,
    y: &BlockIndices,
) -> Result<Stage, SolverError> {
    if !x.intersect(&y.set).is_empty() {
        return Err(SolverError::SetsNotDisjoint);
    }
    let mut out = Vec::new();
    for i in 0..cms.k() {
        if let Some(a) = cms.a[i] {
            if !x.is_empty() {
                out.push(ScheduleItem::parallel(a, x.clone()));
            }
        }
        if let Some(b) = cms.b[i] {
            if y.zero {
                out.push(ScheduleItem::Single(b.at(0)));
            }
            if !y.set.is_empty() {
                out.push(ScheduleItem::parallel(b, y.set.clone()));
            }
        }
        if let Some(c) = cms.c[i] {
            out.push(ScheduleItem::Single(c.twist()));
        }
    }
    Ok(out)
}

/// The quarter-turn rotation of the whole cube about `axis`, as one twist
/// of every layer.
fn whole_cube_quarter(axis: Axis) -> Stage {
    vec![
        ScheduleItem::Single(BasicTwist::new(axis, ExtIndex::NegInf, 1)),
        ScheduleItem::parallel(SliceType::new(axis, -1, 1), PeriodicSet::all()),
        ScheduleItem::Single(BasicTwist::new(axis, ExtIndex::Zero, 1)),
        ScheduleItem::parallel(SliceType::new(axis, 1, 1), PeriodicSet::all()),
        ScheduleItem::Single(BasicTwist::new(axis, ExtIndex::PosInf, 1)),
    ]
}

/// Shortest list of whole-cube quarter turns taking `from` to `to`.
fn center_rotation_word(from: &ClusterColoring, to: &ClusterColoring) -> Option<Vec<Axis>> {
    let mut seen = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), Vec::new())]);
    while let Some((c, word)) = queue.pop_front() {
        if &c == to {
            return Some(word);
        }
        for axis in Axis::ALL {
            let t = BasicTwist::new(axis, ExtIndex::Zero, 1);
            let next = c.permuted(cluster_twist_perm(t, ClusterId::Center));
            if seen.insert(next.clone()) {
                let mut w = word.clone();
                w.push(axis);
                queue.push_back((next, w));
            }
        }
    }
    None
}

fn apply_stages(
    cfg: &PresentedConfiguration,
    stages: Vec<Stage>,
) -> Result<PresentedConfiguration, SolverError> {
    let s = Schedule::new(vec![Segment::Stages(stages)])?;
    evaluate(&s, cfg, &Query::AllClasses)?
        .config
        .ok_or(SolverError::NotStandard)
}

/// Memoized transition synthesis.
#[derive(Default)]
struct Synth {
    cache: HashMap<(ClusterColoring, ClusterColoring), ClusterMoveSolution>,
}

impl Synth {
    fn get(&mut self, from: &ClusterColoring, to: &ClusterColoring) -> Result<&ClusterMoveSolution, SolverError> {
        let key = (from.clone(), to.clone());
        if !self.cache.contains_key(&key) {
            let cms = synthesize_transition(from, to)?;
            self.cache.insert(key.clone(), cms);
        }
        Ok(&self.cache[&key])
    }
}

/// Groups the classes along one side of a row or column by their
/// (current, target) colorings, skipping those already at the target.
fn group_classes(
    cur: &PresentedConfiguration,
    tgt: &PresentedConfiguration,
    keys: impl Iterator<Item = (usize, Key)>,
) -> BTreeMap<(ClusterColoring, ClusterColoring), PeriodicSet> {
    let mut groups: BTreeMap<(ClusterColoring, ClusterColoring), PeriodicSet> = BTreeMap::new();
    for (i, k) in keys {
        let (Some(c), Some(t)) = (cur.table().get(&k), tgt.table().get(&k)) else {
            continue;
        };
        if c == t {
            continue;
        }
        let set = groups
            .entry((c.clone(), t.clone()))
            .or_insert_with(PeriodicSet::empty);
        *set = set.union(&cur.classes()[i]);
    }
    groups
}

/// Solves a standard configuration of the countable edgeless cube in at
/// most ω² moves.
///
/// The schedule starts with explicit stages (a whole-cube rotation when the
/// center is off, then the cross clusters) followed by a stage family:
/// stage `n` solves the row `C(x, n)`, `x > n`, then the column `C(n, y)`,
/// `y > n`, then the diagonal `C(n, n)`, each class group by one parallel
/// block. The family carries its quiescence certificate.
pub fn solve_countable_edgeless(
    cfg: &PresentedConfiguration,
    target: &PresentedConfiguration,
) -> Result<Schedule, SolverError> {
    let v = cfg.variant;
    if v.is_edged() || target.variant != v {
        return Err(SolverError::UnsupportedVariant(v));
    }
    if !cfg.is_standard() || !target.is_standard() {
        return Err(SolverError::NotStandard);
    }
    if !target.is_face_invariant() {
        return Err(SolverError::TargetNotFaceInvariant);
    }
    let mut cur = cfg.refine(target.classes());
    let tgt = target.refine(cfg.classes());
    debug_assert_eq!(cur.classes(), tgt.classes());
    let classes = cur.classes().to_vec();
    let mut synth = Synth::default();
    let mut prefix: Vec<Stage> = Vec::new();

    if let (Some(c), Some(t)) = (cur.center(), tgt.center()) {
        if c != t {
            let word = center_rotation_word(c, t).ok_or(SolverError::NotStandard)?;
            let stage: Stage = word.into_iter().flat_map(whole_cube_quarter).collect();
            cur = apply_stages(&cur, vec![stage.clone()])?;
            prefix.push(stage);
        }
    }

    if v.is_odd() {
        let keys = (0..classes.len()).map(|i| {
            (
                i,
                Key {
                    x: Coord::Class(i),
                    y: Coord::Zero,
                    rel: Rel::Gt,
                },
            )
        });
        let mut stage = Vec::new();
        for ((from, to), xs) in group_classes(&cur, &tgt, keys) {
            let cms = synth.get(&from, &to)?;
            stage.extend(parallel_block(cms, &xs, &BlockIndices::zero())?);
        }
        if !stage.is_empty() {
            cur = apply_stages(&cur, vec![stage.clone()])?;
            prefix.push(stage);
        }
    }

    let mut sets: Vec<PeriodicSet> = Vec::new();
    let set_index = |s: PeriodicSet, sets: &mut Vec<PeriodicSet>| match sets.iter().position(|t| *t == s) {
        Some(i) => i,
        None => {
            sets.push(s);
            sets.len() - 1
        }
    };
    let mut templates = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        let mut items = Vec::new();
        let row_keys = (0..classes.len()).map(|i| {
            (
                i,
                Key {
                    x: Coord::Class(i),
                    y: Coord::Class(c),
                    rel: Rel::Gt,
                },
            )
        });
        for ((from, to), xs) in group_classes(&cur, &tgt, row_keys) {
            let cms = synth.get(&from, &to)?;
            let si = set_index(xs, &mut sets);
            for i in 0..cms.k() {
                items.extend(cms.a[i].map(|a| TemplateItem::Above(a, si)));
                items.extend(cms.b[i].map(TemplateItem::AtStage));
                items.extend(cms.c[i].map(|f| TemplateItem::Single(f.twist())));
            }
        }
        let col_keys = (0..classes.len()).map(|j| {
            (
                j,
                Key {
                    x: Coord::Class(c),
                    y: Coord::Class(j),
                    rel: Rel::Lt,
                },
            )
        });
        for ((from, to), ys) in group_classes(&cur, &tgt, col_keys) {
            let cms = synth.get(&from, &to)?;
            let si = set_index(ys, &mut sets);
            for i in 0..cms.k() {
                items.extend(cms.a[i].map(TemplateItem::AtStage));
                items.extend(cms.b[i].map(|b| TemplateItem::Above(b, si)));
                items.extend(cms.c[i].map(|f| TemplateItem::Single(f.twist())));
            }
        }
        let diag = Key {
            x: Coord::Class(c),
            y: Coord::Class(c),
            rel: Rel::Eq,
        };
        if let (Some(from), Some(to)) = (cur.table().get(&diag), tgt.table().get(&diag)) {
            if from != to {
                let cms = synth.get(from, to)?;
                for i in 0..cms.k() {
                    items.extend(cms.a[i].map(TemplateItem::AtStage));
                    items.extend(cms.b[i].map(TemplateItem::AtStage));
                    items.extend(cms.c[i].map(|f| TemplateItem::Single(f.twist())));
                }
            }
        }
        if !items.is_empty() {
            templates.push(StageTemplate {
                selector: class.clone(),
                items,
            });
        }
    }
    let family = StageFamily::new(
        sets,
        templates,
        Some(Quiescence {
            center: 0,
            rep_offset: 1,
        }),
    )?;
    Ok(Schedule::new(vec![
        Segment::Stages(prefix),
        Segment::Family(family),
    ])?)
}

/// Result of the repetition solve on the edged cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepetitionSolve {
    /// `s` repeated `exponent − 1` times.
    pub schedule: Schedule,
    /// lcm of the orders of the per-class permutations of `s`.
    pub exponent: u64,
    /// The uniform exponent: lcm of all element orders of `S₂₄`.
    pub global_exponent: BigUint,
}

/// Undoes a twist-finite schedule on the edged cube by repeating it.
pub fn solve_edged_by_repetition(
    s: &Schedule,
    variant: CubeVariant,
) -> Result<RepetitionSolve, SolverError> {
    if !variant.is_edged() {
        return Err(SolverError::UnsupportedVariant(variant));
    }
    if !s.is_twist_finite() {
        return Err(SolverError::NotTwistFinite);
    }
    let exponent = repetition_exponent(s, variant)?;
    Ok(RepetitionSolve {
        schedule: inverse_by_repetition(s, variant)?,
        exponent,
        global_exponent: lcm_of_orders_s24(),
    })
}

/// A twist-finite schedule taking the solved configuration to one whose
/// diagonal clusters `C(α, α)`, `α ∈ I`, carry the coloring given for `I`.
///
/// Each class gets the generator schemas of its coloring in parallel over
/// `I` on both sides. Clusters with at most one coordinate in `I` are
/// restored; off-diagonal clusters with both coordinates in the same class
/// receive the diagonal permutation as well.
pub fn realize_diagonal_configs(
    targets: &[(PeriodicSet, ClusterColoring)],
) -> Result<Schedule, SolverError> {
    let mut seen = PeriodicSet::empty();
    let mut stage = Vec::new();
    let solved = ClusterColoring::solved();
    for (class, coloring) in targets {
        if !seen.intersect(class).is_empty() {
            return Err(SolverError::SetsNotDisjoint);
        }
        seen = seen.union(class);
        if *coloring == solved || class.is_empty() {
            continue;
        }
        let cms = synthesize_transition(&solved, coloring)?;
        for i in 0..cms.k() {
            if let Some(a) = cms.a[i] {
                stage.push(ScheduleItem::parallel(a, class.clone()));
            }
            if let Some(b) = cms.b[i] {
                stage.push(ScheduleItem::parallel(b, class.clone()));
            }
            if let Some(c) = cms.c[i] {
                stage.push(ScheduleItem::Single(c.twist()));
            }
        }
    }
    Ok(Schedule::new(vec![Segment::Stages(vec![stage])])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{apply_finite_sequence, solved_config, superflip_config, SuperflipKind};
    use crate::evaluate::sequences_equivalent;
    use crate::perm::Perm;

    fn shuffled(seed: u64) -> ClusterColoring {
        // even permutation from a small LCG
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut img: Vec<u8> = (0..24).collect();
        for i in (1..24).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            img.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = Perm::from_images(img);
        let p = if p.parity() == crate::perm::Parity::Odd {
            p.compose(&Perm::cycle(24, &[0, 1]))
        } else {
            p
        };
        ClusterColoring::solved().permuted(&p)
    }

    #[test]
    fn synthesized_transitions_are_cluster_move_solutions() {
        let samples = [(2, 1), (1, 0), (3, 3), (5, 2), (1, 4)];
        for seed in 0..4 {
            let from = shuffled(seed);
            let to = shuffled(seed + 100);
            let cms = synthesize_transition(&from, &to).unwrap();
            assert!(verify_cms(&cms, &from, &to, &samples), "seed {seed}");
        }
    }

    #[test]
    fn parallel_block_rejects_overlap() {
        let cms = generators::base_schema();
        let x = PeriodicSet::finite([1, 2]);
        let y = BlockIndices::set(PeriodicSet::finite([2, 3]));
        assert_eq!(parallel_block(&cms, &x, &y), Err(SolverError::SetsNotDisjoint));
    }

    fn assert_solves(cfg: &PresentedConfiguration) {
        let target = solved_config(cfg.variant);
        let s = solve_countable_edgeless(cfg, &target).unwrap();
        assert!(s.ordinal_length() <= crate::ordinal::OrdinalLen::OMEGA_SQUARED);
        let verdict = evaluate(&s, cfg, &Query::AllClasses).unwrap();
        assert!(verdict.all_converged());
        let out = verdict.config.unwrap();
        assert!(out
            .table()
            .values()
            .all(|c| *c == ClusterColoring::solved()));
        assert_eq!(out.center(), target.center());
    }

    #[test]
    fn solves_single_slice_twist() {
        for v in [CubeVariant::ODD_EDGELESS, CubeVariant::EVEN_EDGELESS] {
            let cfg = apply_finite_sequence(
                &solved_config(v),
                &[BasicTwist::new(Axis::X, ExtIndex::Pos(2), 1)],
            )
            .unwrap();
            assert_solves(&cfg);
        }
    }

    #[test]
    fn solves_rotated_center() {
        let cfg = apply_finite_sequence(
            &solved_config(CubeVariant::ODD_EDGELESS),
            &[
                BasicTwist::new(Axis::Y, ExtIndex::Zero, 1),
                BasicTwist::new(Axis::Z, ExtIndex::Pos(1), 3),
            ],
        )
        .unwrap();
        assert_solves(&cfg);
    }

    #[test]
    fn solves_superflips() {
        assert_solves(&superflip_config(SuperflipKind::Omega));
        assert_solves(&superflip_config(SuperflipKind::OmegaStar));
    }

    #[test]
    fn edged_repetition_undoes() {
        let s = Schedule::from_twists(&[
            BasicTwist::new(Axis::X, ExtIndex::Pos(1), 1),
            BasicTwist::new(Axis::Y, ExtIndex::PosInf, 1),
            BasicTwist::new(Axis::Z, ExtIndex::Neg(2), 2),
        ]);
        let v = CubeVariant::ODD_EDGED;
        let r = solve_edged_by_repetition(&s, v).unwrap();
        let e = BigUint::from(r.exponent);
        assert_eq!(&r.global_exponent % &e, BigUint::from(0u8));
        let both = s.concat(&r.schedule).unwrap();
        assert!(sequences_equivalent(&both, &Schedule::empty(), v).unwrap());
        assert_eq!(
            solve_edged_by_repetition(&s, CubeVariant::ODD_EDGELESS),
            Err(SolverError::UnsupportedVariant(CubeVariant::ODD_EDGELESS))
        );
    }

    #[test]
    fn diagonal_realization() {
        let odd = PeriodicSet::residue_class(2, 1);
        let target = shuffled(7);
        let s = realize_diagonal_configs(&[(odd, target.clone())]).unwrap();
        assert!(s.is_twist_finite());
        let v = CubeVariant::ODD_EDGELESS;
        let out = evaluate(&s, &solved_config(v), &Query::AllClasses)
            .unwrap()
            .config
            .unwrap();
        for (x, want) in [(1, &target), (3, &target), (2, &ClusterColoring::solved())] {
            assert_eq!(&out.cluster_coloring_at(ClusterId::rep(x, x)).unwrap(), want);
        }
        assert_eq!(
            out.cluster_coloring_at(ClusterId::rep(2, 1)).unwrap(),
            ClusterColoring::solved()
        );
        assert_eq!(
            out.cluster_coloring_at(ClusterId::rep(3, 0)).unwrap(),
            ClusterColoring::solved()
        );
    }
}
