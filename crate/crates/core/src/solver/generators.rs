//! The 3-cycle generator library: the base commutator and its 24 rotations.

use std::sync::LazyLock;

use crate::geometry::{cluster_twist_perm, Axis, ClusterId, Face, Rotation};
use crate::group::GeneratorSet;
use crate::perm::Perm;

use crate::moves::{ClusterMoveSolution, FaceType, SliceType};

/// A generator: its slot 3-cycle and the schema realizing it.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub perm: Perm,
    pub schema: ClusterMoveSolution,
}

/// The base schema for the cluster `C(β, α)`, with slice types at `x = β`
/// and `y = α`:
/// `R_α, F_β', R_α', F_β, U', F_β', R_α, F_β, R_α', U`
/// where `R = T_x⁻¹`, `F = T_z⁻¹`, `U = T_{y,+∞}⁻¹`.
pub fn base_schema() -> ClusterMoveSolution {
    let r = SliceType::new(Axis::X, 1, 3);
    let r_inv = SliceType::new(Axis::X, 1, 1);
    let f = SliceType::new(Axis::Z, 1, 3);
    let f_inv = SliceType::new(Axis::Z, 1, 1);
    let u = FaceType::new(Face::Up, 3);
    let u_inv = FaceType::new(Face::Up, 1);
    let mut s = ClusterMoveSolution::default();
    s.push(None, Some(r), None);
    s.push(Some(f_inv), Some(r_inv), None);
    s.push(Some(f), None, Some(u_inv));
    s.push(Some(f_inv), Some(r), None);
    s.push(Some(f), Some(r_inv), Some(u));
    s
}

fn face_letter(f: Face) -> char {
    match f {
        Face::Right => 'R',
        Face::Left => 'L',
        Face::Up => 'U',
        Face::Down => 'D',
        Face::Front => 'F',
        Face::Back => 'B',
    }
}

/// Slot permutation of a schema instantiated at the representative
/// `(x, y)`.
pub fn schema_perm(schema: &ClusterMoveSolution, x: u64, y: u64) -> Perm {
    let id = ClusterId::rep(x, y);
    schema
        .instantiate(x, y)
        .into_iter()
        .fold(Perm::identity(24), |acc, t| acc.then(cluster_twist_perm(t, id)))
}

static GENERATORS: LazyLock<Vec<Generator>> = LazyLock::new(|| {
    let base = base_schema();
    Rotation::all()
        .iter()
        .map(|g| {
            let schema = base.conjugate(g);
            let front = face_of(g, Face::Front);
            let up = face_of(g, Face::Up);
            Generator {
                name: format!("{}{}", face_letter(front), face_letter(up)),
                perm: schema_perm(&schema, 2, 1),
                schema,
            }
        })
        .collect()
});

fn face_of(g: &Rotation, f: Face) -> Face {
    let (axis, sign) = f.normal();
    let (a, s) = g.apply_axis(axis, sign);
    Face::from_normal(a, s)
}

/// The 24 generators, the base one (`FU`) first.
pub fn three_cycle_generators() -> &'static [Generator] {
    &GENERATORS
}

static GENERATOR_SET: LazyLock<GeneratorSet> = LazyLock::new(|| {
    GeneratorSet::new(
        GENERATORS.iter().map(|g| g.name.clone()).collect(),
        GENERATORS.iter().map(|g| g.perm.clone()).collect(),
    )
});

pub fn generator_set() -> &'static GeneratorSet {
    &GENERATOR_SET
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::QuadrantSlot;

    #[test]
    fn base_cycles_three_named_slots() {
        let g = &three_cycle_generators()[0];
        assert_eq!(g.name, "FU");
        // Front (+,−) → Up (+,−) → Up (−,−)
        let front = QuadrantSlot::new(Face::Front, 3).0 as usize;
        let up3 = QuadrantSlot::new(Face::Up, 3).0 as usize;
        let up2 = QuadrantSlot::new(Face::Up, 2).0 as usize;
        assert_eq!(g.perm, Perm::cycle(24, &[front, up3, up2]));
    }

    #[test]
    fn generators_are_distinct_three_cycles() {
        let gens = three_cycle_generators();
        assert_eq!(gens.len(), 24);
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(g.perm.support().len(), 3);
            assert_eq!(g.perm.order(), 3);
            for h in &gens[..i] {
                assert_ne!(g.perm, h.perm);
            }
        }
    }

    #[test]
    fn slot_action_is_independent_of_kind() {
        for g in three_cycle_generators() {
            for (x, y) in [(1, 0), (3, 0), (1, 1), (4, 4), (1, 2), (5, 3), (2, 7)] {
                assert_eq!(schema_perm(&g.schema, x, y), g.perm, "{} at {x},{y}", g.name);
            }
        }
    }
}
