//! Cross-check of the presented evaluator against explicit simulation of a
//! finite surrogate cube.

use std::collections::HashMap;

use thiserror::Error;

use crate::config::{window_clusters, Color, ConfigError, PresentedConfiguration};
use crate::evaluate::{evaluate, Query};
use crate::geometry::{
    cells_of_cluster, locate, surrogate_cells, surrogate_simulate, BasicTwist, ClusterId,
    GeometryError,
};
use crate::schedule::{Schedule, ScheduleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the presented evaluation diverged")]
    Diverged,
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowDiff {
    pub clusters: usize,
    pub cells: usize,
    /// `(cluster, slot, presented, surrogate)` for every disagreeing cell.
    pub mismatches: Vec<(ClusterId, usize, Color, Color)>,
}

impl WindowDiff {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Applies `seq` to `cfg` both at class level and on the surrogate with
/// `L = {1..n}`, and compares every cell of every cluster with coordinates
/// at most `n`.
pub fn window_diff(
    cfg: &PresentedConfiguration,
    seq: &[BasicTwist],
    n: u64,
) -> Result<WindowDiff, OracleError> {
    let v = cfg.variant;
    let verdict = evaluate(&Schedule::from_twists(seq), cfg, &Query::AllClasses)?;
    let presented = verdict.config.ok_or(OracleError::Diverged)?;

    let mut start: HashMap<crate::geometry::Cell, Color> = HashMap::new();
    for cell in surrogate_cells(n, v) {
        let (id, slot) = locate(cell);
        start.insert(cell, cfg.cluster_coloring_at(id)?.0[slot.0 as usize]);
    }
    let end = surrogate_simulate(n, v, seq, &start)?;

    let ids = window_clusters(v, n);
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for &id in &ids {
        let got = presented.cluster_coloring_at(id)?;
        for (slot, cell) in cells_of_cluster(id).into_iter().enumerate() {
            cells += 1;
            let want = end[&cell];
            if got.0[slot] != want {
                mismatches.push((id, slot, got.0[slot], want));
            }
        }
    }
    Ok(WindowDiff {
        clusters: ids.len(),
        cells,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::solved_config;
    use crate::geometry::{Axis, CubeVariant, ExtIndex};

    #[test]
    fn short_sequences_agree() {
        let seq = [
            BasicTwist::new(Axis::X, ExtIndex::Pos(2), 1),
            BasicTwist::new(Axis::Y, ExtIndex::PosInf, 3),
            BasicTwist::new(Axis::Z, ExtIndex::Neg(1), 2),
        ];
        for v in CubeVariant::ALL {
            let d = window_diff(&solved_config(v), &seq, 3).unwrap();
            assert!(d.is_clean(), "{v}: {:?}", d.mismatches);
            assert_eq!(d.cells, d.clusters * 24 - if v.is_odd() { 18 } else { 0 });
        }
    }
}
