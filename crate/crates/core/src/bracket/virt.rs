//! Virtual knots with unit Jones polynomial from classical diagrams.
//!
//! Switching a suitable subset of crossings unknots a classical diagram;
//! virtualizing the same subset instead gives a virtual diagram with the
//! Jones polynomial of the unknot.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use super::{f_poly, BracketError};
use crate::diagram::Diagram;
use crate::moves::{greedy_simplify, random_walk};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VirtError {
    #[error("input must be a classical diagram without nodes")]
    NotClassical,
    #[error("no unknotting subset of at most {0} crossings found")]
    NotFound(usize),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// Search limits for [`construct_virt_with`].
#[derive(Debug, Clone, Copy)]
pub struct VirtSearch {
    /// Largest subset size tried.
    pub max_subset: usize,
    /// Number of seeded walks tried when greedy simplification stalls.
    pub walks: u64,
    /// Length of each walk.
    pub walk_steps: usize,
    /// Move budget for each simplification.
    pub budget: usize,
}

impl Default for VirtSearch {
    fn default() -> Self {
        VirtSearch { max_subset: 6, walks: 24, walk_steps: 8, budget: 400 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VirtResult {
    /// Crossings that were virtualized.
    pub subset: Vec<usize>,
    pub diagram: Diagram,
}

/// Heuristic unknot test: simplification, possibly after seeded walks, must
/// reach a crossingless loop.
pub fn looks_unknotted(d: &Diagram, search: &VirtSearch) -> bool {
    if d.num_components() != 1 {
        return false;
    }
    if greedy_simplify(d, search.budget).num_crossings() == 0 {
        return true;
    }
    (0..search.walks).any(|seed| {
        let w = random_walk(d, search.walk_steps, seed);
        greedy_simplify(&w, search.budget).num_crossings() == 0
    })
}

pub fn construct_virt(d: &Diagram) -> Result<VirtResult, VirtError> {
    construct_virt_with(d, &VirtSearch::default())
}

/// Tries subsets in ascending size; the first whose switch is (heuristically)
/// an unknot with `f = 1` is virtualized.
pub fn construct_virt_with(d: &Diagram, search: &VirtSearch) -> Result<VirtResult, VirtError> {
    if d.num_nodes() > 0 || !d.is_planar() {
        return Err(VirtError::NotClassical);
    }
    let n = d.num_crossings();
    for k in 0..=search.max_subset.min(n) {
        for subset in (0..n).combinations(k) {
            let mut switched = d.clone();
            for &i in &subset {
                switched = switched.switch(i).expect("crossing ids are stable under switching");
            }
            if !f_poly(&switched)?.is_one() || !looks_unknotted(&switched, search) {
                continue;
            }
            let mut diagram = d.clone();
            for &i in &subset {
                diagram = diagram.virtualize(i).expect("crossing ids are stable under virtualization");
            }
            return Ok(VirtResult { subset, diagram });
        }
    }
    Err(VirtError::NotFound(search.max_subset.min(n)))
}
