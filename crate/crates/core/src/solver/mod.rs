//! 0-1 assignments with exactly one 1 per edge (STATES01), criticality and
//! parity proofs.

mod exact;
mod parity;

pub use exact::EdgeSystem;
pub use parity::{find_parity_subsets, has_parity_proof};

use thiserror::Error;

use crate::mmp::Hypergraph;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("hypergraph {0} is not a KS set")]
    NotKs(String),
}

/// `values[v]` in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<u8>,
}

impl Assignment {
    /// Every edge holds exactly one 1.
    pub fn satisfies(&self, h: &Hypergraph) -> bool {
        self.values.len() == h.vertex_count()
            && h.edges().iter().all(|e| e.iter().filter(|&&v| self.values[v as usize] == 1).count() == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsVerdict {
    pub is_ks: bool,
    pub witness: Option<Assignment>,
    pub is_critical: Option<bool>,
}

pub fn solve01(h: &Hypergraph) -> KsVerdict {
    let sys = EdgeSystem::new(h);
    match sys.solve(&sys.full()) {
        Some(chosen) => KsVerdict {
            is_ks: false,
            witness: Some(Assignment { values: sys.assignment(&chosen) }),
            is_critical: None,
        },
        None => KsVerdict { is_ks: true, witness: None, is_critical: None },
    }
}

/// Whether removing any single edge leaves a non-KS hypergraph. Vertices
/// orphaned by the removal carry no constraint, so the child is the same
/// system over a smaller edge universe.
pub fn is_critical(h: &Hypergraph) -> Result<bool, SolverError> {
    let sys = EdgeSystem::new(h);
    let full = sys.full();
    if !sys.is_ks(&full) {
        return Err(SolverError::NotKs(h.name()));
    }
    Ok(critical_in(&sys, &full))
}

/// `universe` must be KS in `sys`.
pub fn critical_in(sys: &EdgeSystem, universe: &[u64]) -> bool {
    let members: Vec<usize> = (0..sys.edge_count()).filter(|&i| universe[i / 64] >> (i % 64) & 1 == 1).collect();
    par::all_range(members.len(), |j| {
        let e = members[j];
        let mut child = universe.to_vec();
        child[e / 64] &= !(1 << (e % 64));
        !sys.is_ks(&child)
    })
}

/// Full verdict including criticality when KS.
pub fn classify(h: &Hypergraph) -> KsVerdict {
    let mut v = solve01(h);
    if v.is_ks {
        v.is_critical = Some(is_critical(h).expect("verdict is KS"));
    }
    v
}
