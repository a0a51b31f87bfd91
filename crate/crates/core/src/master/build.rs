use std::sync::atomic::{AtomicU64, Ordering};

use crate::algebra::{format_component, Field, Ray, RayTable};
use crate::bitset::BitSet;
use crate::mmp::{CoordinatizationBlock, Hypergraph};
use crate::par;

use super::rays::{enumerate_rays, ComponentSet};
use super::MasterError;

#[derive(Debug, Clone, Copy)]
pub struct MasterOptions {
    /// Upper bound on `|components|^n`.
    pub tuple_limit: u64,
    /// Upper bound on clique-search nodes.
    pub clique_budget: u64,
}

impl Default for MasterOptions {
    fn default() -> Self {
        MasterOptions { tuple_limit: 100_000_000, clique_budget: 2_000_000_000 }
    }
}

/// A master hypergraph with its coordinatization (`coordinatization[v]` is
/// the ray of vertex `v`).
#[derive(Debug, Clone)]
pub struct MasterSet {
    pub hypergraph: Hypergraph,
    pub coordinatization: Vec<Ray>,
}

impl MasterSet {
    pub fn block(&self) -> CoordinatizationBlock {
        coordinatization_block(&self.coordinatization)
    }
}

/// Render rays as a coordinatization block keyed by vertex index.
pub fn coordinatization_block(rays: &[Ray]) -> CoordinatizationBlock {
    let mut block = CoordinatizationBlock::default();
    for (v, r) in rays.iter().enumerate() {
        block.entries.insert(v, r.entries().iter().map(format_component).collect());
    }
    block
}

/// Orthogonality graph as adjacency bitsets.
pub(crate) fn orthogonality_graph(table: &RayTable) -> Vec<BitSet> {
    let r = table.len();
    let rows: Vec<Vec<usize>> = par::map_range(r, |i| (i + 1..r).filter(|&j| table.orthogonal(i, j)).collect());
    let mut adj = vec![BitSet::new(r); r];
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    adj
}

/// All cliques of exactly `size` vertices, each ascending, in lexicographic order.
pub(crate) fn cliques_of_size(adj: &[BitSet], size: usize, budget: u64) -> Result<Vec<Vec<u32>>, MasterError> {
    let r = adj.len();
    if size == 0 {
        return Ok(Vec::new());
    }
    let nodes = AtomicU64::new(0);
    let per_root: Vec<Result<Vec<Vec<u32>>, MasterError>> = par::map_range(r, |v| {
        let mut out = Vec::new();
        let mut cand = adj[v].clone();
        cand.clear_below(v + 1);
        let mut stack = vec![v as u32];
        extend(adj, &mut stack, cand, size, &mut out, &nodes, budget)?;
        Ok(out)
    });
    let mut all = Vec::new();
    for part in per_root {
        all.extend(part?);
    }
    Ok(all)
}

fn extend(
    adj: &[BitSet],
    stack: &mut Vec<u32>,
    cand: BitSet,
    size: usize,
    out: &mut Vec<Vec<u32>>,
    nodes: &AtomicU64,
    budget: u64,
) -> Result<(), MasterError> {
    if stack.len() == size {
        out.push(stack.clone());
        return Ok(());
    }
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(MasterError::CliqueBudget(budget));
    }
    let need = size - stack.len();
    if cand.len() < need {
        return Ok(());
    }
    for u in cand.iter() {
        let mut next = cand.clone();
        next.intersect_with(&adj[u]);
        next.clear_below(u + 1);
        if next.len() + 1 < need {
            continue;
        }
        stack.push(u as u32);
        extend(adj, stack, next, size, out, nodes, budget)?;
        stack.pop();
    }
    Ok(())
}

/// The master hypergraph of a component set: every orthogonal n-tuple of
/// rays is an edge; rays in no edge are dropped. Vertices follow the
/// lexicographic order of their rays.
pub fn build_master(c: &ComponentSet, opts: &MasterOptions) -> Result<MasterSet, MasterError> {
    let rays = enumerate_rays(c, opts.tuple_limit)?;
    master_from_rays(c.field(), rays, c.dimension(), opts)
}

pub(crate) fn master_from_rays(
    field: &Field,
    rays: Vec<Ray>,
    n: usize,
    opts: &MasterOptions,
) -> Result<MasterSet, MasterError> {
    let table = RayTable::new(field, rays);
    let adj = orthogonality_graph(&table);
    let cliques = cliques_of_size(&adj, n, opts.clique_budget)?;
    let rays = table.into_rays();
    let mut used = vec![false; rays.len()];
    for &v in cliques.iter().flatten() {
        used[v as usize] = true;
    }
    let mut index = vec![u32::MAX; rays.len()];
    let mut coordinatization = Vec::new();
    for (i, r) in rays.into_iter().enumerate() {
        if used[i] {
            index[i] = coordinatization.len() as u32;
            coordinatization.push(r);
        }
    }
    let edges: Vec<Vec<u32>> = cliques.into_iter().map(|e| e.into_iter().map(|v| index[v as usize]).collect()).collect();
    let hypergraph = Hypergraph::from_parts(n, coordinatization.len(), edges);
    Ok(MasterSet { hypergraph, coordinatization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::check_mmp_validity;

    fn master(list: &str, n: usize) -> MasterSet {
        let c = ComponentSet::parse(list, n, &Field::default_field()).unwrap();
        build_master(&c, &MasterOptions::default()).unwrap()
    }

    #[test]
    fn binary_plane_master_drops_the_diagonal() {
        let m = master("0,1", 2);
        assert_eq!(m.hypergraph.name(), "2-1");
    }

    #[test]
    fn signed_unit_master_in_four_dimensions() {
        let m = master("-1,0,1", 4);
        assert_eq!(m.hypergraph.name(), "40-32");
        assert!(check_mmp_validity(&m.hypergraph).is_valid());
        let rep = super::super::verify_coordinatization(&m.hypergraph, &m.block(), &Field::default_field());
        assert!(rep.is_valid(), "{:?}", rep.violations);
    }

    #[test]
    fn clique_budget_is_enforced() {
        let c = ComponentSet::parse("-1,0,1", 4, &Field::default_field()).unwrap();
        let opts = MasterOptions { clique_budget: 3, ..MasterOptions::default() };
        assert!(matches!(build_master(&c, &opts), Err(MasterError::CliqueBudget(3))));
    }

    #[test]
    fn cliques_match_brute_force_on_small_graph() {
        let n = 9;
        let mut adj = vec![BitSet::new(n); n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if (i * 7 + j * 3) % 5 != 0 {
                    adj[i].insert(j);
                    adj[j].insert(i);
                    edges.push((i, j));
                }
            }
        }
        let got = cliques_of_size(&adj, 3, u64::MAX).unwrap();
        let mut want = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if adj[a].contains(b) && adj[a].contains(c) && adj[b].contains(c) {
                        want.push(vec![a as u32, b as u32, c as u32]);
                    }
                }
            }
        }
        assert_eq!(got, want);
    }
}
