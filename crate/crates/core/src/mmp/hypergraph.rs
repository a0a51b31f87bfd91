use std::collections::{HashMap, HashSet};
use std::fmt;

use super::MmpError;

/// A vertex-labelled hypergraph in dimension `n`.
///
/// Vertices are `0..vertex_count`; every vertex lies in at least one edge,
/// no edge repeats a vertex and no two edges have the same vertex set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    dimension: usize,
    vertex_count: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Build from edges over arbitrary vertex ids. Ids are interned in
    /// first-appearance order; duplicate edges collapse with a warning.
    pub fn from_edges<I, E>(dimension: usize, edges: I) -> Result<Hypergraph, MmpError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        let mut ids: HashMap<u32, u32> = HashMap::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        for (idx, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.is_empty() {
                return Err(MmpError::EmptyEdge { edge: idx });
            }
            let mut key = e.to_vec();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(MmpError::RepeatedVertex { edge: idx });
            }
            if !seen.insert(key) {
                log::warn!("duplicate edge {idx} dropped");
                continue;
            }
            let mapped = e
                .iter()
                .map(|v| {
                    let next = ids.len() as u32;
                    *ids.entry(*v).or_insert(next)
                })
                .collect();
            out.push(mapped);
        }
        Ok(Hypergraph { dimension, vertex_count: ids.len(), edges: out })
    }

    /// Caller guarantees vertices are `0..vertex_count`, all used, edges valid.
    pub(crate) fn from_parts(dimension: usize, vertex_count: usize, edges: Vec<Vec<u32>>) -> Hypergraph {
        debug_assert!({
            let mut used = vec![false; vertex_count];
            edges.iter().flatten().for_each(|&v| used[v as usize] = true);
            used.into_iter().all(|u| u)
        });
        Hypergraph { dimension, vertex_count, edges }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    /// `"k-m"`.
    pub fn name(&self) -> String {
        format!("{}-{}", self.vertex_count, self.edges.len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &v in self.edges.iter().flatten() {
            d[v as usize] += 1;
        }
        d
    }

    /// For each vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }

    /// Keep the listed edges (in the given order) and drop orphaned vertices.
    /// Returns the sub-hypergraph and, per new vertex, its old index.
    pub fn restrict_to_edges(&self, keep: &[usize]) -> (Hypergraph, Vec<u32>) {
        let mut map = vec![u32::MAX; self.vertex_count];
        let mut back = Vec::new();
        let edges = keep
            .iter()
            .map(|&i| {
                self.edges[i]
                    .iter()
                    .map(|&v| {
                        if map[v as usize] == u32::MAX {
                            map[v as usize] = back.len() as u32;
                            back.push(v);
                        }
                        map[v as usize]
                    })
                    .collect()
            })
            .collect();
        (Hypergraph { dimension: self.dimension, vertex_count: back.len(), edges }, back)
    }

    /// Remove one edge, dropping vertices left without edges.
    pub fn without_edge(&self, edge: usize) -> Hypergraph {
        let keep: Vec<usize> = (0..self.edges.len()).filter(|&i| i != edge).collect();
        self.restrict_to_edges(&keep).0
    }

    /// Apply a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[u32]) -> Hypergraph {
        assert_eq!(perm.len(), self.vertex_count);
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v as usize]).collect()).collect();
        Hypergraph { dimension: self.dimension, vertex_count: self.vertex_count, edges }
    }

    /// Same hypergraph with vertices renumbered in first-appearance order.
    pub fn normalized(&self) -> Hypergraph {
        let keep: Vec<usize> = (0..self.edges.len()).collect();
        self.restrict_to_edges(&keep).0
    }

    /// Edges as sorted vertex lists, themselves sorted.
    pub fn edge_set(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self
            .edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                e
            })
            .collect();
        v.sort();
        v
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph({}, n={}, {})", self.name(), self.dimension, super::serialize(self, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interns_in_first_appearance_order() {
        let h = Hypergraph::from_edges(3, [vec![10, 20, 30], vec![30, 40, 50]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(h.name(), "5-2");
        assert_eq!(h.degrees(), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn rejects_repeated_vertices_and_empty_edges() {
        assert!(matches!(Hypergraph::from_edges(2, [vec![1, 1]]), Err(MmpError::RepeatedVertex { .. })));
        assert!(matches!(Hypergraph::from_edges(2, [vec![]]), Err(MmpError::EmptyEdge { .. })));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let h = Hypergraph::from_edges(2, [vec![1, 2], vec![2, 1], vec![2, 3]]).unwrap();
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn edge_removal_drops_orphans() {
        let h = Hypergraph::from_edges(2, [vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let c = h.without_edge(2);
        assert_eq!(c.name(), "3-2");
        let c = h.without_edge(1);
        assert_eq!(c.name(), "4-2");
    }
}
