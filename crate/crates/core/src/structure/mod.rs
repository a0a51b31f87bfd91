//! Isomorphism reduction, subgraph tests, loops and δ-pairs.

mod canon;
mod loops;
mod subgraph;

pub use canon::{
    automorphism_generators, canonical_form, canonical_key, edge_orbits, vertex_orbits, Canonical, CanonicalKey,
};
pub use loops::{find_max_loop, LoopResult};
pub use subgraph::{find_embedding, search_embedding, subgraph_of, verify_embedding, EmbedSearch};

use std::collections::HashSet;

use thiserror::Error;

use crate::mmp::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("a loop needs at least 3 edges, found {0}")]
    TooFewEdges(usize),
    #[error("δ-pairs need dimension at least 4, found {0}")]
    DimensionTooSmall(usize),
}

/// Unordered edge pairs `(i, j)`, `i < j`, sharing exactly `n - 2` vertices.
pub fn delta_pairs(h: &Hypergraph) -> Result<Vec<(usize, usize)>, StructureError> {
    let n = h.dimension();
    if n < 4 {
        return Err(StructureError::DimensionTooSmall(n));
    }
    let mut out = Vec::new();
    for (i, a) in h.edges().iter().enumerate() {
        for (j, b) in h.edges().iter().enumerate().skip(i + 1) {
            if a.iter().filter(|v| b.contains(v)).count() == n - 2 {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// First representative of each isomorphism class, in input order.
pub fn dedup_stream<I>(input: I) -> impl Iterator<Item = Hypergraph>
where
    I: IntoIterator<Item = Hypergraph>,
{
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    input.into_iter().filter(move |h| seen.insert(canonical_key(h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    #[test]
    fn delta_pairs_share_two_vertices_in_four_dimensions() {
        let h = parse_line("1234,3456,5678.", 4).unwrap().hypergraph;
        assert_eq!(delta_pairs(&h).unwrap(), vec![(0, 1), (1, 2)]);
        let single = parse_line("1234.", 4).unwrap().hypergraph;
        assert!(delta_pairs(&single).unwrap().is_empty());
        let plane = parse_line("12.", 2).unwrap().hypergraph;
        assert_eq!(delta_pairs(&plane), Err(StructureError::DimensionTooSmall(2)));
    }

    #[test]
    fn repeated_input_keeps_one() {
        let h = parse_line("1234,4567,789A,ABCD,DEFG,GHI1,I29C,35BE,68FH.", 4).unwrap().hypergraph;
        assert_eq!(dedup_stream(vec![h; 5]).count(), 1);
    }
}
