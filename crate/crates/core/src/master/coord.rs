use std::collections::HashMap;

use crate::algebra::{hermitian_inner, normalize_ray, parse_component_in, Field, Ray, RayTable};
use crate::bitset::BitSet;
use crate::mmp::{CoordinatizationBlock, Hypergraph};

use crate::structure::{search_embedding, EmbedSearch};

use super::build::{cliques_of_size, master_from_rays, orthogonality_graph, MasterOptions};
use super::rays::{enumerate_rays, ComponentSet};
use super::MasterError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Missing { vertex: usize },
    Unparseable { vertex: usize, message: String },
    Arity { vertex: usize, found: usize },
    ZeroVector { vertex: usize },
    NotOrthogonal { edge: usize, a: usize, b: usize },
    Proportional { a: usize, b: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoordinatizationReport {
    pub violations: Vec<Violation>,
}

impl CoordinatizationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Parse each block entry to a ray; problems are reported, not raised.
pub fn parse_block(
    h: &Hypergraph,
    block: &CoordinatizationBlock,
    field: &Field,
) -> (Vec<Option<Ray>>, Vec<Violation>) {
    let n = h.dimension();
    let mut rays = vec![None; h.vertex_count()];
    let mut bad = Vec::new();
    for (v, slot) in rays.iter_mut().enumerate() {
        let Some(exprs) = block.entries.get(&v) else {
            bad.push(Violation::Missing { vertex: v });
            continue;
        };
        if exprs.len() != n {
            bad.push(Violation::Arity { vertex: v, found: exprs.len() });
            continue;
        }
        let parsed: Result<Vec<_>, _> = exprs.iter().map(|e| parse_component_in(field, e)).collect();
        match parsed {
            Err(e) => bad.push(Violation::Unparseable { vertex: v, message: e.to_string() }),
            Ok(vals) => match normalize_ray(&vals) {
                Ok(r) => *slot = Some(r),
                Err(_) => bad.push(Violation::ZeroVector { vertex: v }),
            },
        }
    }
    (rays, bad)
}

/// Every edge pairwise orthogonal and all vertex rays distinct.
pub fn verify_coordinatization(h: &Hypergraph, block: &CoordinatizationBlock, field: &Field) -> CoordinatizationReport {
    let (rays, mut violations) = parse_block(h, block, field);
    for (ei, e) in h.edges().iter().enumerate() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                if let (Some(ra), Some(rb)) = (&rays[a as usize], &rays[b as usize]) {
                    let zero = hermitian_inner(ra.entries(), rb.entries()).map(|x| x.is_zero()).unwrap_or(false);
                    if !zero {
                        violations.push(Violation::NotOrthogonal { edge: ei, a: a as usize, b: b as usize });
                    }
                }
            }
        }
    }
    let mut first: HashMap<&Ray, usize> = HashMap::new();
    for (v, r) in rays.iter().enumerate() {
        if let Some(r) = r {
            if let Some(&u) = first.get(r) {
                violations.push(Violation::Proportional { a: u, b: v });
            } else {
                first.insert(r, v);
            }
        }
    }
    CoordinatizationReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordSearch {
    /// `rays[v]` for each vertex.
    Found(Vec<Ray>),
    Unsat,
    BudgetExhausted,
}

/// Search for distinct rays over `c` making every edge of `h` an
/// orthogonal set. `budget` caps the number of tentative assignments.
pub fn find_coordinatization(
    h: &Hypergraph,
    c: &ComponentSet,
    tuple_limit: u64,
    budget: u64,
) -> Result<CoordSearch, MasterError> {
    let rays = enumerate_rays(c, tuple_limit)?;
    let n = c.dimension();
    if h.edge_count() > 0 && h.edges().iter().all(|e| e.len() == n) {
        // every orthogonal n-tuple is a master edge, so a coordinatization
        // is exactly an embedding of h into the master
        let opts = MasterOptions { tuple_limit, ..MasterOptions::default() };
        let master = master_from_rays(c.field(), rays, n, &opts)?;
        return Ok(match search_embedding(h, &master.hypergraph, budget, true) {
            EmbedSearch::Found(map) => {
                CoordSearch::Found(map.iter().map(|&w| master.coordinatization[w as usize].clone()).collect())
            }
            EmbedSearch::NotFound => CoordSearch::Unsat,
            EmbedSearch::BudgetExhausted => CoordSearch::BudgetExhausted,
        });
    }
    let table = RayTable::new(c.field(), rays);
    let adj = orthogonality_graph(&table);
    let r = table.len();

    // a vertex on an s-edge needs a ray lying in some s-clique
    let mut sizes: Vec<usize> = h.edges().iter().map(|e| e.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut allowed: HashMap<usize, BitSet> = HashMap::new();
    for &s in &sizes {
        let mut set = BitSet::new(r);
        for clique in cliques_of_size(&adj, s, u64::MAX)? {
            for v in clique {
                set.insert(v as usize);
            }
        }
        allowed.insert(s, set);
    }
    let mut domains = vec![BitSet::full(r); h.vertex_count()];
    for e in h.edges() {
        for &v in e {
            domains[v as usize].intersect_with(&allowed[&e.len()]);
        }
    }
    let mut nbrs = vec![Vec::new(); h.vertex_count()];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b && !nbrs[a as usize].contains(&b) {
                    nbrs[a as usize].push(b);
                }
            }
        }
    }

    let mut search = Search { adj: &adj, nbrs: &nbrs, assigned: vec![None; h.vertex_count()], nodes: 0, budget };
    let outcome = search.run(domains);
    let rays = table.into_rays();
    Ok(match outcome {
        Outcome::Found => {
            CoordSearch::Found(search.assigned.iter().map(|a| rays[a.expect("total")].clone()).collect())
        }
        Outcome::Unsat => CoordSearch::Unsat,
        Outcome::Budget => CoordSearch::BudgetExhausted,
    })
}

enum Outcome {
    Found,
    Unsat,
    Budget,
}

struct Search<'a> {
    adj: &'a [BitSet],
    nbrs: &'a [Vec<u32>],
    assigned: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, domains: Vec<BitSet>) -> Outcome {
        // most constrained unassigned vertex; ties by degree in h
        let pick = (0..self.assigned.len())
            .filter(|&v| self.assigned[v].is_none())
            .min_by_key(|&v| (domains[v].len(), usize::MAX - self.nbrs[v].len()));
        let Some(v) = pick else {
            return Outcome::Found;
        };
        for ray in domains[v].iter() {
            if self.nodes >= self.budget {
                return Outcome::Budget;
            }
            self.nodes += 1;
            let mut next = domains.clone();
            let mut dead = false;
            for &w in &self.nbrs[v] {
                let w = w as usize;
                if self.assigned[w].is_none() {
                    next[w].intersect_with(&self.adj[ray]);
                }
            }
            for (w, d) in next.iter_mut().enumerate() {
                if w != v && self.assigned[w].is_none() {
                    d.remove(ray);
                    dead |= d.is_empty();
                }
            }
            if dead {
                continue;
            }
            self.assigned[v] = Some(ray);
            match self.run(next) {
                Outcome::Unsat => {}
                other => return other,
            }
            self.assigned[v] = None;
        }
        Outcome::Unsat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    fn field() -> Field {
        Field::default_field()
    }

    #[test]
    fn detects_non_orthogonal_edge() {
        let line = parse_line("12.{1={1,0},2={1,1}}", 2).unwrap();
        let rep = verify_coordinatization(&line.hypergraph, line.coordinatization.as_ref().unwrap(), &field());
        assert_eq!(rep.violations, vec![Violation::NotOrthogonal { edge: 0, a: 0, b: 1 }]);
    }

    #[test]
    fn detects_proportional_and_missing() {
        let line = parse_line("12,23.{1={1,0},2={0,1},3={2,0}}", 2).unwrap();
        let rep = verify_coordinatization(&line.hypergraph, line.coordinatization.as_ref().unwrap(), &field());
        assert_eq!(rep.violations, vec![Violation::Proportional { a: 0, b: 2 }]);
        let line = parse_line("12.{1={1,0}}", 2).unwrap();
        let rep = verify_coordinatization(&line.hypergraph, line.coordinatization.as_ref().unwrap(), &field());
        assert_eq!(rep.violations, vec![Violation::Missing { vertex: 1 }]);
    }

    #[test]
    fn triangle_in_the_plane_has_no_coordinatization() {
        let h = parse_line("12,23,31.", 2).unwrap().hypergraph;
        let c = ComponentSet::parse("0,1,-1,i,-i", 2, &field()).unwrap();
        assert_eq!(find_coordinatization(&h, &c, 1 << 20, 1 << 20).unwrap(), CoordSearch::Unsat);
    }

    #[test]
    fn path_in_the_plane_is_coordinatized() {
        let h = parse_line("12,34.", 2).unwrap().hypergraph;
        let c = ComponentSet::parse("0,1,-1", 2, &field()).unwrap();
        let CoordSearch::Found(rays) = find_coordinatization(&h, &c, 1 << 20, 1 << 20).unwrap() else {
            panic!("expected a witness");
        };
        let block = super::super::coordinatization_block(&rays);
        assert!(verify_coordinatization(&h, &block, &field()).is_valid());
    }

    #[test]
    fn full_edges_embed_into_the_master() {
        let h = parse_line("1234,4567,789A,ABCD,DEFG,GHI1,I29C,35BE,68FH.", 4).unwrap().hypergraph;
        let c = ComponentSet::parse("-1,0,1", 4, &field()).unwrap();
        let CoordSearch::Found(rays) = find_coordinatization(&h, &c, 1 << 20, u64::MAX).unwrap() else {
            panic!("expected a witness");
        };
        let block = super::super::coordinatization_block(&rays);
        assert!(verify_coordinatization(&h, &block, &field()).is_valid());
        let c = ComponentSet::parse("0,1", 4, &field()).unwrap();
        assert_eq!(find_coordinatization(&h, &c, 1 << 20, u64::MAX).unwrap(), CoordSearch::Unsat);
    }

    #[test]
    fn budget_is_reported() {
        let h = parse_line("12,34.", 2).unwrap().hypergraph;
        let c = ComponentSet::parse("0,1,-1", 2, &field()).unwrap();
        assert_eq!(find_coordinatization(&h, &c, 1 << 20, 0).unwrap(), CoordSearch::BudgetExhausted);
    }
}
