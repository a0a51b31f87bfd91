use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::master::components;
use crate::mmp::Hypergraph;
use crate::par;
use crate::solver::{has_parity_proof, EdgeSystem};
use crate::structure::{canonical_key, delta_pairs, CanonicalKey};

use super::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Level by level over every KS subset, up to isomorphism.
    Breadth,
    /// `samples` random descents from the master, each removing random
    /// edges while the set stays KS, ending at a critical set.
    Random { seed: u64, samples: usize },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassFilters {
    pub criticals_only: bool,
    /// Breadth generation stops after the level with this many edges.
    pub min_edges: usize,
}

/// Per-set metadata of a KS subset of a master.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub k: usize,
    pub m: usize,
    pub is_ks: bool,
    pub is_critical: bool,
    pub has_parity_proof: bool,
    pub delta_count: usize,
    /// `(k, m)` of each connected component, largest first.
    pub components: Vec<(usize, usize)>,
    pub canonical_key: CanonicalKey,
    /// Master edge indices of the representative.
    pub master_edges: Vec<usize>,
    /// The representative with normalized labels.
    pub hypergraph: Hypergraph,
}

impl ClassRecord {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    fn build(master: &Hypergraph, edges: Vec<usize>, is_critical: bool, key: CanonicalKey) -> ClassRecord {
        let (h, _) = master.restrict_to_edges(&edges);
        let mut comps: Vec<(usize, usize)> = components(&h)
            .iter()
            .map(|g| {
                let mut vs: Vec<u32> = g.iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
                vs.sort_unstable();
                vs.dedup();
                (vs.len(), g.len())
            })
            .collect();
        comps.sort_by(|a, b| b.cmp(a));
        ClassRecord {
            k: h.vertex_count(),
            m: h.edge_count(),
            is_ks: true,
            is_critical,
            has_parity_proof: has_parity_proof(&h),
            delta_count: delta_pairs(&h).map(|d| d.len()).unwrap_or(0),
            components: comps,
            canonical_key: key,
            master_edges: edges,
            hypergraph: h,
        }
    }
}

/// Progress of one level of breadth generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelStats {
    pub edges: usize,
    pub sets: usize,
    pub criticals: usize,
}

type Mask = Vec<u64>;

fn members(mask: &[u64], m: usize) -> Vec<usize> {
    (0..m).filter(|&i| mask[i / 64] >> (i % 64) & 1 == 1).collect()
}

fn key_of(master: &Hypergraph, mask: &[u64]) -> CanonicalKey {
    canonical_key(&master.restrict_to_edges(&members(mask, master.edge_count())).0)
}

/// Non-isomorphic KS subsets of `master` obtained by deleting edges, the
/// master included. Records come level by level from `m` edges down, each
/// level sorted by canonical key. `on_level` sees every level as it ends.
pub fn generate_class(
    master: &Hypergraph,
    filters: ClassFilters,
    strategy: Strategy,
    mut on_level: impl FnMut(LevelStats),
) -> Result<Vec<ClassRecord>, PipelineError> {
    let sys = EdgeSystem::new(master);
    let full = sys.full();
    if !sys.is_ks(&full) {
        return Err(PipelineError::MasterNotKs(master.name()));
    }
    match strategy {
        Strategy::Breadth => Ok(breadth(master, &sys, full, filters, &mut on_level)),
        Strategy::Random { seed, samples } => Ok(random(master, &sys, full, seed, samples)),
    }
}

fn breadth(
    master: &Hypergraph,
    sys: &EdgeSystem,
    full: Mask,
    filters: ClassFilters,
    on_level: &mut impl FnMut(LevelStats),
) -> Vec<ClassRecord> {
    let m = master.edge_count();
    let mut out = Vec::new();
    let mut level: Vec<(CanonicalKey, Mask)> = vec![(key_of(master, &full), full)];
    let mut edges = m;
    while !level.is_empty() {
        // KS children of every set on this level
        let children: Vec<Vec<Mask>> = par::map(&level, |(_, mask)| {
            members(mask, m)
                .into_iter()
                .filter_map(|e| {
                    let mut c = mask.clone();
                    c[e / 64] &= !(1 << (e % 64));
                    sys.is_ks(&c).then_some(c)
                })
                .collect()
        });
        let criticals = children.iter().filter(|c| c.is_empty()).count();
        on_level(LevelStats { edges, sets: level.len(), criticals });
        let records: Vec<ClassRecord> = par::map_range(level.len(), |i| {
            let critical = children[i].is_empty();
            if filters.criticals_only && !critical {
                return None;
            }
            let (key, mask) = &level[i];
            Some(ClassRecord::build(master, members(mask, m), critical, key.clone()))
        })
        .into_iter()
        .flatten()
        .collect();
        out.extend(records);
        if edges <= filters.min_edges {
            break;
        }

        // distinct child masks, then one representative per isomorphism class
        let mut seen: HashSet<Mask> = HashSet::new();
        let mut unique: Vec<Mask> = Vec::new();
        for c in children.into_iter().flatten() {
            if seen.insert(c.clone()) {
                unique.push(c);
            }
        }
        drop(seen);
        unique.sort_unstable();
        let keys: Vec<CanonicalKey> = par::map(&unique, |c| key_of(master, c));
        let mut best: HashMap<CanonicalKey, Mask> = HashMap::new();
        for (key, mask) in keys.into_iter().zip(unique) {
            best.entry(key).or_insert(mask);
        }
        let mut next: Vec<(CanonicalKey, Mask)> = best.into_iter().collect();
        next.sort_unstable();
        level = next;
        edges -= 1;
    }
    out
}

fn random(master: &Hypergraph, sys: &EdgeSystem, full: Mask, seed: u64, samples: usize) -> Vec<ClassRecord> {
    let m = master.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: HashMap<CanonicalKey, Mask> = HashMap::new();
    for _ in 0..samples {
        let mut cur = full.clone();
        loop {
            let mut order = members(&cur, m);
            order.shuffle(&mut rng);
            let next = order.into_iter().find_map(|e| {
                let mut c = cur.clone();
                c[e / 64] &= !(1 << (e % 64));
                sys.is_ks(&c).then_some(c)
            });
            match next {
                Some(c) => cur = c,
                None => break,
            }
        }
        found.entry(key_of(master, &cur)).or_insert(cur);
    }
    let mut sets: Vec<(CanonicalKey, Mask)> = found.into_iter().collect();
    sets.sort_unstable();
    sets.sort_by_key(|(_, mask)| std::cmp::Reverse(members(mask, m).len()));
    sets.into_iter().map(|(key, mask)| ClassRecord::build(master, members(&mask, m), true, key)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    #[test]
    fn triangle_class_is_itself() {
        let h = parse_line("12,23,31.", 2).unwrap().hypergraph;
        let recs = generate_class(&h, ClassFilters::default(), Strategy::Breadth, |_| {}).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].is_critical && recs[0].has_parity_proof);
    }

    #[test]
    fn non_ks_master_is_rejected() {
        let h = parse_line("12,23.", 2).unwrap().hypergraph;
        assert!(matches!(
            generate_class(&h, ClassFilters::default(), Strategy::Breadth, |_| {}),
            Err(PipelineError::MasterNotKs(_))
        ));
    }

    fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
        use itertools::Itertools;
        if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let target = b.edge_set();
        (0..a.vertex_count() as u32)
            .permutations(a.vertex_count())
            .any(|p| a.relabel(&p).edge_set() == target)
    }

    #[test]
    fn breadth_matches_brute_force_on_two_triangles() {
        let h = parse_line("12,23,31,14,45,51.", 2).unwrap().hypergraph;
        let sys = EdgeSystem::new(&h);
        let mut classes: Vec<Hypergraph> = Vec::new();
        for mask in 1u64..(1 << 6) {
            if sys.is_ks(&[mask]) {
                let sub = h.restrict_to_edges(&members(&[mask], 6)).0;
                if !classes.iter().any(|c| isomorphic(c, &sub)) {
                    classes.push(sub);
                }
            }
        }
        let recs = generate_class(&h, ClassFilters::default(), Strategy::Breadth, |_| {}).unwrap();
        assert_eq!(recs.len(), classes.len());
        for c in &classes {
            assert_eq!(recs.iter().filter(|r| isomorphic(&r.hypergraph, c)).count(), 1);
        }
        let crit = generate_class(&h, ClassFilters { criticals_only: true, ..ClassFilters::default() }, Strategy::Breadth, |_| {}).unwrap();
        assert_eq!(crit.len(), 1);
        assert_eq!((crit[0].k, crit[0].m), (3, 3));
    }

    #[test]
    fn min_edges_stops_early() {
        let h = parse_line("12,23,31,14,45,51.", 2).unwrap().hypergraph;
        let mut levels = Vec::new();
        let filters = ClassFilters { min_edges: 5, ..ClassFilters::default() };
        let recs = generate_class(&h, filters, Strategy::Breadth, |s| levels.push(s.edges)).unwrap();
        assert_eq!(levels, vec![6, 5]);
        assert!(recs.iter().all(|r| r.m >= 5));
    }

    #[test]
    fn random_descent_ends_at_criticals() {
        let h = parse_line("12,23,31,14,45,51.", 2).unwrap().hypergraph;
        let recs = generate_class(&h, ClassFilters::default(), Strategy::Random { seed: 1, samples: 8 }, |_| {}).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!((recs[0].k, recs[0].m), (3, 3));
    }
}
