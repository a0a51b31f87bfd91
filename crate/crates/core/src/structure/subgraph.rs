use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::mmp::Hypergraph;

use super::canon::vertex_orbits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedSearch {
    Found(Vec<u32>),
    NotFound,
    BudgetExhausted,
}

/// Whether some injective vertex map sends every edge of `small` onto an
/// edge of `big`.
pub fn subgraph_of(small: &Hypergraph, big: &Hypergraph) -> bool {
    find_embedding(small, big).is_some()
}

/// An injective map `small vertex -> big vertex` under which every edge of
/// `small` is an edge of `big`.
pub fn find_embedding(small: &Hypergraph, big: &Hypergraph) -> Option<Vec<u32>> {
    match search_embedding(small, big, u64::MAX, false) {
        EmbedSearch::Found(map) => Some(map),
        _ => None,
    }
}

/// Embedding search capped at `budget` tentative vertex images. With
/// `break_symmetry`, the first two matched vertices only try orbit
/// representatives of `big`'s automorphisms (the second under the
/// stabilizer of the first image), which keeps the answer unchanged.
pub fn search_embedding(small: &Hypergraph, big: &Hypergraph, budget: u64, break_symmetry: bool) -> EmbedSearch {
    if small.vertex_count() > big.vertex_count() || small.edge_count() > big.edge_count() {
        return EmbedSearch::NotFound;
    }
    let mut big_sizes: HashSet<usize> = HashSet::new();
    big.edges().iter().for_each(|e| {
        big_sizes.insert(e.len());
    });
    if small.edges().iter().any(|e| !big_sizes.contains(&e.len())) {
        return EmbedSearch::NotFound;
    }
    let mut m = Matcher::new(small, big, budget);
    if break_symmetry {
        m.root_orbits = Some(vertex_orbits(big, &[]));
    }
    m.run()
}

/// Check a proposed embedding.
pub fn verify_embedding(small: &Hypergraph, big: &Hypergraph, map: &[u32]) -> bool {
    if map.len() != small.vertex_count() || map.iter().any(|&v| v as usize >= big.vertex_count()) {
        return false;
    }
    let mut used = vec![false; big.vertex_count()];
    for &v in map {
        if std::mem::replace(&mut used[v as usize], true) {
            return false;
        }
    }
    let edges: HashSet<Vec<u32>> = big.edge_set().into_iter().collect();
    small.edges().iter().all(|e| {
        let mut img: Vec<u32> = e.iter().map(|&v| map[v as usize]).collect();
        img.sort_unstable();
        edges.contains(&img)
    })
}

struct Matcher<'a> {
    small: &'a Hypergraph,
    big: &'a Hypergraph,
    /// small vertices in matching order
    order: Vec<u32>,
    small_inc: Vec<Vec<u32>>,
    small_deg: Vec<usize>,
    big_deg: Vec<usize>,
    /// per big vertex: edges containing it, as a bitset over big edges
    big_inc: Vec<BitSet>,
    /// per big edge size: bitset of edges with that size
    big_by_size: std::collections::HashMap<usize, BitSet>,
    map: Vec<u32>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    /// orbit representatives of `big`, when breaking symmetry
    root_orbits: Option<Vec<u32>>,
    /// orbit representatives under the stabilizer of each first image
    stab_orbits: HashMap<u32, Vec<u32>>,
}

impl<'a> Matcher<'a> {
    fn new(small: &'a Hypergraph, big: &'a Hypergraph, budget: u64) -> Matcher<'a> {
        let small_inc = small.incidence();
        let small_deg = small.degrees();
        let big_deg = big.degrees();
        let bm = big.edge_count();
        let mut big_inc = vec![BitSet::new(bm); big.vertex_count()];
        let mut big_by_size: std::collections::HashMap<usize, BitSet> = Default::default();
        for (i, e) in big.edges().iter().enumerate() {
            for &v in e {
                big_inc[v as usize].insert(i);
            }
            big_by_size.entry(e.len()).or_insert_with(|| BitSet::new(bm)).insert(i);
        }
        // greedy order: next vertex shares the most edges with placed ones,
        // then highest degree
        let k = small.vertex_count();
        let mut placed = vec![false; k];
        let mut links = vec![0usize; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let v = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], small_deg[v], usize::MAX - v))
                .expect("vertex left");
            placed[v] = true;
            order.push(v as u32);
            for &e in &small_inc[v] {
                for &u in small.edge(e as usize) {
                    links[u as usize] += 1;
                }
            }
        }
        Matcher {
            small,
            big,
            order,
            small_inc,
            small_deg,
            big_deg,
            big_inc,
            big_by_size,
            map: vec![u32::MAX; k],
            used: vec![false; big.vertex_count()],
            nodes: 0,
            budget,
            root_orbits: None,
            stab_orbits: HashMap::new(),
        }
    }

    fn run(mut self) -> EmbedSearch {
        match self.extend(0) {
            Some(true) => EmbedSearch::Found(self.map),
            Some(false) => EmbedSearch::NotFound,
            None => EmbedSearch::BudgetExhausted,
        }
    }

    /// Whether `w` may be tried at `depth` without losing solutions.
    fn representative(&mut self, depth: usize, w: usize) -> bool {
        let Some(root) = &self.root_orbits else {
            return true;
        };
        match depth {
            0 => root[w] == w as u32,
            1 => {
                let first = self.map[self.order[0] as usize];
                let big = self.big;
                let orbits = self.stab_orbits.entry(first).or_insert_with(|| vertex_orbits(big, &[first]));
                orbits[w] == w as u32
            }
            _ => true,
        }
    }

    /// Big edges that can host small edge `e` given the current partial map.
    fn hosts(&self, e: usize) -> BitSet {
        let mut host = self.big_by_size[&self.small.edge(e).len()].clone();
        for &u in self.small.edge(e) {
            let img = self.map[u as usize];
            if img != u32::MAX {
                host.intersect_with(&self.big_inc[img as usize]);
            }
        }
        host
    }

    /// `Some(found)`, or `None` once the budget runs out.
    fn extend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let u = self.order[depth] as usize;
        // candidate images: vertices of big edges hosting each edge at u
        let mut cand: Option<BitSet> = None;
        for &e in &self.small_inc[u] {
            let hosts = self.hosts(e as usize);
            if hosts.is_empty() {
                return Some(false);
            }
            let mut verts = BitSet::new(self.big.vertex_count());
            for he in hosts.iter() {
                for &w in self.big.edge(he) {
                    verts.insert(w as usize);
                }
            }
            match &mut cand {
                Some(c) => c.intersect_with(&verts),
                None => cand = Some(verts),
            }
        }
        let cand = cand.unwrap_or_else(|| BitSet::full(self.big.vertex_count()));
        for w in cand.iter() {
            if self.used[w] || self.big_deg[w] < self.small_deg[u] || !self.representative(depth, w) {
                continue;
            }
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            self.map[u] = w as u32;
            self.used[w] = true;
            let ok = self.small_inc[u].iter().all(|&e| !self.hosts(e as usize).is_empty());
            if ok && self.extend(depth + 1)? {
                return Some(true);
            }
            self.used[w] = false;
            self.map[u] = u32::MAX;
        }
        Some(false)
    }
}
