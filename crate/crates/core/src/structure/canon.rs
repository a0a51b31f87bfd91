//! Canonical labeling of hypergraphs.
//!
//! The hypergraph is viewed as a bipartite graph on `k` vertex nodes and
//! `m` edge nodes. An ordered partition of the nodes is refined to an
//! equitable one, then cells are individualized one node at a time. Each
//! discrete leaf yields a certificate (the relabeled edge list); the
//! canonical form is the leaf with the least `(trace, certificate)`.
//! Refinement traces are isomorphism invariant, so whole subtrees whose
//! trace differs from the best path are pruned. Leaves with equal value
//! give automorphisms, which prune branches in the same orbit.

use std::cmp::Ordering;
use std::fmt;

use crate::mmp::{serialize, Hypergraph};

/// MMP text of the canonical form. Equal iff the hypergraphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub String);

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// Canonical form; vertex `labeling[v]` of it is vertex `v` of the input.
    pub form: Hypergraph,
    pub labeling: Vec<u32>,
    /// Vertex permutations `g[v]` that are automorphisms of the input. They
    /// generate a subgroup of the automorphism group, often all of it.
    pub generators: Vec<Vec<u32>>,
}

pub fn canonical_key(h: &Hypergraph) -> CanonicalKey {
    canonical_form(h).key
}

pub fn canonical_form(h: &Hypergraph) -> Canonical {
    let k = h.vertex_count();
    let search = run(h, &[]);
    let best = search.best.expect("search reaches a leaf");
    let edges: Vec<Vec<u32>> = best.cert.chunks_exact_sized();
    // vertex labels of the leaf become first-appearance labels in `form`
    let form = Hypergraph::from_edges(h.dimension(), &edges).expect("canonical edges are valid");
    let mut first = vec![u32::MAX; k];
    let mut next = 0u32;
    for e in &edges {
        for &p in e {
            if first[p as usize] == u32::MAX {
                first[p as usize] = next;
                next += 1;
            }
        }
    }
    let labeling = (0..k).map(|v| first[best.inv[v] as usize]).collect();
    let generators = search.generators.iter().map(|g| g[..k].to_vec()).collect();
    let key = CanonicalKey(serialize(&form, None));
    Canonical { key, form, labeling, generators }
}

/// Generators of (a subgroup of) the automorphisms fixing each vertex of
/// `fixed`, as vertex permutations.
pub fn automorphism_generators(h: &Hypergraph, fixed: &[u32]) -> Vec<Vec<u32>> {
    let k = h.vertex_count();
    run(h, fixed).generators.iter().map(|g| g[..k].to_vec()).collect()
}

/// `rep[v]`: smallest vertex in the orbit of `v` under the automorphisms
/// found by [`automorphism_generators`]. Those generate a subgroup of the
/// stabilizer of `fixed`, so every true orbit is a union of these.
pub fn vertex_orbits(h: &Hypergraph, fixed: &[u32]) -> Vec<u32> {
    let k = h.vertex_count();
    let mut uf = UnionFind::new(k);
    for g in automorphism_generators(h, fixed) {
        for (v, &w) in g.iter().enumerate() {
            uf.union(v, w as usize);
        }
    }
    (0..k).map(|v| uf.find(v) as u32).collect()
}

/// Search with `fixed` vertices individualized up front.
fn run(h: &Hypergraph, fixed: &[u32]) -> Search {
    let k = h.vertex_count();
    let m = h.edge_count();
    let n = k + m;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            adj[v as usize].push((k + i) as u32);
            adj[k + i].push(v);
        }
    }
    let mut search = Search {
        k,
        adj,
        first: None,
        best: None,
        generators: Vec::new(),
        count: vec![0; n],
        seen: vec![false; n],
        best_changes: 0,
    };
    let mut root = Partition::unit(n, k);
    for (i, &v) in fixed.iter().enumerate() {
        root.individualize(i as u32, v);
    }
    let mut trace = Vec::new();
    let mut queue: Vec<u32> = (0..n as u32).filter(|&p| root.is_start(p)).collect();
    let t = search.refine(&mut root, &mut queue);
    trace.push(t);
    search.explore(&root, &mut trace, &mut Vec::new(), PathState { eq_first: true, vs_best: Ordering::Equal });
    search
}

/// Ordered partition of `0..n`: `lab` lists nodes cell by cell, `start[p]`
/// is the first position of the cell holding position `p`, `end[s]` is
/// the end of the cell starting at `s`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    inv: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    /// Two cells: vertex nodes `0..k`, then edge nodes.
    fn unit(n: usize, k: usize) -> Partition {
        let lab: Vec<u32> = (0..n as u32).collect();
        let inv = lab.clone();
        let mut start = vec![0u32; n];
        let mut end = vec![0u32; n];
        let mut cells = 0;
        if k > 0 {
            end[0] = k as u32;
            cells += 1;
        }
        if n > k {
            for s in &mut start[k..] {
                *s = k as u32;
            }
            end[k] = n as u32;
            cells += 1;
        }
        Partition { lab, inv, start, end, cells }
    }

    fn is_start(&self, p: u32) -> bool {
        self.start[p as usize] == p
    }

    fn discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Smallest non-singleton cell, earliest on ties.
    fn target(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut p = 0u32;
        while (p as usize) < self.lab.len() {
            let e = self.end[p as usize];
            let size = e - p;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((p, size));
                if size == 2 {
                    break;
                }
            }
            p = e;
        }
        best.map(|(s, _)| s)
    }

    /// Move node `x` (in the cell at `s`) to a singleton cell at `s`.
    fn individualize(&mut self, s: u32, x: u32) {
        let px = self.inv[x as usize];
        let y = self.lab[s as usize];
        self.lab.swap(s as usize, px as usize);
        self.inv[x as usize] = s;
        self.inv[y as usize] = px;
        let e = self.end[s as usize];
        self.end[s as usize] = s + 1;
        self.end[s as usize + 1] = e;
        for p in s + 1..e {
            self.start[p as usize] = s + 1;
        }
        self.cells += 1;
    }
}

struct Leaf {
    trace: Vec<u64>,
    /// individualized nodes leading here
    path: Vec<u32>,
    cert: Cert,
    /// node -> position
    inv: Vec<u32>,
    lab: Vec<u32>,
}

/// Edges of a leaf in position order, each as sorted vertex positions,
/// flattened with a length prefix per edge.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Cert(Vec<u32>);

impl Cert {
    fn chunks_exact_sized(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let len = self.0[i] as usize;
            out.push(self.0[i + 1..i + 1 + len].to_vec());
            i += 1 + len;
        }
        out
    }
}

/// How the current path compares with the stored leaves.
#[derive(Clone, Copy)]
struct PathState {
    eq_first: bool,
    vs_best: Ordering,
}

struct Search {
    k: usize,
    adj: Vec<Vec<u32>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// full node permutations
    generators: Vec<Vec<u32>>,
    count: Vec<u32>,
    seen: Vec<bool>,
    best_changes: u64,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
}

impl Search {
    /// Refine to the coarsest equitable partition finer than `p`, using the
    /// cells starting at positions in `queue` as splitters. Returns a hash
    /// of the refinement trace.
    fn refine(&mut self, p: &mut Partition, queue: &mut Vec<u32>) -> u64 {
        let n = p.lab.len();
        let mut in_queue = vec![false; n];
        for &s in queue.iter() {
            in_queue[s as usize] = true;
        }
        let mut trace = 0x5851_F42D_4C95_7F2Du64;
        let mut head = 0;
        let mut touched: Vec<u32> = Vec::new();
        let mut touched_cells: Vec<u32> = Vec::new();
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            in_queue[w as usize] = false;
            let we = p.end[w as usize];
            for pos in w..we {
                let x = p.lab[pos as usize];
                for &y in &self.adj[x as usize] {
                    if self.count[y as usize] == 0 {
                        touched.push(y);
                    }
                    self.count[y as usize] += 1;
                }
            }
            for &y in &touched {
                let s = p.start[p.inv[y as usize] as usize];
                if !self.seen[s as usize] {
                    self.seen[s as usize] = true;
                    touched_cells.push(s);
                }
            }
            touched_cells.sort_unstable();
            for &s in &touched_cells {
                self.seen[s as usize] = false;
                let e = p.end[s as usize];
                let cell = &mut p.lab[s as usize..e as usize];
                let c0 = self.count[cell[0] as usize];
                if cell.iter().all(|&x| self.count[x as usize] == c0) {
                    trace = mix(trace, ((s as u64) << 32) | c0 as u64);
                    continue;
                }
                let count = &self.count;
                cell.sort_unstable_by_key(|&x| count[x as usize]);
                for (i, &x) in cell.iter().enumerate() {
                    p.inv[x as usize] = s + i as u32;
                }
                let was_queued = in_queue[s as usize];
                let mut parts: Vec<(u32, u32)> = Vec::new();
                let mut a = s;
                while a < e {
                    let c = self.count[p.lab[a as usize] as usize];
                    let mut b = a + 1;
                    while b < e && self.count[p.lab[b as usize] as usize] == c {
                        b += 1;
                    }
                    trace = mix(trace, ((a as u64) << 40) ^ ((b as u64) << 20) ^ c as u64);
                    parts.push((a, b));
                    a = b;
                }
                for &(a, b) in &parts {
                    p.end[a as usize] = b;
                    for q in a..b {
                        p.start[q as usize] = a;
                    }
                }
                p.cells += parts.len() - 1;
                // all parts if the cell was pending, else all but one largest
                let largest = parts.iter().enumerate().max_by_key(|(i, (a, b))| (b - a, usize::MAX - i)).map(|(i, _)| i);
                for (i, &(a, _)) in parts.iter().enumerate() {
                    if (was_queued || Some(i) != largest) && !in_queue[a as usize] {
                        in_queue[a as usize] = true;
                        queue.push(a);
                    }
                }
            }
            touched_cells.clear();
            for &y in &touched {
                self.count[y as usize] = 0;
            }
            touched.clear();
            trace = mix(trace, 0xFF);
        }
        queue.clear();
        mix(trace, p.cells as u64)
    }

    fn certificate(&self, p: &Partition) -> Cert {
        let k = self.k;
        let mut out = Vec::with_capacity(self.adj.len() * 2);
        for pos in k..p.lab.len() {
            let e = p.lab[pos] as usize;
            let mut vs: Vec<u32> = self.adj[e].iter().map(|&v| p.inv[v as usize]).collect();
            vs.sort_unstable();
            out.push(vs.len() as u32);
            out.extend(vs);
        }
        Cert(out)
    }

    /// `trace` holds the refinement hashes along the path to `p`;
    /// `fixed` the individualized nodes. `state` compares the path so far
    /// with the first and best leaves. Returns `Some(d)` to unwind to the
    /// node at depth `d` after an automorphism made the rest of the
    /// current subtree redundant.
    fn explore(&mut self, p: &Partition, trace: &mut Vec<u64>, fixed: &mut Vec<u32>, mut state: PathState) -> Option<usize> {
        let Some(s) = p.target() else {
            return self.leaf(p, trace, fixed, state);
        };
        let depth = fixed.len();
        let e = p.end[s as usize];
        let cell: Vec<u32> = p.lab[s as usize..e as usize].to_vec();
        let mut done: Vec<u32> = Vec::new();
        let mut orbits_for = usize::MAX;
        let mut orbit = UnionFind::new(0);
        let mut best_seen = self.best_changes;
        for &x in &cell {
            // a new best below this node shares its whole prefix
            if best_seen != self.best_changes {
                best_seen = self.best_changes;
                state.vs_best = Ordering::Equal;
            }
            if orbits_for != self.generators.len() {
                orbit = self.stabilizer_orbits(fixed);
                orbits_for = self.generators.len();
            }
            if done.iter().any(|&y| orbit.find(y as usize) == orbit.find(x as usize)) {
                continue;
            }
            done.push(x);
            let mut child = p.clone();
            child.individualize(s, x);
            let mut queue = vec![s];
            let t = self.refine(&mut child, &mut queue);
            let d = trace.len();
            let mut next = state;
            if next.eq_first {
                next.eq_first = self.first.as_ref().is_none_or(|f| f.trace.get(d) == Some(&t));
            }
            if next.vs_best == Ordering::Equal {
                if let Some(b) = &self.best {
                    next.vs_best = b.trace.get(d).map_or(Ordering::Greater, |bt| t.cmp(bt));
                }
            }
            if next.vs_best == Ordering::Greater && !next.eq_first {
                continue;
            }
            trace.push(t);
            fixed.push(x);
            let jump = self.explore(&child, trace, fixed, next);
            fixed.pop();
            trace.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition, trace: &[u64], path: &[u32], state: PathState) -> Option<usize> {
        debug_assert!(p.discrete());
        let cert = self.certificate(p);
        let common = |other: &[u32]| other.iter().zip(path).take_while(|(a, b)| a == b).count();
        let matches = [
            (state.eq_first, &self.first),
            (state.vs_best == Ordering::Equal, &self.best),
        ];
        for (eligible, reference) in matches {
            let Some(reference) = reference.as_ref().filter(|_| eligible) else {
                continue;
            };
            if reference.trace.as_slice() == trace && reference.cert == cert {
                // automorphism: x -> reference.lab[p.inv[x]]
                let g: Vec<u32> = (0..p.lab.len()).map(|x| reference.lab[p.inv[x] as usize]).collect();
                let jump = common(&reference.path);
                if g.iter().enumerate().any(|(i, &y)| i as u32 != y) {
                    self.generators.push(g);
                }
                return Some(jump);
            }
        }
        let leaf = |cert: Cert| Leaf { trace: trace.to_vec(), path: path.to_vec(), cert, inv: p.inv.clone(), lab: p.lab.clone() };
        if self.first.is_none() {
            self.first = Some(leaf(Cert(cert.0.clone())));
        }
        let better = match (&self.best, state.vs_best) {
            (None, _) | (_, Ordering::Less) => true,
            (Some(best), Ordering::Equal) => (trace, &cert) < (best.trace.as_slice(), &best.cert),
            (Some(_), Ordering::Greater) => false,
        };
        if better {
            self.best = Some(leaf(cert));
            self.best_changes += 1;
        }
        None
    }

    /// Orbits of the group generated by known automorphisms fixing `fixed`.
    fn stabilizer_orbits(&self, fixed: &[u32]) -> UnionFind {
        let mut uf = UnionFind::new(self.adj.len());
        for g in &self.generators {
            if fixed.iter().all(|&x| g[x as usize] == x) {
                for (x, &y) in g.iter().enumerate() {
                    uf.union(x, y as usize);
                }
            }
        }
        uf
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        if self.parent.is_empty() {
            return x;
        }
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Orbits of edges under the automorphisms found while canonicalizing.
pub fn edge_orbits(h: &Hypergraph) -> Vec<Vec<usize>> {
    let c = canonical_form(h);
    let edge_index: std::collections::HashMap<Vec<u32>, usize> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut e = e.clone();
            e.sort_unstable();
            (e, i)
        })
        .collect();
    let mut uf = UnionFind::new(h.edge_count());
    for g in &c.generators {
        for (i, e) in h.edges().iter().enumerate() {
            let mut img: Vec<u32> = e.iter().map(|&v| g[v as usize]).collect();
            img.sort_unstable();
            uf.union(i, edge_index[&img]);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..h.edge_count() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    const H18_9: &str = "1234,4567,789A,ABCD,DEFG,GHI1,I29C,35BE,68FH.";

    fn shuffled(h: &Hypergraph, seed: u64) -> Hypergraph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<u32> = (0..h.vertex_count() as u32).collect();
        perm.shuffle(&mut rng);
        let mut edges: Vec<Vec<u32>> = h.relabel(&perm).edges().to_vec();
        edges.shuffle(&mut rng);
        for e in &mut edges {
            e.shuffle(&mut rng);
        }
        Hypergraph::from_edges(h.dimension(), edges).unwrap()
    }

    #[test]
    fn key_is_invariant_under_relabeling() {
        let h = parse_line(H18_9, 4).unwrap().hypergraph;
        let key = canonical_key(&h);
        for seed in 0..20 {
            assert_eq!(canonical_key(&shuffled(&h, seed)), key);
        }
    }

    #[test]
    fn labeling_maps_input_onto_form() {
        let h = parse_line(H18_9, 4).unwrap().hypergraph;
        let c = canonical_form(&h);
        assert_eq!(h.relabel(&c.labeling).edge_set(), c.form.edge_set());
    }

    #[test]
    fn generators_are_automorphisms() {
        let h = parse_line(H18_9, 4).unwrap().hypergraph;
        let c = canonical_form(&h);
        assert!(!c.generators.is_empty());
        for g in &c.generators {
            assert_eq!(h.relabel(g).edge_set(), h.edge_set());
        }
    }

    #[test]
    fn cycle_edges_form_one_orbit() {
        let h = parse_line("12,23,34,45,56,61.", 2).unwrap().hypergraph;
        assert_eq!(edge_orbits(&h), vec![(0..6).collect::<Vec<_>>()]);
    }

    fn brute_orbits(h: &Hypergraph, fixed: &[u32]) -> Vec<u32> {
        use itertools::Itertools;
        let k = h.vertex_count();
        let target = h.edge_set();
        let mut rep: Vec<u32> = (0..k as u32).collect();
        for p in (0..k as u32).permutations(k) {
            if fixed.iter().all(|&x| p[x as usize] == x) && h.relabel(&p).edge_set() == target {
                for v in 0..k {
                    let w = p[v] as usize;
                    let r = rep[v].min(rep[w]);
                    rep[v] = r;
                    rep[w] = r;
                }
            }
        }
        // close under transitivity
        for _ in 0..k {
            for v in 0..k {
                rep[v] = rep[rep[v] as usize];
            }
        }
        rep
    }

    #[test]
    fn orbits_match_brute_force() {
        for (line, n) in [("12,23,34,45,56,61.", 2), ("123,345,561,246.", 3), ("12,23,31,14,45,51.", 2)] {
            let h = parse_line(line, n).unwrap().hypergraph;
            assert_eq!(vertex_orbits(&h, &[]), brute_orbits(&h, &[]), "{line}");
            for v in 0..h.vertex_count() as u32 {
                assert_eq!(vertex_orbits(&h, &[v]), brute_orbits(&h, &[v]), "{line} fixing {v}");
            }
        }
    }

    #[test]
    fn distinguishes_six_cycle_from_two_triangles() {
        let a = parse_line("12,23,34,45,56,61.", 2).unwrap().hypergraph;
        let b = parse_line("12,23,31,45,56,64.", 2).unwrap().hypergraph;
        assert_ne!(canonical_key(&a), canonical_key(&b));
    }
}
