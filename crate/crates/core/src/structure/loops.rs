use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::mmp::Hypergraph;

use super::StructureError;

/// A chordless cycle of edges: consecutive edges meet, non-consecutive
/// edges are disjoint, and `joints[i]` lies in `edges[i]` and
/// `edges[(i+1) % L]` with all joints distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopResult {
    pub edges: Vec<usize>,
    pub joints: Vec<u32>,
    /// The whole search tree was explored, so no longer loop exists.
    pub exhaustive: bool,
}

impl LoopResult {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Recheck the loop invariants against `h`.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let l = self.edges.len();
        if l < 3 || self.joints.len() != l {
            return false;
        }
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.dedup();
        let mut j = self.joints.clone();
        j.sort_unstable();
        j.dedup();
        if e.len() != l || j.len() != l {
            return false;
        }
        let meets = |a: usize, b: usize| h.edge(a).iter().any(|v| h.edge(b).contains(v));
        for i in 0..l {
            let (a, b) = (self.edges[i], self.edges[(i + 1) % l]);
            if !h.edge(a).contains(&self.joints[i]) || !h.edge(b).contains(&self.joints[i]) {
                return false;
            }
            for d in 2..l - 1 {
                if meets(a, self.edges[(i + d) % l]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Longest loop found within `budget` search nodes. The branching order is
/// shuffled by `seed`; the result is a function of `(h, budget, seed)`.
pub fn find_max_loop(h: &Hypergraph, budget: u64, seed: u64) -> Result<Option<LoopResult>, StructureError> {
    let m = h.edge_count();
    if m < 3 {
        return Err(StructureError::TooFewEdges(m));
    }
    let mut adj = vec![BitSet::new(m); m];
    for edges in h.incidence() {
        for &a in &edges {
            for &b in &edges {
                if a != b {
                    adj[a as usize].insert(b as usize);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut rank = vec![0; m];
    for (r, &e) in order.iter().enumerate() {
        rank[e] = r;
    }
    let mut s = LoopSearch { h, adj: &adj, rank, budget, nodes: 0, best: Vec::new() };
    let mut complete = true;
    // each loop is found once: from its lowest-ranked edge, oriented so
    // that the second edge ranks below the last
    for (r, &start) in order.iter().enumerate() {
        if m - r <= s.best.len() {
            break;
        }
        let mut allowed = BitSet::new(m);
        for &e in &order[r + 1..] {
            allowed.insert(e);
        }
        let mut path = vec![start];
        if !s.grow(&mut path, &allowed) {
            complete = false;
            break;
        }
    }
    if s.best.is_empty() {
        return Ok(None);
    }
    let joints = joints_for(h, &s.best).expect("loop has distinct joints");
    Ok(Some(LoopResult { edges: s.best, joints, exhaustive: complete }))
}

struct LoopSearch<'a> {
    h: &'a Hypergraph,
    adj: &'a [BitSet],
    rank: Vec<usize>,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
}

impl LoopSearch<'_> {
    /// Extend the induced path `path` within `allowed`. Returns false once
    /// the node budget is spent.
    fn grow(&mut self, path: &mut Vec<usize>, allowed: &BitSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let t = path.len();
        let first = path[0];
        let last = path[t - 1];
        // edges that may still join: allowed, off the path, and disjoint
        // from every interior edge
        let mut free = allowed.clone();
        for &p in path.iter().take(t.saturating_sub(1)).skip(1) {
            free.difference_with(&self.adj[p]);
        }
        for &p in path.iter() {
            free.remove(p);
        }
        if t + free.len() <= self.best.len() {
            return true;
        }
        let mut cand = free;
        cand.intersect_with(&self.adj[last]);
        for next in cand.iter().collect::<Vec<_>>() {
            if t >= 2 && self.adj[first].contains(next) {
                let closes = self.rank[next] > self.rank[path[1]]
                    && t + 1 > self.best.len()
                    && (t > 2 || joints_for(self.h, &[path[0], path[1], next]).is_some());
                if closes {
                    let mut cyc = path.clone();
                    cyc.push(next);
                    self.best = cyc;
                }
                continue;
            }
            path.push(next);
            let ok = self.grow(path, allowed);
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Distinct joints for a cyclic edge sequence, if they exist.
fn joints_for(h: &Hypergraph, cyc: &[usize]) -> Option<Vec<u32>> {
    let l = cyc.len();
    let options: Vec<Vec<u32>> = (0..l)
        .map(|i| {
            let (a, b) = (h.edge(cyc[i]), h.edge(cyc[(i + 1) % l]));
            a.iter().copied().filter(|v| b.contains(v)).collect()
        })
        .collect();
    let mut pick = Vec::with_capacity(l);
    fn go(options: &[Vec<u32>], pick: &mut Vec<u32>) -> bool {
        let i = pick.len();
        if i == options.len() {
            return true;
        }
        for &v in &options[i] {
            if !pick.contains(&v) {
                pick.push(v);
                if go(options, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    go(&options, &mut pick).then_some(pick)
}
