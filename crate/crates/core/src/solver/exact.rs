use crate::mmp::Hypergraph;

/// Exactly-one-per-edge system of a fixed hypergraph, posed over any
/// subset ("universe") of its edges. A 0-1 assignment is an exact cover
/// of the universe by vertex rows, where a row is the set of edges at a
/// vertex restricted to the universe.
#[derive(Debug, Clone)]
pub struct EdgeSystem {
    words: usize,
    edges: Vec<Vec<u32>>,
    /// row of vertex `v` is `rows[v*words..(v+1)*words]`
    rows: Vec<u64>,
    vertex_count: usize,
}

impl EdgeSystem {
    pub fn new(h: &Hypergraph) -> EdgeSystem {
        let m = h.edge_count();
        let words = m.div_ceil(64).max(1);
        let mut rows = vec![0u64; h.vertex_count() * words];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                rows[v as usize * words + i / 64] |= 1 << (i % 64);
            }
        }
        EdgeSystem { words, edges: h.edges().to_vec(), rows, vertex_count: h.vertex_count() }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Universe containing every edge.
    pub fn full(&self) -> Vec<u64> {
        let mut u = vec![0u64; self.words];
        for i in 0..self.edges.len() {
            u[i / 64] |= 1 << (i % 64);
        }
        u
    }

    /// A set of vertices hitting each universe edge exactly once, or `None`
    /// when the sub-hypergraph on `universe` is KS.
    pub fn solve(&self, universe: &[u64]) -> Option<Vec<u32>> {
        debug_assert_eq!(universe.len(), self.words);
        if self.parity_obstructed(universe) {
            return None;
        }
        let mut covered = vec![0u64; self.words];
        let mut chosen = Vec::new();
        self.search(universe, &mut covered, &mut chosen).then_some(chosen)
    }

    pub fn is_ks(&self, universe: &[u64]) -> bool {
        self.solve(universe).is_none()
    }

    /// Some odd set of universe edges meets every vertex an even number
    /// of times, so no exact cover exists. Holds iff the all-ones vector is
    /// outside the GF(2) row space of the incidence matrix.
    pub fn parity_obstructed(&self, universe: &[u64]) -> bool {
        let mut ones = universe.to_vec();
        if ones.iter().all(|&w| w == 0) {
            return false;
        }
        // reduced rows, each with a distinct pivot bit (its lowest set bit)
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let reduce = |x: &mut Vec<u64>, basis: &[Vec<u64>]| {
            for b in basis {
                let p = lowest(b);
                if x[p / 64] >> (p % 64) & 1 == 1 {
                    x.iter_mut().zip(b).for_each(|(a, c)| *a ^= c);
                }
            }
        };
        for v in 0..self.vertex_count as u32 {
            let mut x: Vec<u64> = self.row(v).iter().zip(universe).map(|(r, u)| r & u).collect();
            reduce(&mut x, &basis);
            if x.iter().any(|&w| w != 0) {
                let p = lowest(&x);
                // keep the basis fully reduced at pivot columns
                for b in basis.iter_mut() {
                    if b[p / 64] >> (p % 64) & 1 == 1 {
                        b.iter_mut().zip(&x).for_each(|(a, c)| *a ^= c);
                    }
                }
                basis.push(x);
            }
        }
        reduce(&mut ones, &basis);
        ones.iter().any(|&w| w != 0)
    }

    #[inline]
    fn row(&self, v: u32) -> &[u64] {
        let s = v as usize * self.words;
        &self.rows[s..s + self.words]
    }

    #[inline]
    fn free(&self, v: u32, covered: &[u64]) -> bool {
        self.row(v).iter().zip(covered).all(|(r, c)| r & c == 0)
    }

    fn search(&self, universe: &[u64], covered: &mut [u64], chosen: &mut Vec<u32>) -> bool {
        // most constrained uncovered edge
        let mut best: Option<(usize, usize)> = None;
        for w in 0..self.words {
            let mut open = universe[w] & !covered[w];
            while open != 0 {
                let e = w * 64 + open.trailing_zeros() as usize;
                open &= open - 1;
                let n = self.edges[e].iter().filter(|&&v| self.free(v, covered)).count();
                if n == 0 {
                    return false;
                }
                if best.is_none_or(|(_, b)| n < b) {
                    best = Some((e, n));
                    if n == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, 1))) {
                break;
            }
        }
        let Some((e, _)) = best else {
            return true;
        };
        for &v in &self.edges[e] {
            if !self.free(v, covered) {
                continue;
            }
            let s = v as usize * self.words;
            for w in 0..self.words {
                covered[w] |= self.rows[s + w] & universe[w];
            }
            chosen.push(v);
            if self.search(universe, covered, chosen) {
                return true;
            }
            chosen.pop();
            for w in 0..self.words {
                covered[w] ^= self.rows[s + w] & universe[w];
            }
        }
        false
    }

    /// Assignment vector over all vertices from a chosen set.
    pub fn assignment(&self, chosen: &[u32]) -> Vec<u8> {
        let mut a = vec![0u8; self.vertex_count];
        for &v in chosen {
            a[v as usize] = 1;
        }
        a
    }
}

fn lowest(x: &[u64]) -> usize {
    let w = x.iter().position(|&w| w != 0).expect("nonzero row");
    w * 64 + x[w].trailing_zeros() as usize
}
