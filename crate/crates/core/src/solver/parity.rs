use crate::mmp::Hypergraph;

/// Odd edge count and every vertex of even degree.
pub fn has_parity_proof(h: &Hypergraph) -> bool {
    h.edge_count() % 2 == 1 && h.degrees().iter().all(|d| d % 2 == 0)
}

/// Edge subsets of odd size in which every vertex has even degree, found
/// as odd-weight vectors in the GF(2) null space of the incidence matrix.
/// Subsets are sorted edge-index lists, at most `max_count` of them.
pub fn find_parity_subsets(h: &Hypergraph, max_count: usize) -> Vec<Vec<usize>> {
    let m = h.edge_count();
    let words = m.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; h.vertex_count()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            rows[v as usize][i / 64] |= 1 << (i % 64);
        }
    }
    let basis = null_space(rows, m, words);
    let mut out = Vec::new();
    if basis.is_empty() || max_count == 0 {
        return out;
    }
    // Gray-code walk over all nonzero combinations
    let d = basis.len().min(63);
    let mut cur = vec![0u64; words];
    for step in 1u64..(1u64 << d) {
        let bit = step.trailing_zeros() as usize;
        for (c, b) in cur.iter_mut().zip(&basis[bit]) {
            *c ^= b;
        }
        let weight: u32 = cur.iter().map(|w| w.count_ones()).sum();
        if weight % 2 == 1 {
            out.push((0..m).filter(|&i| cur[i / 64] >> (i % 64) & 1 == 1).collect());
            if out.len() >= max_count {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Basis of `{x : A x = 0}` over GF(2), `A` given by rows over `m` columns.
fn null_space(mut rows: Vec<Vec<u64>>, m: usize, words: usize) -> Vec<Vec<u64>> {
    let get = |r: &Vec<u64>, c: usize| r[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..rows.len()).find(|&r| get(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && get(row, col) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut is_pivot = vec![false; m];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u64; words];
            x[free / 64] |= 1 << (free % 64);
            for (r, &pc) in pivots.iter().enumerate() {
                if get(&rows[r], free) {
                    x[pc / 64] |= 1 << (pc % 64);
                }
            }
            x
        })
        .collect()
}
