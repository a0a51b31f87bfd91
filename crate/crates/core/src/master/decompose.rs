use crate::mmp::Hypergraph;

/// Edge indices of each connected component, in order of first edge.
pub fn components(h: &Hypergraph) -> Vec<Vec<usize>> {
    let m = h.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner = vec![usize::MAX; h.vertex_count()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            let v = v as usize;
            if owner[v] == usize::MAX {
                owner[v] = i;
            } else {
                let (a, b) = (find(&mut parent, owner[v]), find(&mut parent, i));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

pub fn is_connected(h: &Hypergraph) -> bool {
    components(h).len() <= 1
}

/// Connected components with normalized labels, largest `(k, m)` first.
/// Ties keep input order.
pub fn decompose(h: &Hypergraph) -> Vec<Hypergraph> {
    let mut parts: Vec<Hypergraph> = components(h).iter().map(|g| h.restrict_to_edges(g).0).collect();
    parts.sort_by_key(|p| std::cmp::Reverse((p.vertex_count(), p.edge_count())));
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    #[test]
    fn splits_disjoint_pieces() {
        let h = parse_line("12,34,23,56,67.", 2).unwrap().hypergraph;
        let parts = decompose(&h);
        let names: Vec<String> = parts.iter().map(|p| p.name()).collect();
        assert_eq!(names, ["4-3", "3-2"]);
        assert!(!is_connected(&h));
        assert!(is_connected(&parts[0]));
    }
}
