use std::collections::BTreeMap;
use std::fmt::Write;

/// Count of sets and of parity-proof sets per `(k, m)` cell.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Distribution {
    /// keyed by `(m, k)` so iteration follows the output order
    cells: BTreeMap<(usize, usize), (usize, usize)>,
}

impl Distribution {
    pub fn add(&mut self, k: usize, m: usize, parity: bool) {
        let c = self.cells.entry((m, k)).or_default();
        c.0 += 1;
        c.1 += parity as usize;
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn count(&self, k: usize, m: usize) -> usize {
        self.cells.get(&(m, k)).map_or(0, |c| c.0)
    }

    /// `(k, m, count, pp_count)` sorted by `(m, k)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.cells.iter().map(|(&(m, k), &(c, p))| (k, m, c, p))
    }

    pub fn total(&self) -> usize {
        self.cells.values().map(|c| c.0).sum()
    }

    /// `k<TAB>m<TAB>count<TAB>pp_count` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (k, m, c, p) in self.cells() {
            writeln!(s, "{k}\t{m}\t{c}\t{p}").unwrap();
        }
        s
    }

    /// Per edge count: min and max k, number of sets and parity proofs.
    pub fn summary(&self) -> Vec<RowSummary> {
        let mut rows: BTreeMap<usize, RowSummary> = BTreeMap::new();
        for (k, m, c, p) in self.cells() {
            let r = rows.entry(m).or_insert(RowSummary { m, min_k: k, max_k: k, count: 0, pp_count: 0 });
            r.min_k = r.min_k.min(k);
            r.max_k = r.max_k.max(k);
            r.count += c;
            r.pp_count += p;
        }
        rows.into_values().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowSummary {
    pub m: usize,
    pub min_k: usize,
    pub max_k: usize,
    pub count: usize,
    pub pp_count: usize,
}

/// Distribution of the critical records.
pub fn stats<'a>(records: impl IntoIterator<Item = &'a super::ClassRecord>) -> Distribution {
    let mut d = Distribution::default();
    for r in records {
        if r.is_critical {
            d.add(r.k, r.m, r.has_parity_proof);
        }
    }
    d
}
