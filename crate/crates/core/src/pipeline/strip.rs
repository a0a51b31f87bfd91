use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::mmp::Hypergraph;
use crate::structure::find_embedding;

use super::PipelineError;

#[derive(Debug, Clone)]
pub enum StripMode {
    /// Every way of removing `count` edges.
    Exhaustive,
    /// `samples` removals of `count` uniformly chosen edges.
    Random { seed: u64, samples: usize },
    /// Every way of adding `count` edges of the master that are absent.
    Add { master: Hypergraph },
}

#[derive(Debug, Clone)]
pub struct StripSpec {
    pub count: usize,
    pub mode: StripMode,
}

/// Children of `h` per `spec`, with orphaned vertices dropped and labels
/// normalized.
pub fn strip(h: &Hypergraph, spec: &StripSpec) -> Result<Vec<Hypergraph>, PipelineError> {
    let m = h.edge_count();
    if spec.count == 0 {
        return Err(PipelineError::ZeroCount);
    }
    match &spec.mode {
        StripMode::Exhaustive => {
            check_removal(spec.count, m)?;
            Ok((0..m)
                .combinations(spec.count)
                .map(|gone| keep_without(h, &gone))
                .collect())
        }
        StripMode::Random { seed, samples } => {
            check_removal(spec.count, m)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..*samples)
                .map(|_| {
                    let mut gone = sample(&mut rng, m, spec.count).into_vec();
                    gone.sort_unstable();
                    keep_without(h, &gone)
                })
                .collect())
        }
        StripMode::Add { master } => {
            let map = find_embedding(h, master).ok_or(PipelineError::NotSubgraph)?;
            let mut present: std::collections::HashSet<Vec<u32>> = Default::default();
            for e in h.edges() {
                let mut img: Vec<u32> = e.iter().map(|&v| map[v as usize]).collect();
                img.sort_unstable();
                present.insert(img);
            }
            let absent: Vec<usize> = (0..master.edge_count())
                .filter(|&i| {
                    let mut e = master.edge(i).to_vec();
                    e.sort_unstable();
                    !present.contains(&e)
                })
                .collect();
            if spec.count > absent.len() {
                return Err(PipelineError::CountTooLarge { count: spec.count, edges: absent.len() });
            }
            // edges of h in master labels, then the additions
            let base: Vec<Vec<u32>> = h.edges().iter().map(|e| e.iter().map(|&v| map[v as usize]).collect()).collect();
            Ok(absent
                .into_iter()
                .combinations(spec.count)
                .map(|add| {
                    let edges = base.iter().cloned().chain(add.iter().map(|&i| master.edge(i).to_vec()));
                    Hypergraph::from_edges(h.dimension(), edges.collect::<Vec<_>>()).expect("master edges are valid")
                })
                .collect())
        }
    }
}

fn check_removal(count: usize, m: usize) -> Result<(), PipelineError> {
    if count >= m {
        return Err(PipelineError::CountTooLarge { count, edges: m });
    }
    Ok(())
}

fn keep_without(h: &Hypergraph, gone: &[usize]) -> Hypergraph {
    let keep: Vec<usize> = (0..h.edge_count()).filter(|i| gone.binary_search(i).is_err()).collect();
    h.restrict_to_edges(&keep).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_line;

    #[test]
    fn exhaustive_counts_are_binomial() {
        let h = parse_line("12,23,34,45,56.", 2).unwrap().hypergraph;
        let spec = StripSpec { count: 2, mode: StripMode::Exhaustive };
        assert_eq!(strip(&h, &spec).unwrap().len(), 10);
    }

    #[test]
    fn removing_every_edge_is_an_error() {
        let h = parse_line("12.", 2).unwrap().hypergraph;
        let spec = StripSpec { count: 1, mode: StripMode::Exhaustive };
        assert!(matches!(strip(&h, &spec), Err(PipelineError::CountTooLarge { .. })));
    }

    #[test]
    fn random_mode_is_reproducible() {
        let h = parse_line("12,23,34,45,56,67,78.", 2).unwrap().hypergraph;
        let spec = StripSpec { count: 3, mode: StripMode::Random { seed: 9, samples: 6 } };
        let a: Vec<String> = strip(&h, &spec).unwrap().iter().map(|c| crate::mmp::serialize(c, None)).collect();
        let b: Vec<String> = strip(&h, &spec).unwrap().iter().map(|c| crate::mmp::serialize(c, None)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.split(',').count() == 4));
    }

    #[test]
    fn add_mode_extends_by_absent_master_edges() {
        let master = parse_line("12,23,34,41.", 2).unwrap().hypergraph;
        let h = parse_line("12,23.", 2).unwrap().hypergraph;
        let spec = StripSpec { count: 1, mode: StripMode::Add { master: master.clone() } };
        let out = strip(&h, &spec).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|c| c.edge_count() == 3));
        let tri = parse_line("12,23,31.", 2).unwrap().hypergraph;
        let spec = StripSpec { count: 1, mode: StripMode::Add { master } };
        assert!(matches!(strip(&tri, &spec), Err(PipelineError::NotSubgraph)));
    }
}
