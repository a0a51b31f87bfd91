use std::collections::HashSet;

use anyhow::{anyhow, bail, Result};
use ksforge::algebra::Field;
use ksforge::master::{
    build_master, components, coordinatization_block, find_coordinatization, verify_coordinatization, ComponentSet,
    CoordSearch, MasterOptions,
};
use ksforge::mmp::{CoordinatizationBlock, Hypergraph, ParsedLine};
use ksforge::pipeline::{generate_class, strip, ClassFilters, Distribution, Strategy, StripMode, StripSpec};
use ksforge::solver::{classify, find_parity_subsets, has_parity_proof};
use ksforge::structure::{canonical_key, delta_pairs, find_embedding, find_max_loop};

use crate::stream::{flag, merge_notes, read_one, Stream};
use crate::{Cli, ClassArgs, Command, Filter, MmpstripArgs, StatsArgs, StrategyArg, VecfindArgs};

pub fn run(cli: &Cli) -> Result<()> {
    let mut s = Stream::new(cli.dim, cli.lenient);
    match &cli.command {
        Command::Vecfind(a) => vecfind(&mut s, a),
        Command::States01(a) => {
            let keep_filter = if a.critical { Some(Filter::Critical) } else { a.filter };
            s.each(|s, p| {
                let v = classify(&p.hypergraph);
                let critical = v.is_critical == Some(true);
                let pp = v.is_ks && has_parity_proof(&p.hypergraph);
                let keep = match keep_filter {
                    None => true,
                    Some(Filter::Ks) => v.is_ks,
                    Some(Filter::Nonks) => !v.is_ks,
                    Some(Filter::Critical) => critical,
                } && (!a.parity || pp);
                if keep {
                    let notes = merge_notes(&p.annotations, &[("ks", flag(v.is_ks)), ("critical", flag(critical)), ("pp", flag(pp))]);
                    s.emit(&p.hypergraph, p.coordinatization.as_ref(), &notes)?;
                }
                Ok(())
            })
        }
        Command::Mmpstrip(a) => mmpstrip(&mut s, a),
        Command::Shortd(a) => {
            let mut seen = HashSet::new();
            s.each(|s, p| {
                let key = canonical_key(&p.hypergraph);
                let notes = if a.key { merge_notes(&p.annotations, &[("key", key.0.clone())]) } else { p.annotations.clone() };
                if seen.insert(key) {
                    s.emit(&p.hypergraph, p.coordinatization.as_ref(), &notes)?;
                }
                Ok(())
            })
        }
        Command::Subgraph(a) => {
            let needle = read_one(&a.needle, cli.dim, cli.lenient)?.hypergraph;
            s.each(|s, p| {
                if find_embedding(&needle, &p.hypergraph).is_some() != a.invert {
                    s.emit(&p.hypergraph, p.coordinatization.as_ref(), &p.annotations)?;
                }
                Ok(())
            })
        }
        Command::Loop(a) => s.each(|s, p| {
            let (value, exhaustive) = match find_max_loop(&p.hypergraph, a.budget, a.seed)? {
                Some(l) => (format!("{}:{}", l.len(), join(&l.edges, ",")), l.exhaustive),
                None => ("0".to_string(), true),
            };
            let notes = merge_notes(&p.annotations, &[("loop", value), ("exhaustive", flag(exhaustive))]);
            s.emit(&p.hypergraph, p.coordinatization.as_ref(), &notes)
        }),
        Command::Delta => s.each(|s, p| {
            let pairs = delta_pairs(&p.hypergraph)?;
            let list: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let value = if list.is_empty() { "0".to_string() } else { format!("{}:{}", list.len(), list.join(",")) };
            let notes = merge_notes(&p.annotations, &[("delta", value)]);
            s.emit(&p.hypergraph, p.coordinatization.as_ref(), &notes)
        }),
        Command::Parity(a) => s.each(|s, p| {
            let pp = has_parity_proof(&p.hypergraph);
            let mut notes = vec![("pp", flag(pp))];
            if a.subsets > 0 {
                let sets = find_parity_subsets(&p.hypergraph, a.subsets);
                let list: Vec<String> = sets.iter().map(|set| join(set, ".")).collect();
                notes.push(("psets", format!("{}:{}", list.len(), list.join(";"))));
            }
            let notes = merge_notes(&p.annotations, &notes);
            s.emit(&p.hypergraph, p.coordinatization.as_ref(), &notes)
        }),
        Command::Class(a) => class(&mut s, a),
        Command::Stats(a) => stats(&mut s, a),
        Command::Decompose => s.each(|s, p| {
            for (sub, block) in split(&p.hypergraph, p.coordinatization.as_ref()) {
                s.emit(&sub, block.as_ref(), &p.annotations)?;
            }
            Ok(())
        }),
    }
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Connected components, largest first, each with its part of `block`.
fn split(h: &Hypergraph, block: Option<&CoordinatizationBlock>) -> Vec<(Hypergraph, Option<CoordinatizationBlock>)> {
    let mut parts: Vec<(Hypergraph, Option<CoordinatizationBlock>)> = components(h)
        .iter()
        .map(|g| {
            let (sub, old) = h.restrict_to_edges(g);
            let sub_block = block.map(|b| CoordinatizationBlock {
                entries: old
                    .iter()
                    .enumerate()
                    .filter_map(|(new, &o)| b.entries.get(&(o as usize)).map(|e| (new, e.clone())))
                    .collect(),
            });
            (sub, sub_block)
        })
        .collect();
    parts.sort_by_key(|(sub, _)| std::cmp::Reverse((sub.vertex_count(), sub.edge_count())));
    parts
}

fn component_set(a: &VecfindArgs, dim: usize) -> Result<ComponentSet> {
    let list = a.components.as_deref().ok_or_else(|| anyhow!("--components is required"))?;
    Ok(ComponentSet::parse(list, dim, &Field::default_field())?)
}

fn vecfind(s: &mut Stream, a: &VecfindArgs) -> Result<()> {
    if a.verify {
        let field = Field::default_field();
        return s.each(|s, p| {
            let block = p.coordinatization.as_ref().ok_or_else(|| anyhow!("line has no coordinatization block"))?;
            let report = verify_coordinatization(&p.hypergraph, block, &field);
            for v in &report.violations {
                log::warn!("{}: {v:?}", p.hypergraph.name());
            }
            let value = if report.is_valid() { "valid".to_string() } else { format!("invalid:{}", report.violations.len()) };
            let notes = merge_notes(&p.annotations, &[("coord", value)]);
            s.emit(&p.hypergraph, Some(block), &notes)
        });
    }
    let c = component_set(a, s.dim)?;
    if let Some(path) = &a.assign {
        let text = std::fs::read_to_string(path)?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let result = s.parse(line).map_err(anyhow::Error::from).and_then(|p: ParsedLine| {
                let found = find_coordinatization(&p.hypergraph, &c, a.tuple_limit, a.budget)?;
                let (block, value) = match found {
                    CoordSearch::Found(rays) => (Some(coordinatization_block(&rays)), "found"),
                    CoordSearch::Unsat => (None, "unsat"),
                    CoordSearch::BudgetExhausted => (None, "budget"),
                };
                let notes = merge_notes(&p.annotations, &[("coord", value.to_string())]);
                s.emit(&p.hypergraph, block.as_ref(), &notes)
            });
            if let Err(e) = result {
                if !s.lenient {
                    bail!("{}: line {}: {e:#}", path.display(), i + 1);
                }
                eprintln!("{}: line {}: {e:#} (skipped)", path.display(), i + 1);
            }
        }
        return s.flush();
    }
    let opts = MasterOptions { tuple_limit: a.tuple_limit, clique_budget: a.clique_budget };
    let master = build_master(&c, &opts)?;
    let block = master.block();
    s.emit(&master.hypergraph, Some(&block), "")?;
    if !a.no_split {
        let parts = split(&master.hypergraph, Some(&block));
        if parts.len() > 1 {
            for (sub, b) in parts {
                s.emit(&sub, b.as_ref(), "")?;
            }
        }
    }
    s.flush()
}

fn mmpstrip(s: &mut Stream, a: &MmpstripArgs) -> Result<()> {
    let mode = match (&a.add, a.random) {
        (Some(path), _) => StripMode::Add { master: read_one(path, s.dim, s.lenient)?.hypergraph },
        (None, true) => StripMode::Random { seed: a.seed.ok_or_else(|| anyhow!("--random needs --seed"))?, samples: a.samples },
        (None, false) => StripMode::Exhaustive,
    };
    let spec = StripSpec { count: a.count, mode };
    s.each(|s, p| {
        let mut seen = HashSet::new();
        for child in strip(&p.hypergraph, &spec)? {
            if !a.dedup || seen.insert(canonical_key(&child)) {
                s.emit(&child, None, "")?;
            }
        }
        Ok(())
    })
}

fn class(s: &mut Stream, a: &ClassArgs) -> Result<()> {
    let master = match &a.master {
        Some(path) => read_one(path, s.dim, s.lenient)?.hypergraph,
        None => {
            let mut first = None;
            s.each(|_, p| {
                if first.is_none() {
                    first = Some(p.hypergraph);
                }
                Ok(())
            })?;
            first.ok_or_else(|| anyhow!("no master line on standard input"))?
        }
    };
    let strategy = match a.strategy {
        StrategyArg::Breadth => Strategy::Breadth,
        StrategyArg::Random => Strategy::Random {
            seed: a.seed.ok_or_else(|| anyhow!("--strategy random needs --seed"))?,
            samples: a.samples,
        },
    };
    let filters = ClassFilters { criticals_only: a.criticals, min_edges: a.min_edges };
    let records = generate_class(&master, filters, strategy, |l| {
        log::info!("{} edges: {} sets, {} critical", l.edges, l.sets, l.criticals);
    })?;
    for r in &records {
        if a.criticals && !r.is_critical {
            continue;
        }
        let comps: Vec<String> = r.components.iter().map(|(k, m)| format!("{k}-{m}")).collect();
        let notes = merge_notes(
            "",
            &[
                ("ks", flag(r.is_ks)),
                ("critical", flag(r.is_critical)),
                ("pp", flag(r.has_parity_proof)),
                ("delta", r.delta_count.to_string()),
                ("components", comps.join("+")),
            ],
        );
        s.emit(&r.hypergraph, None, &notes)?;
    }
    s.flush()
}

fn stats(s: &mut Stream, a: &StatsArgs) -> Result<()> {
    let mut d = Distribution::default();
    s.each(|_, p| {
        // lines marked non-critical or non-KS are not tallied
        if p.annotation("critical") == Some("0") || p.annotation("ks") == Some("0") {
            return Ok(());
        }
        let pp = match p.annotation("pp") {
            Some(v) => v == "1",
            None => has_parity_proof(&p.hypergraph),
        };
        d.add(p.hypergraph.vertex_count(), p.hypergraph.edge_count(), pp);
        Ok(())
    })?;
    if a.summary {
        for r in d.summary() {
            s.raw(&format!("{}\t{}\t{}\t{}\t{}", r.m, r.min_k, r.max_k, r.count, r.pp_count))?;
        }
    } else {
        for line in d.to_tsv().lines() {
            s.raw(line)?;
        }
    }
    s.flush()
}
