use std::collections::{BTreeMap, HashMap};

use super::glyph::{base_rank, VertexLabel, ALPHABET};
use super::hypergraph::Hypergraph;
use super::MmpError;

/// Vertex coordinates attached to an MMP line: vertex index -> one
/// component expression per dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoordinatizationBlock {
    pub entries: BTreeMap<usize, Vec<String>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Drop empty edges (`,,,`) instead of rejecting them.
    pub lenient: bool,
}

/// Result of parsing one line.
#[derive(Debug, Clone)]
pub struct ParsedLine {
    pub hypergraph: Hypergraph,
    /// Original label of each vertex.
    pub labels: Vec<VertexLabel>,
    pub coordinatization: Option<CoordinatizationBlock>,
    /// Text after the statement, e.g. `ks=1 critical=0`.
    pub annotations: String,
}

impl ParsedLine {
    /// Value of a `key=value` annotation.
    pub fn annotation(&self, key: &str) -> Option<&str> {
        self.annotations.split_whitespace().find_map(|tok| {
            let (k, v) = tok.split_once('=')?;
            (k == key).then_some(v)
        })
    }
}

fn strip_artifacts(s: &str) -> String {
    let s = s.replace("\\break", "");
    // LaTeX escapes only ever appear in the coordinatization part
    match s.find('.') {
        Some(dot) => {
            let (head, tail) = s.split_at(dot);
            let tail = tail
                .replace("\\{", "{")
                .replace("\\}", "}")
                .replace("$\\omega^2$", "w2")
                .replace("$\\omega$", "w");
            format!("{head}{tail}")
        }
        None => s,
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_second(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars[(self.pos + 1).min(self.chars.len())..].iter().copied().find(|c| !c.is_whitespace())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn glyph(&mut self) -> Result<VertexLabel, MmpError> {
        let mut prefix = 0;
        loop {
            match self.bump() {
                Some('+') => prefix += 1,
                Some(c) => {
                    let r = base_rank(c).ok_or(MmpError::BadGlyph(c))?;
                    return Ok(VertexLabel(prefix * ALPHABET.len() + r));
                }
                None => return Err(MmpError::Unterminated),
            }
        }
    }
}

/// Parse one MMP line in dimension `dimension`.
pub fn parse_line(line: &str, dimension: usize) -> Result<ParsedLine, MmpError> {
    parse_line_with(line, dimension, ParseOptions::default())
}

pub fn parse_line_with(line: &str, dimension: usize, opts: ParseOptions) -> Result<ParsedLine, MmpError> {
    if !line.is_ascii() {
        return Err(MmpError::NonAscii);
    }
    let text = strip_artifacts(line);
    let mut cur = Cursor { chars: text.chars().collect(), pos: 0, _src: line };

    let mut raw_edges: Vec<Vec<VertexLabel>> = Vec::new();
    let mut current: Vec<VertexLabel> = Vec::new();
    let mut terminated = false;
    let mut saw_any = false;
    loop {
        match cur.peek() {
            None => break,
            Some('.') => {
                cur.pos += 1;
                terminated = true;
                break;
            }
            Some(',') => {
                cur.pos += 1;
                raw_edges.push(std::mem::take(&mut current));
            }
            Some(_) => {
                current.push(cur.glyph()?);
                saw_any = true;
            }
        }
    }
    raw_edges.push(current);
    if !saw_any {
        return Err(MmpError::NoEdges);
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (i, e) in raw_edges.into_iter().enumerate() {
        if e.is_empty() {
            if opts.lenient {
                continue;
            }
            return Err(MmpError::EmptyEdge { edge: i });
        }
        edges.push(e);
    }

    // intern labels in first-appearance order
    let mut index_of: HashMap<VertexLabel, u32> = HashMap::new();
    let mut labels = Vec::new();
    let numbered: Vec<Vec<u32>> = edges
        .iter()
        .map(|e| {
            e.iter()
                .map(|l| {
                    *index_of.entry(*l).or_insert_with(|| {
                        labels.push(*l);
                        (labels.len() - 1) as u32
                    })
                })
                .collect()
        })
        .collect();
    let hypergraph = Hypergraph::from_edges(dimension, &numbered)?;
    // from_edges keeps first-appearance order, so indices agree with `labels`
    debug_assert_eq!(hypergraph.vertex_count(), labels.len());

    let mut coordinatization = None;
    if terminated && cur.peek() == Some('{') {
        cur.pos += 1;
        coordinatization = Some(parse_block(&mut cur, &index_of, dimension)?);
        if cur.peek() == Some('.') {
            cur.pos += 1;
        }
    }
    let annotations: String = cur.chars[cur.pos.min(cur.chars.len())..].iter().collect::<String>().trim().to_string();
    Ok(ParsedLine { hypergraph, labels, coordinatization, annotations })
}

fn parse_block(
    cur: &mut Cursor<'_>,
    index_of: &HashMap<VertexLabel, u32>,
    dimension: usize,
) -> Result<CoordinatizationBlock, MmpError> {
    let mut block = CoordinatizationBlock::default();
    loop {
        match cur.peek() {
            None => return Err(MmpError::Unterminated),
            Some('}') if cur.peek_second() != Some('=') => {
                cur.pos += 1;
                return Ok(block);
            }
            Some(',') => {
                cur.pos += 1;
            }
            Some(_) => {
                let label = cur.glyph()?;
                if cur.bump() != Some('=') {
                    return Err(MmpError::BadBlock(format!("expected '=' after {}", label.glyph())));
                }
                if cur.bump() != Some('{') {
                    return Err(MmpError::BadBlock(format!("expected '{{' for {}", label.glyph())));
                }
                let mut body = String::new();
                loop {
                    match cur.chars.get(cur.pos) {
                        None => return Err(MmpError::Unterminated),
                        Some('}') => {
                            cur.pos += 1;
                            break;
                        }
                        Some(&c) => {
                            body.push(c);
                            cur.pos += 1;
                        }
                    }
                }
                let vertex = *index_of.get(&label).ok_or_else(|| MmpError::UnknownVertex(label.glyph()))?;
                let exprs: Vec<String> = crate::algebra::split_list(&body).into_iter().map(str::to_string).collect();
                if exprs.len() != dimension {
                    return Err(MmpError::Arity { vertex: label.glyph(), expected: dimension, found: exprs.len() });
                }
                block.entries.insert(vertex as usize, exprs);
            }
        }
    }
}

/// First-appearance glyph assignment used by [`serialize`].
fn first_appearance(h: &Hypergraph) -> Vec<u32> {
    let mut map = vec![u32::MAX; h.vertex_count()];
    let mut next = 0;
    for &v in h.edges().iter().flatten() {
        if map[v as usize] == u32::MAX {
            map[v as usize] = next;
            next += 1;
        }
    }
    map
}

/// One MMP line: edges comma-separated, `.`-terminated, followed by the
/// coordinatization block when given. Glyphs follow first appearance.
pub fn serialize(h: &Hypergraph, coord: Option<&CoordinatizationBlock>) -> String {
    let map = first_appearance(h);
    let mut out = String::with_capacity(h.edge_count() * (h.dimension() + 1) + 1);
    for (i, e) in h.edges().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        for &v in e {
            VertexLabel(map[v as usize] as usize).push_glyph(&mut out);
        }
    }
    out.push('.');
    if let Some(block) = coord {
        let mut entries: Vec<(u32, &Vec<String>)> =
            block.entries.iter().map(|(&v, exprs)| (map[v], exprs)).collect();
        entries.sort_by_key(|(g, _)| *g);
        out.push('{');
        for (i, (g, exprs)) in entries.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            VertexLabel(g as usize).push_glyph(&mut out);
            out.push_str("={");
            out.push_str(&exprs.join(","));
            out.push('}');
        }
        out.push('}');
    }
    out
}

/// Violations of the MMP conditions for the hypergraph's dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MmpReport {
    /// Edges with fewer than n vertices.
    pub edge_size_violations: Vec<usize>,
    /// Edge pairs sharing more than n-2 vertices.
    pub intersection_violations: Vec<(usize, usize)>,
}

impl MmpReport {
    pub fn is_valid(&self) -> bool {
        self.edge_size_violations.is_empty() && self.intersection_violations.is_empty()
    }
}

pub fn check_mmp_validity(h: &Hypergraph) -> MmpReport {
    let n = h.dimension();
    let mut report = MmpReport::default();
    for (i, e) in h.edges().iter().enumerate() {
        if e.len() < n {
            report.edge_size_violations.push(i);
        }
    }
    let limit = n.saturating_sub(2);
    let inc = h.incidence();
    let mut shared: HashMap<(u32, u32), usize> = HashMap::new();
    for edges in &inc {
        for (a, &x) in edges.iter().enumerate() {
            for &y in &edges[a + 1..] {
                *shared.entry((x.min(y), x.max(y))).or_default() += 1;
            }
        }
    }
    let mut bad: Vec<(usize, usize)> =
        shared.into_iter().filter(|&(_, c)| c > limit).map(|((a, b), _)| (a as usize, b as usize)).collect();
    bad.sort_unstable();
    report.intersection_violations = bad;
    report
}
