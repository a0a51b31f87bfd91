use std::io::{self, BufRead, BufWriter, Write};

use anyhow::{anyhow, Context, Result};
use ksforge::mmp::{parse_line_with, serialize, CoordinatizationBlock, Hypergraph, ParseOptions, ParsedLine};

/// Reads MMP lines from stdin and writes results to stdout. Malformed
/// lines abort with their line number unless `lenient`, in which case they
/// are reported and skipped.
pub struct Stream {
    pub dim: usize,
    pub lenient: bool,
    out: BufWriter<io::Stdout>,
    pub skipped: usize,
}

impl Stream {
    pub fn new(dim: usize, lenient: bool) -> Stream {
        Stream { dim, lenient, out: BufWriter::new(io::stdout()), skipped: 0 }
    }

    pub fn parse(&self, text: &str) -> Result<ParsedLine, ksforge::mmp::MmpError> {
        parse_line_with(text, self.dim, ParseOptions { lenient: self.lenient })
    }

    /// Run `f` on every non-blank input line. Errors from `f` are treated
    /// like parse errors.
    pub fn each(&mut self, mut f: impl FnMut(&mut Stream, ParsedLine) -> Result<()>) -> Result<()> {
        let stdin = io::stdin();
        for (i, line) in stdin.lock().lines().enumerate() {
            let line = line.context("reading standard input")?;
            if line.trim().is_empty() {
                continue;
            }
            let result = self.parse(&line).map_err(anyhow::Error::from).and_then(|p| f(self, p));
            if let Err(e) = result {
                self.fail(i + 1, e)?;
            }
        }
        self.out.flush()?;
        Ok(())
    }

    fn fail(&mut self, line: usize, e: anyhow::Error) -> Result<()> {
        if self.lenient {
            log::warn!("line {line}: {e:#}");
            eprintln!("line {line}: {e:#} (skipped)");
            self.skipped += 1;
            Ok(())
        } else {
            Err(anyhow!("line {line}: {e:#}"))
        }
    }

    /// Write `h` with its block and the merged annotations.
    pub fn emit(&mut self, h: &Hypergraph, block: Option<&CoordinatizationBlock>, notes: &str) -> Result<()> {
        let mut line = serialize(h, block);
        if !notes.is_empty() {
            line.push(' ');
            line.push_str(notes);
        }
        writeln!(self.out, "{line}")?;
        Ok(())
    }

    pub fn raw(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

/// `old` annotations with every key in `new` replaced or appended, in
/// order.
pub fn merge_notes(old: &str, new: &[(&str, String)]) -> String {
    let mut toks: Vec<String> = old
        .split_whitespace()
        .filter(|tok| {
            let key = tok.split_once('=').map_or(*tok, |(k, _)| k);
            !new.iter().any(|(k, _)| *k == key)
        })
        .map(str::to_string)
        .collect();
    toks.extend(new.iter().map(|(k, v)| format!("{k}={v}")));
    toks.join(" ")
}

pub fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// First non-blank line of a file, parsed.
pub fn read_one(path: &std::path::Path, dim: usize, lenient: bool) -> Result<ParsedLine> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| anyhow!("{} holds no MMP line", path.display()))?;
    parse_line_with(line, dim, ParseOptions { lenient }).with_context(|| format!("{}: line 1", path.display()))
}
