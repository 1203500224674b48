//! Graph and pattern loading: built-in names, files in either text format,
//! and stdin.

use std::io::Read;

use subdiv_core::constructions::split_construction;
use subdiv_core::{graph6, Error, Graph, Pattern, Result};

/// Resolves a built-in host name: `k5`, `k5-`, `c6`, `path4`, `star4`,
/// `split(4,3)`, `kb(3,3)`. Returns None for anything else (treated as a
/// path).
pub fn builtin_graph(name: &str) -> Option<Result<Graph>> {
    let s = name.trim().to_ascii_lowercase();
    if let Some(args) = parse_call(&s, "split") {
        return Some(args.and_then(|(l, t)| Ok(split_construction(l, t)?.graph)));
    }
    if let Some(args) = parse_call(&s, "kb") {
        return Some(args.map(|(r, c)| Graph::complete_bipartite(r, c)));
    }
    // pattern-style names double as hosts
    if looks_like_pattern_name(&s) {
        return Some(Pattern::from_name(&s).map(|p| p.graph().clone()));
    }
    None
}

fn parse_call(s: &str, fun: &str) -> Option<Result<(usize, usize)>> {
    let rest = s.strip_prefix(fun)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    let mut parts = inner.split(',').map(str::trim);
    let parse = |tok: Option<&str>| -> Result<usize> {
        tok.ok_or_else(|| Error::InvalidParameter(format!("{fun}: expected two arguments")))?
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("{fun}: {e}")))
    };
    let a = parse(parts.next());
    let b = parse(parts.next());
    if parts.next().is_some() {
        return Some(Err(Error::InvalidParameter(format!(
            "{fun}: too many arguments"
        ))));
    }
    Some(a.and_then(|a| b.map(|b| (a, b))))
}

fn looks_like_pattern_name(s: &str) -> bool {
    for prefix in ["path", "star", "k", "c", "p", "s"] {
        if let Some(rest) = s.strip_prefix(prefix) {
            let rest = rest.strip_suffix('-').unwrap_or(rest);
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                return true;
            }
        }
    }
    false
}

fn read_source(spec: &str) -> Result<String> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse {
                line: 0,
                msg: format!("stdin: {e}"),
            })?;
        Ok(buf)
    } else {
        std::fs::read_to_string(spec).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{spec}: {e}"),
        })
    }
}

/// Text sniffing: an edge-list header line starts with a digit; graph6
/// bytes never do.
fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty graph input".into(),
        })?;
    if first.starts_with(|c: char| c.is_ascii_digit()) {
        Graph::parse_edge_list(text)
    } else {
        graph6::decode(text)
    }
}

/// A host graph from a built-in name, a file path, or stdin (`-`).
pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(builtin) = builtin_graph(spec) {
        return builtin;
    }
    parse_graph_text(&read_source(spec)?)
}

/// A pattern from a built-in name or a graph file.
pub fn load_pattern(spec: &str) -> Result<Pattern> {
    if looks_like_pattern_name(&spec.trim().to_ascii_lowercase()) {
        return Pattern::from_name(spec);
    }
    Pattern::new(parse_graph_text(&read_source(spec)?)?, None)
}
