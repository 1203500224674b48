use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso;

/// Largest pattern order any operation accepts. Everything downstream is
/// exponential in pattern size, so oversized inputs fail loudly here.
pub const PATTERN_CAP: usize = 12;

/// A small labeled graph to subdivide or count copies of.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    label: Option<String>,
    automorphisms: OnceLock<u64>,
}

impl Pattern {
    pub fn new(graph: Graph, label: Option<String>) -> Result<Self> {
        if graph.n() < 1 {
            return Err(Error::InvalidParameter(
                "pattern needs at least one vertex".into(),
            ));
        }
        if graph.n() > PATTERN_CAP {
            return Err(Error::CapExceeded {
                what: "pattern order",
                limit: PATTERN_CAP,
                actual: graph.n(),
            });
        }
        Ok(Pattern {
            graph,
            label,
            automorphisms: OnceLock::new(),
        })
    }

    pub fn complete(l: usize) -> Result<Self> {
        Pattern::new(Graph::complete(l), Some(format!("K{l}")))
    }

    /// `K_l` minus the edge between its last two vertices.
    pub fn complete_minus_edge(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParameter(
                "K minus an edge needs l >= 2".into(),
            ));
        }
        let mut g = Graph::empty(l);
        for u in 0..l {
            for v in u + 1..l {
                if (u, v) != (l - 2, l - 1) {
                    g.add_edge(u, v);
                }
            }
        }
        Pattern::new(g, Some(format!("K{l}-")))
    }

    pub fn cycle(l: usize) -> Result<Self> {
        if l < 3 {
            return Err(Error::InvalidParameter("cycle needs l >= 3".into()));
        }
        Pattern::new(Graph::cycle(l), Some(format!("C{l}")))
    }

    pub fn path(l: usize) -> Result<Self> {
        Pattern::new(Graph::path(l), Some(format!("P{l}")))
    }

    pub fn star(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParameter("star needs l >= 2".into()));
        }
        Pattern::new(Graph::star(l), Some(format!("S{l}")))
    }

    /// Resolves built-in names: `k5`, `k5-`, `c6`, `p4`/`path4`, `s4`/`star4`.
    pub fn from_name(name: &str) -> Result<Self> {
        let s = name.trim().to_ascii_lowercase();
        let parse_num = |digits: &str| -> Result<usize> {
            digits
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("unknown pattern name {name:?}")))
        };
        if let Some(rest) = s.strip_prefix('k') {
            return if let Some(num) = rest.strip_suffix('-') {
                Pattern::complete_minus_edge(parse_num(num)?)
            } else {
                Pattern::complete(parse_num(rest)?)
            };
        }
        if let Some(rest) = s.strip_prefix('c') {
            return Pattern::cycle(parse_num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("path").or_else(|| s.strip_prefix('p')) {
            return Pattern::path(parse_num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("star").or_else(|| s.strip_prefix('s')) {
            return Pattern::star(parse_num(rest)?);
        }
        Err(Error::InvalidParameter(format!(
            "unknown pattern name {name:?}"
        )))
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Number of edge-preserving self-bijections, computed on first use.
    pub fn automorphism_count(&self) -> u64 {
        *self
            .automorphisms
            .get_or_init(|| iso::automorphism_count(&self.graph))
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.label == other.label
    }
}
impl Eq for Pattern {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_expected_shape() {
        let k4m = Pattern::complete_minus_edge(4).unwrap();
        assert_eq!(k4m.order(), 4);
        assert_eq!(k4m.edge_count(), 5);
        assert!(!k4m.graph().has_edge(2, 3));

        let s4 = Pattern::star(4).unwrap();
        assert_eq!(s4.graph().degree(0), 3);
    }

    #[test]
    fn name_parsing() {
        assert_eq!(Pattern::from_name("K4-").unwrap().label(), Some("K4-"));
        assert_eq!(Pattern::from_name("c5").unwrap().edge_count(), 5);
        assert_eq!(Pattern::from_name("path4").unwrap().edge_count(), 3);
        assert_eq!(Pattern::from_name("star4").unwrap().order(), 4);
        assert_eq!(Pattern::from_name("p3").unwrap().edge_count(), 2);
        assert!(Pattern::from_name("q7").is_err());
        assert!(Pattern::from_name("k abc").is_err());
    }

    #[test]
    fn cap_enforced() {
        assert!(Pattern::complete(13).is_err());
        assert!(Pattern::complete(12).is_ok());
    }
}
