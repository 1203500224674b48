//! Subdivision witnesses: a branch-vertex injection plus one host path per
//! pattern edge, with every invariant checkable against the host graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;

/// Certificate that the host graph contains a subdivision of `pattern`.
///
/// `paths` is keyed by pattern edges `(i, j)` with `i < j`; each route runs
/// from `branch[i]` to `branch[j]`, so serialization and equality are
/// canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionWitness {
    pattern: Pattern,
    branch: Vec<usize>,
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

/// A broken witness invariant, addressed to the offending path or vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    BranchCountMismatch {
        expected: usize,
        got: usize,
    },
    BranchOutOfRange {
        pattern_vertex: usize,
        host_vertex: usize,
    },
    BranchNotInjective {
        host_vertex: usize,
    },
    MissingPath {
        edge: (usize, usize),
    },
    UnexpectedPath {
        edge: (usize, usize),
    },
    PathTooShort {
        edge: (usize, usize),
    },
    PathEndpointMismatch {
        edge: (usize, usize),
        expected: usize,
        got: usize,
    },
    PathVertexOutOfRange {
        edge: (usize, usize),
        vertex: usize,
    },
    NotAnEdge {
        edge: (usize, usize),
        from: usize,
        to: usize,
    },
    RepeatedVertexInPath {
        edge: (usize, usize),
        vertex: usize,
    },
    InternalVertexIsBranch {
        edge: (usize, usize),
        vertex: usize,
    },
    InternalVertexReused {
        vertex: usize,
    },
}

impl std::fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use WitnessViolation::*;
        match self {
            BranchCountMismatch { expected, got } => {
                write!(
                    f,
                    "branch map has {got} entries, pattern has {expected} vertices"
                )
            }
            BranchOutOfRange {
                pattern_vertex,
                host_vertex,
            } => {
                write!(f, "branch image of pattern vertex {pattern_vertex} is {host_vertex}, outside the host")
            }
            BranchNotInjective { host_vertex } => {
                write!(
                    f,
                    "branch map sends two pattern vertices to host vertex {host_vertex}"
                )
            }
            MissingPath { edge } => write!(f, "no path for pattern edge {edge:?}"),
            UnexpectedPath { edge } => write!(f, "path given for non-edge {edge:?}"),
            PathTooShort { edge } => write!(f, "path for {edge:?} has no edge (contracted)"),
            PathEndpointMismatch {
                edge,
                expected,
                got,
            } => {
                write!(
                    f,
                    "path for {edge:?} ends at {got}, branch vertex is {expected}"
                )
            }
            PathVertexOutOfRange { edge, vertex } => {
                write!(f, "path for {edge:?} visits {vertex}, outside the host")
            }
            NotAnEdge { edge, from, to } => {
                write!(f, "path for {edge:?} uses ({from}, {to}), not a host edge")
            }
            RepeatedVertexInPath { edge, vertex } => {
                write!(f, "path for {edge:?} repeats vertex {vertex}")
            }
            InternalVertexIsBranch { edge, vertex } => {
                write!(f, "path for {edge:?} passes through branch vertex {vertex}")
            }
            InternalVertexReused { vertex } => {
                write!(f, "internal vertex {vertex} is used by more than one path")
            }
        }
    }
}

impl SubdivisionWitness {
    /// Assembles a witness without validation; run [`Self::validate`] against
    /// the host to certify it.
    pub fn new(
        pattern: Pattern,
        branch: Vec<usize>,
        paths: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Self {
        SubdivisionWitness {
            pattern,
            branch,
            paths,
        }
    }

    /// The identity subdivision: pattern vertex `i` maps to host vertex `i`
    /// and every pattern edge is a direct host edge.
    pub fn identity(pattern: Pattern) -> Self {
        let branch: Vec<usize> = (0..pattern.order()).collect();
        let paths = pattern
            .graph()
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), vec![u, v]))
            .collect();
        SubdivisionWitness {
            pattern,
            branch,
            paths,
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn branch(&self) -> &[usize] {
        &self.branch
    }

    pub fn paths(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.paths
    }

    pub fn path(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.paths.get(&(i.min(j), i.max(j))).map(Vec::as_slice)
    }

    /// Branch vertices plus every path vertex.
    pub fn vertex_set(&self) -> VertexSet {
        let mut v: Vec<usize> = self.branch.clone();
        for route in self.paths.values() {
            v.extend_from_slice(route);
        }
        VertexSet::new(v)
    }

    /// Internal vertices of a route, i.e. everything but its endpoints.
    pub fn internal_vertices(route: &[usize]) -> &[usize] {
        if route.len() <= 2 {
            &[]
        } else {
            &route[1..route.len() - 1]
        }
    }

    /// Checks every invariant against the host; an empty list means valid.
    pub fn validate(&self, host: &Graph) -> Vec<WitnessViolation> {
        use WitnessViolation::*;
        let mut out = Vec::new();
        let f = self.pattern.graph();
        let l = f.n();

        if self.branch.len() != l {
            out.push(BranchCountMismatch {
                expected: l,
                got: self.branch.len(),
            });
            return out;
        }
        let mut seen_branch: BTreeMap<usize, usize> = BTreeMap::new();
        for (pv, &hv) in self.branch.iter().enumerate() {
            if hv >= host.n() {
                out.push(BranchOutOfRange {
                    pattern_vertex: pv,
                    host_vertex: hv,
                });
            } else if seen_branch.insert(hv, pv).is_some() {
                out.push(BranchNotInjective { host_vertex: hv });
            }
        }
        if !out.is_empty() {
            return out;
        }

        for (u, v) in f.edges() {
            if !self.paths.contains_key(&(u, v)) {
                out.push(MissingPath { edge: (u, v) });
            }
        }
        for &edge in self.paths.keys() {
            let (u, v) = edge;
            if u >= v || v >= l || !f.has_edge(u, v) {
                out.push(UnexpectedPath { edge });
            }
        }
        if !out.is_empty() {
            return out;
        }

        let mut internal_owner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (&edge, route) in &self.paths {
            let (i, j) = edge;
            if route.len() < 2 {
                out.push(PathTooShort { edge });
                continue;
            }
            if route[0] != self.branch[i] {
                out.push(PathEndpointMismatch {
                    edge,
                    expected: self.branch[i],
                    got: route[0],
                });
            }
            if *route.last().expect("route is non-empty") != self.branch[j] {
                out.push(PathEndpointMismatch {
                    edge,
                    expected: self.branch[j],
                    got: *route.last().expect("route is non-empty"),
                });
            }
            if let Some(&v) = route.iter().find(|&&v| v >= host.n()) {
                out.push(PathVertexOutOfRange { edge, vertex: v });
                continue;
            }
            for w in route.windows(2) {
                if !host.has_edge(w[0], w[1]) {
                    out.push(NotAnEdge {
                        edge,
                        from: w[0],
                        to: w[1],
                    });
                }
            }
            let mut seen = std::collections::BTreeSet::new();
            for &v in route.iter() {
                if !seen.insert(v) {
                    out.push(RepeatedVertexInPath { edge, vertex: v });
                }
            }
            for &v in Self::internal_vertices(route) {
                if seen_branch.contains_key(&v) {
                    out.push(InternalVertexIsBranch { edge, vertex: v });
                }
                if let Some(prev) = internal_owner.insert(v, edge) {
                    if prev != edge {
                        out.push(InternalVertexReused { vertex: v });
                    }
                }
            }
        }
        out
    }

    /// Structural invariants only (injectivity, path shapes, disjointness),
    /// checked by validating against a complete host on the same vertices.
    pub fn validate_structure(&self) -> Vec<WitnessViolation> {
        let top = self
            .branch
            .iter()
            .copied()
            .chain(self.paths.values().flatten().copied())
            .max()
            .unwrap_or(0);
        self.validate(&Graph::complete(top + 1))
    }

    /// Validates and converts violations into an error.
    pub fn ensure_valid(&self, host: &Graph) -> Result<()> {
        let violations = self.validate(host);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidWitness(violations))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessJson::from(self)).expect("witness serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: WitnessJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse {
                line: 0,
                msg: format!("witness JSON: {e}"),
            })?;
        parsed.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    pattern: PatternJson,
    branch: Vec<(usize, usize)>,
    paths: Vec<PathJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PatternJson {
    Name(String),
    Explicit {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    edge: (usize, usize),
    route: Vec<usize>,
}

impl From<&SubdivisionWitness> for WitnessJson {
    fn from(w: &SubdivisionWitness) -> Self {
        let pattern = match w.pattern.label() {
            Some(name) => PatternJson::Name(name.to_string()),
            None => PatternJson::Explicit {
                n: w.pattern.order(),
                edges: w.pattern.graph().edges(),
            },
        };
        WitnessJson {
            pattern,
            branch: w.branch.iter().copied().enumerate().collect(),
            paths: w
                .paths
                .iter()
                .map(|(&edge, route)| PathJson {
                    edge,
                    route: route.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<WitnessJson> for SubdivisionWitness {
    type Error = Error;

    fn try_from(json: WitnessJson) -> Result<Self> {
        let pattern = match json.pattern {
            PatternJson::Name(name) => Pattern::from_name(&name)?,
            PatternJson::Explicit { n, edges } => {
                Pattern::new(Graph::from_edges(n, &edges)?, None)?
            }
        };
        let mut branch = vec![usize::MAX; pattern.order()];
        if json.branch.len() != pattern.order() {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "witness JSON: branch has {} entries for a pattern on {} vertices",
                    json.branch.len(),
                    pattern.order()
                ),
            });
        }
        for (pv, hv) in json.branch {
            if pv >= pattern.order() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("witness JSON: branch names pattern vertex {pv}"),
                });
            }
            branch[pv] = hv;
        }
        let paths = json
            .paths
            .into_iter()
            .map(|p| ((p.edge.0.min(p.edge.1), p.edge.0.max(p.edge.1)), p.route))
            .collect();
        Ok(SubdivisionWitness::new(pattern, branch, paths))
    }
}
