//! Finding, extracting and exhaustively enumerating subdivisions with
//! distinct vertex sets.
//!
//! Two independent engines compute the same collection: the subset engine
//! tests every vertex subset for a spanning subdivision, the embed engine
//! enumerates witnesses directly and deduplicates their vertex sets. Their
//! agreement is a standing cross-check on both.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::iso;
use crate::pattern::Pattern;
use crate::witness::SubdivisionWitness;

/// Enumeration caps. The defaults keep every operation a desk-scale
/// computation; callers may widen them explicitly.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest host order the subset engine accepts.
    pub subset_host_cap: usize,
    /// Largest host order the embed engine accepts.
    pub embed_host_cap: usize,
    /// Largest `max_set_size` the embed engine accepts.
    pub embed_set_cap: usize,
    /// Collected vertex sets beyond this mark the result truncated.
    pub collection_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_host_cap: 16,
            embed_host_cap: 24,
            embed_set_cap: 12,
            collection_cap: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Subset,
    Embed,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "subset" => Ok(Engine::Subset),
            "embed" => Ok(Engine::Embed),
            other => Err(Error::InvalidParameter(format!("unknown engine {other:?}"))),
        }
    }
}

/// Distinct vertex sets supporting a subdivision, with an exact count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub engine: Engine,
    pub vertex_sets: BTreeSet<VertexSet>,
    pub count: BigUint,
    pub truncated: bool,
}

impl EnumerationResult {
    fn from_sets(engine: Engine, mut sets: BTreeSet<VertexSet>, cap: usize) -> Self {
        let truncated = sets.len() > cap;
        while sets.len() > cap {
            let last = sets.last().expect("non-empty beyond cap").clone();
            sets.remove(&last);
        }
        EnumerationResult {
            engine,
            count: BigUint::from(sets.len()),
            vertex_sets: sets,
            truncated,
        }
    }

    pub fn to_json(&self, include_sets: bool) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert(
            "engine".into(),
            serde_json::to_value(self.engine).expect("engine serializes"),
        );
        obj.insert("count".into(), serde_json::json!(self.count.to_string()));
        obj.insert("truncated".into(), serde_json::json!(self.truncated));
        if include_sets {
            obj.insert(
                "vertex_sets".into(),
                serde_json::Value::Array(
                    self.vertex_sets
                        .iter()
                        .map(|s| serde_json::json!(s.as_slice()))
                        .collect(),
                ),
            );
        }
        serde_json::Value::Object(obj)
    }
}

// ---------------------------------------------------------------------------
// Witness search: shared backtracking over branch assignments and paths
// ---------------------------------------------------------------------------

struct WitnessSearch<'a> {
    host: &'a Graph,
    pattern: &'a Pattern,
    edges: Vec<(usize, usize)>,
    automorphisms: Vec<Vec<usize>>,
    /// All path internals must land in vertices below this budget count.
    max_vertices: usize,
    /// When set, every host vertex must be used (spanning search).
    spanning: bool,
}

impl<'a> WitnessSearch<'a> {
    fn new(host: &'a Graph, pattern: &'a Pattern, max_vertices: usize, spanning: bool) -> Self {
        WitnessSearch {
            host,
            pattern,
            edges: pattern.graph().edges(),
            automorphisms: iso::automorphism_list(pattern.graph()),
            max_vertices,
            spanning,
        }
    }

    /// Visits one witness per orbit of the pattern's automorphism group.
    fn run(&self, visit: &mut dyn FnMut(&SubdivisionWitness) -> ControlFlow<()>) {
        let l = self.pattern.order();
        if l > self.max_vertices || l > self.host.n() {
            return;
        }
        let mut branch = Vec::with_capacity(l);
        let mut used = Bitset::new(self.host.n());
        let _ = self.assign_branch(&mut branch, &mut used, visit);
    }

    fn assign_branch(
        &self,
        branch: &mut Vec<usize>,
        used: &mut Bitset,
        visit: &mut dyn FnMut(&SubdivisionWitness) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let l = self.pattern.order();
        if branch.len() == l {
            if !self.branch_is_canonical(branch) {
                return ControlFlow::Continue(());
            }
            let mut paths = BTreeMap::new();
            return self.route_edges(0, branch, used, l, &mut paths, visit);
        }
        let fv = branch.len();
        let needed = self.pattern.graph().degree(fv);
        for gv in 0..self.host.n() {
            if used.contains(gv) || self.host.degree(gv) < needed {
                continue;
            }
            branch.push(gv);
            used.insert(gv);
            let flow = self.assign_branch(branch, used, visit);
            used.remove(gv);
            branch.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Keeps exactly the lexicographically smallest branch tuple per orbit
    /// of the pattern's automorphism group.
    fn branch_is_canonical(&self, branch: &[usize]) -> bool {
        self.automorphisms
            .iter()
            .all(|sigma| !branch.iter().copied().gt(sigma.iter().map(|&i| branch[i])))
    }

    #[allow(clippy::too_many_arguments)]
    fn route_edges(
        &self,
        edge_idx: usize,
        branch: &[usize],
        used: &mut Bitset,
        used_count: usize,
        paths: &mut BTreeMap<(usize, usize), Vec<usize>>,
        visit: &mut dyn FnMut(&SubdivisionWitness) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if edge_idx == self.edges.len() {
            if self.spanning && used_count != self.host.n() {
                return ControlFlow::Continue(());
            }
            let witness =
                SubdivisionWitness::new(self.pattern.clone(), branch.to_vec(), paths.clone());
            return visit(&witness);
        }
        let (i, j) = self.edges[edge_idx];
        let from = branch[i];
        let to = branch[j];
        // shortest paths first: iterative deepening on internal length
        for internals in 0..=(self.max_vertices - used_count) {
            let mut route = vec![from];
            self.grow_path(
                edge_idx, branch, used, used_count, paths, &mut route, to, internals, visit,
            )?;
        }
        ControlFlow::Continue(())
    }

    #[allow(clippy::too_many_arguments)]
    fn grow_path(
        &self,
        edge_idx: usize,
        branch: &[usize],
        used: &mut Bitset,
        used_count: usize,
        paths: &mut BTreeMap<(usize, usize), Vec<usize>>,
        route: &mut Vec<usize>,
        target: usize,
        internals_left: usize,
        visit: &mut dyn FnMut(&SubdivisionWitness) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let cur = *route.last().expect("route starts non-empty");
        if internals_left == 0 {
            if self.host.has_edge(cur, target) {
                route.push(target);
                paths.insert(self.edges[edge_idx], route.clone());
                let flow = self.route_edges(edge_idx + 1, branch, used, used_count, paths, visit);
                paths.remove(&self.edges[edge_idx]);
                route.pop();
                flow?;
            }
            return ControlFlow::Continue(());
        }
        for next in self.host.neighbors(cur).iter() {
            if used.contains(next) {
                continue;
            }
            route.push(next);
            used.insert(next);
            let flow = self.grow_path(
                edge_idx,
                branch,
                used,
                used_count + 1,
                paths,
                route,
                target,
                internals_left - 1,
                visit,
            );
            used.remove(next);
            route.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

// ---------------------------------------------------------------------------
// Spanning test and the two enumeration engines
// ---------------------------------------------------------------------------

/// A witness whose vertex set is exactly `set`, if one exists.
///
/// The search runs inside the induced subgraph (any witness with vertex set
/// `set` lives there) and relabels back to host vertices.
pub fn spans_subdivision(
    g: &Graph,
    f: &Pattern,
    set: &VertexSet,
) -> Result<Option<SubdivisionWitness>> {
    if set.len() < f.order() {
        return Ok(None);
    }
    let induced = g.induced_subgraph(set)?;
    let labels: Vec<usize> = set.iter().collect();
    let search = WitnessSearch::new(&induced, f, set.len(), true);
    let mut found = None;
    search.run(&mut |w| {
        found = Some(relabel_witness(w, &labels));
        ControlFlow::Break(())
    });
    Ok(found)
}

fn relabel_witness(w: &SubdivisionWitness, labels: &[usize]) -> SubdivisionWitness {
    let branch = w.branch().iter().map(|&v| labels[v]).collect();
    let paths = w
        .paths()
        .iter()
        .map(|(&e, route)| (e, route.iter().map(|&v| labels[v]).collect()))
        .collect();
    SubdivisionWitness::new(w.pattern().clone(), branch, paths)
}

/// Engine A: every subset of at least pattern order and at most
/// `max_set_size` vertices is tested for a spanning subdivision. Exact when
/// `max_set_size = n` and the result is not truncated.
pub fn enumerate_distinguishable_subset(
    g: &Graph,
    f: &Pattern,
    max_set_size: usize,
) -> Result<EnumerationResult> {
    enumerate_distinguishable_subset_with(g, f, max_set_size, &Limits::default())
}

pub fn enumerate_distinguishable_subset_with(
    g: &Graph,
    f: &Pattern,
    max_set_size: usize,
    limits: &Limits,
) -> Result<EnumerationResult> {
    let n = g.n();
    if n > limits.subset_host_cap {
        return Err(Error::CapExceeded {
            what: "subset-engine host order",
            limit: limits.subset_host_cap,
            actual: n,
        });
    }
    let mut sets: BTreeSet<VertexSet> = BTreeSet::new();
    for size in f.order()..=max_set_size.min(n) {
        let hits: Vec<VertexSet> = iso::subsets_of_size(n, size)
            .into_par_iter()
            .filter_map(|s| match spans_subdivision(g, f, &s) {
                Ok(Some(_)) => Some(s),
                _ => None,
            })
            .collect();
        sets.extend(hits);
    }
    Ok(EnumerationResult::from_sets(
        Engine::Subset,
        sets,
        limits.collection_cap,
    ))
}

/// Engine B: direct backtracking enumeration of witnesses, deduplicating
/// vertex sets. Independent of engine A and must agree with it.
pub fn enumerate_distinguishable_embed(
    g: &Graph,
    f: &Pattern,
    max_set_size: usize,
) -> Result<EnumerationResult> {
    enumerate_distinguishable_embed_with(g, f, max_set_size, &Limits::default())
}

pub fn enumerate_distinguishable_embed_with(
    g: &Graph,
    f: &Pattern,
    max_set_size: usize,
    limits: &Limits,
) -> Result<EnumerationResult> {
    let n = g.n();
    if n > limits.embed_host_cap {
        return Err(Error::CapExceeded {
            what: "embed-engine host order",
            limit: limits.embed_host_cap,
            actual: n,
        });
    }
    let effective_size = max_set_size.min(n);
    if effective_size > limits.embed_set_cap {
        return Err(Error::CapExceeded {
            what: "embed-engine set size",
            limit: limits.embed_set_cap,
            actual: effective_size,
        });
    }
    let mut sets: BTreeSet<VertexSet> = BTreeSet::new();
    let mut truncated = false;
    let search = WitnessSearch::new(g, f, effective_size, false);
    search.run(&mut |w| {
        if sets.len() >= limits.collection_cap && !sets.contains(&w.vertex_set()) {
            truncated = true;
            return ControlFlow::Break(());
        }
        sets.insert(w.vertex_set());
        ControlFlow::Continue(())
    });
    let mut result = EnumerationResult::from_sets(Engine::Embed, sets, limits.collection_cap);
    result.truncated |= truncated;
    Ok(result)
}

/// Visits every witness of a subdivision of `f` in `g` on at most
/// `max_set_size` vertices, one per automorphism orbit. Used by the
/// per-witness verification harnesses.
pub fn for_each_witness(
    g: &Graph,
    f: &Pattern,
    max_set_size: usize,
    mut visit: impl FnMut(&SubdivisionWitness) -> ControlFlow<()>,
) {
    let search = WitnessSearch::new(g, f, max_set_size.min(g.n()), false);
    search.run(&mut visit);
}

/// Thin wrapper returning only the count; errors when the underlying
/// enumeration truncated, since the count would not be exact.
pub fn count_distinguishable(
    g: &Graph,
    f: &Pattern,
    engine: Engine,
    max_set_size: usize,
) -> Result<BigUint> {
    let result = match engine {
        Engine::Subset => enumerate_distinguishable_subset(g, f, max_set_size)?,
        Engine::Embed => enumerate_distinguishable_embed(g, f, max_set_size)?,
    };
    if result.truncated {
        return Err(Error::CapExceeded {
            what: "enumeration collection",
            limit: Limits::default().collection_cap,
            actual: result.vertex_sets.len() + 1,
        });
    }
    Ok(result.count)
}

// ---------------------------------------------------------------------------
// Extraction and families
// ---------------------------------------------------------------------------

/// From a witness of a complete-graph subdivision, extracts a subdivision of
/// the smaller complete graph that keeps every original branch vertex: the
/// dropped branch vertices are absorbed into one rerouted path obtained by
/// concatenating the chain P(l-1,l), P(l,l+1), ..., P(k-2,k-1), P(0,k-1).
pub fn extract_subclique_subdivision(
    w: &SubdivisionWitness,
    l: usize,
) -> Result<SubdivisionWitness> {
    let k = w.pattern().order();
    if !w.pattern().graph().is_complete() {
        return Err(Error::InvalidParameter(
            "extraction needs a complete-graph subdivision witness".into(),
        ));
    }
    if l > k {
        return Err(Error::InvalidParameter(format!(
            "cannot extract order {l} from a witness of order {k}"
        )));
    }
    if l == k {
        return Ok(w.clone());
    }
    if l < 2 {
        return Err(Error::InvalidParameter(
            "extraction below order 2 cannot keep the remaining branch vertices".into(),
        ));
    }
    let path_of = |i: usize, j: usize| -> Result<&[usize]> {
        w.path(i, j).ok_or_else(|| {
            Error::InvalidWitness(vec![crate::witness::WitnessViolation::MissingPath {
                edge: (i.min(j), i.max(j)),
            }])
        })
    };

    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for i in 0..l {
        for j in i + 1..l {
            if (i, j) != (0, l - 1) {
                paths.insert((i, j), path_of(i, j)?.to_vec());
            }
        }
    }
    // walk 0 -> k-1 along P(0, k-1), then back down the chain to l-1
    let mut route = path_of(0, k - 1)?.to_vec();
    for j in (l..k).rev() {
        let seg = path_of(j - 1, j)?;
        route.extend(seg.iter().rev().skip(1));
    }
    paths.insert((0, l - 1), route);

    Ok(SubdivisionWitness::new(
        Pattern::complete(l)?,
        w.branch()[..l].to_vec(),
        paths,
    ))
}

/// The largest `d` at most `d_cap` with a complete-graph subdivision in the
/// host, with a witness. Exhaustive search from `d_cap` downward.
pub fn max_topological_clique(g: &Graph, d_cap: usize) -> Result<(usize, SubdivisionWitness)> {
    max_topological_clique_with(g, d_cap, &Limits::default())
}

pub fn max_topological_clique_with(
    g: &Graph,
    d_cap: usize,
    limits: &Limits,
) -> Result<(usize, SubdivisionWitness)> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("host graph is empty".into()));
    }
    if d_cap == 0 {
        return Err(Error::InvalidParameter("d_cap must be at least 1".into()));
    }
    if g.n() > limits.embed_host_cap {
        return Err(Error::CapExceeded {
            what: "embed-engine host order",
            limit: limits.embed_host_cap,
            actual: g.n(),
        });
    }
    for d in (1..=d_cap.min(g.n())).rev() {
        // branch vertices of a TK_d need host degree at least d - 1
        let eligible = (0..g.n()).filter(|&v| g.degree(v) >= d - 1).count();
        if eligible < d {
            continue;
        }
        let pattern = Pattern::complete(d)?;
        let search = WitnessSearch::new(g, &pattern, g.n(), false);
        let mut found = None;
        search.run(&mut |w| {
            found = Some(w.clone());
            ControlFlow::Break(())
        });
        if let Some(w) = found {
            return Ok((d, w));
        }
    }
    unreachable!("d = 1 always succeeds on a non-empty host")
}

/// The subset family behind the exponential lower bound: for every index set
/// `I` of at least `l` branch vertices, restrict the witness to `I` and
/// extract an order-`l` subdivision. The returned witnesses have pairwise
/// distinct vertex sets because their intersections with the branch set are
/// exactly the chosen index sets.
pub fn theorem_i_family(
    g: &Graph,
    w: &SubdivisionWitness,
    l: usize,
    cap: Option<usize>,
) -> Result<Vec<SubdivisionWitness>> {
    w.ensure_valid(g)?;
    let d = w.pattern().order();
    if !w.pattern().graph().is_complete() {
        return Err(Error::InvalidParameter(
            "theorem_i_family needs a complete-graph subdivision witness".into(),
        ));
    }
    if l > d || l < 2 {
        return Err(Error::InvalidParameter(format!(
            "family order {l} must satisfy 2 <= l <= {d}"
        )));
    }
    let branch_set: VertexSet = w.branch().iter().copied().collect();
    let cap = cap.unwrap_or(usize::MAX);
    let mut family = Vec::new();
    'sizes: for size in l..=d {
        for index_set in iso::subsets_of_size(d, size) {
            if family.len() >= cap {
                break 'sizes;
            }
            let restricted = restrict_witness(w, &index_set)?;
            let extracted = extract_subclique_subdivision(&restricted, l)?;
            extracted.ensure_valid(g)?;
            let on_branch = extracted.vertex_set().intersect(&branch_set);
            let expected: VertexSet = index_set.iter().map(|i| w.branch()[i]).collect();
            assert_eq!(
                on_branch, expected,
                "family member must meet the branch set in exactly its index set"
            );
            family.push(extracted);
        }
    }
    Ok(family)
}

/// Sub-witness on the branch vertices selected by `index_set`.
fn restrict_witness(w: &SubdivisionWitness, index_set: &VertexSet) -> Result<SubdivisionWitness> {
    let indices: Vec<usize> = index_set.iter().collect();
    let size = indices.len();
    let branch: Vec<usize> = indices.iter().map(|&i| w.branch()[i]).collect();
    let mut paths = BTreeMap::new();
    for a in 0..size {
        for b in a + 1..size {
            let (i, j) = (indices[a], indices[b]);
            let route = w.path(i, j).ok_or_else(|| {
                Error::InvalidWitness(vec![crate::witness::WitnessViolation::MissingPath {
                    edge: (i, j),
                }])
            })?;
            paths.insert((a, b), route.to_vec());
        }
    }
    Ok(SubdivisionWitness::new(
        Pattern::complete(size)?,
        branch,
        paths,
    ))
}
