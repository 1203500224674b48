//! Local-density certification: count the copies of a pattern on each anchor
//! (edge or vertex) of the host and report the minimum.
//!
//! A copy of `F` in `G` is a subgraph of `G` isomorphic to `F`, not
//! necessarily induced. Copies are counted by enumerating anchored
//! embeddings and dividing by the automorphism count; the reference
//! semantics (deduplicated vertex-set/edge-set pairs) is what the test
//! oracles implement.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso;
use crate::pattern::Pattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorKind {
    Edge,
    Vertex,
}

/// An anchor of the host graph. Edge anchors are normalized to `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Anchor {
    Vertex(usize),
    Edge(usize, usize),
}

impl Anchor {
    pub fn edge(u: usize, v: usize) -> Self {
        Anchor::Edge(u.min(v), u.max(v))
    }

    pub fn to_json(self) -> serde_json::Value {
        match self {
            Anchor::Vertex(v) => serde_json::json!(v),
            Anchor::Edge(u, v) => serde_json::json!([u, v]),
        }
    }
}

impl std::fmt::Display for Anchor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Anchor::Vertex(v) => write!(f, "vertex {v}"),
            Anchor::Edge(u, v) => write!(f, "edge ({u}, {v})"),
        }
    }
}

/// Per-anchor copy counts and the certified minimum.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub anchor_kind: AnchorKind,
    /// Present for the subgraph-class variant.
    pub k: Option<usize>,
    pub per_anchor: BTreeMap<Anchor, u64>,
    /// For the class variant: minimum over anchors, per subgraph class.
    pub per_class: Option<Vec<(String, u64)>>,
    pub min_count: u64,
    pub argmin: Anchor,
}

impl DensityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert(
            "anchor_kind".into(),
            serde_json::to_value(self.anchor_kind).expect("kind serializes"),
        );
        if let Some(k) = self.k {
            obj.insert("k".into(), serde_json::json!(k));
        }
        obj.insert("min_count".into(), serde_json::json!(self.min_count));
        obj.insert("argmin".into(), self.argmin.to_json());
        obj.insert(
            "per_anchor".into(),
            serde_json::Value::Array(
                self.per_anchor
                    .iter()
                    .map(|(a, c)| serde_json::json!([a.to_json(), c]))
                    .collect(),
            ),
        );
        if let Some(classes) = &self.per_class {
            obj.insert(
                "per_class".into(),
                serde_json::Value::Array(
                    classes
                        .iter()
                        .map(|(name, c)| serde_json::json!([name, c]))
                        .collect(),
                ),
            );
        }
        serde_json::Value::Object(obj)
    }
}

/// Number of copies of `f` in `g` whose edge set contains the anchor edge
/// (edge mode) or whose vertex set contains the anchor vertex (vertex mode).
pub fn count_copies_anchored(g: &Graph, f: &Pattern, anchor: Anchor) -> Result<u64> {
    match anchor {
        Anchor::Edge(u, v) => {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::AnchorNotInGraph(anchor.to_string()));
            }
            if f.edge_count() == 0 {
                return Err(Error::EdgelessPattern);
            }
        }
        Anchor::Vertex(v) => {
            if v >= g.n() {
                return Err(Error::AnchorNotInGraph(anchor.to_string()));
            }
        }
    }

    let fg = f.graph();
    let mut embeddings: u128 = 0;
    match anchor {
        Anchor::Edge(a, b) => {
            // each anchored embedding maps exactly one pattern edge onto the
            // anchor, in exactly one orientation
            for (i, j) in fg.edges() {
                for (ga, gb) in [(a, b), (b, a)] {
                    embeddings += count_embeddings(g, fg, &[(i, ga), (j, gb)]);
                }
            }
        }
        Anchor::Vertex(v) => {
            for i in 0..fg.n() {
                embeddings += count_embeddings(g, fg, &[(i, v)]);
            }
        }
    }

    let aut = u128::from(f.automorphism_count());
    debug_assert_eq!(
        embeddings % aut,
        0,
        "automorphism group acts freely on embeddings"
    );
    u64::try_from(embeddings / aut)
        .map_err(|_| Error::InvalidParameter("copy count exceeds u64".into()))
}

/// Induced variant: copies whose induced host subgraph equals the pattern
/// exactly (non-adjacent pattern pairs must stay non-adjacent). Reported
/// alongside the non-induced count where the two conventions could diverge.
pub fn count_induced_copies_anchored(g: &Graph, f: &Pattern, anchor: Anchor) -> Result<u64> {
    match anchor {
        Anchor::Edge(u, v) => {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::AnchorNotInGraph(anchor.to_string()));
            }
            if f.edge_count() == 0 {
                return Err(Error::EdgelessPattern);
            }
        }
        Anchor::Vertex(v) => {
            if v >= g.n() {
                return Err(Error::AnchorNotInGraph(anchor.to_string()));
            }
        }
    }
    let fg = f.graph();
    let mut embeddings: u128 = 0;
    match anchor {
        Anchor::Edge(a, b) => {
            for (i, j) in fg.edges() {
                for (ga, gb) in [(a, b), (b, a)] {
                    embeddings += count_embeddings_mode(g, fg, &[(i, ga), (j, gb)], true);
                }
            }
        }
        Anchor::Vertex(v) => {
            for i in 0..fg.n() {
                embeddings += count_embeddings_mode(g, fg, &[(i, v)], true);
            }
        }
    }
    let aut = u128::from(f.automorphism_count());
    debug_assert_eq!(embeddings % aut, 0);
    u64::try_from(embeddings / aut)
        .map_err(|_| Error::InvalidParameter("copy count exceeds u64".into()))
}

/// Counts embeddings of `f` into `g` (injective, edge-preserving, not
/// necessarily induced) extending the given partial assignment.
fn count_embeddings(g: &Graph, f: &Graph, pre: &[(usize, usize)]) -> u128 {
    count_embeddings_mode(g, f, pre, false)
}

fn count_embeddings_mode(g: &Graph, f: &Graph, pre: &[(usize, usize)], induced: bool) -> u128 {
    let lf = f.n();
    let mut image = vec![usize::MAX; lf];
    let mut used = Bitset::new(g.n());
    for &(fv, gv) in pre {
        if image[fv] != usize::MAX || used.contains(gv) {
            return 0;
        }
        if g.degree(gv) < f.degree(fv) {
            return 0;
        }
        image[fv] = gv;
        used.insert(gv);
    }
    for &(fu, gu) in pre {
        for &(fv, gv) in pre {
            if fu < fv {
                let fe = f.has_edge(fu, fv);
                let ge = g.has_edge(gu, gv);
                if (fe && !ge) || (induced && fe != ge) {
                    return 0;
                }
            }
        }
    }

    // unassigned pattern vertices, most-constrained first
    let mut order: Vec<usize> = (0..lf).filter(|&v| image[v] == usize::MAX).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));
    let mut ordered = Vec::with_capacity(order.len());
    let mut placed: Vec<usize> = pre.iter().map(|&(fv, _)| fv).collect();
    while !order.is_empty() {
        let (pos, _) = order
            .iter()
            .enumerate()
            .max_by_key(|(_, &v)| {
                let anchored = placed.iter().filter(|&&u| f.has_edge(u, v)).count();
                (anchored, f.degree(v), std::cmp::Reverse(v))
            })
            .expect("order is non-empty");
        let v = order.remove(pos);
        placed.push(v);
        ordered.push(v);
    }

    let mut count = 0u128;
    extend_embedding(
        g, f, &ordered, 0, &mut image, &mut used, induced, &mut count,
    );
    count
}

#[allow(clippy::too_many_arguments)]
fn extend_embedding(
    g: &Graph,
    f: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut Bitset,
    induced: bool,
    count: &mut u128,
) {
    if depth == order.len() {
        *count += 1;
        return;
    }
    let fv = order[depth];
    'candidates: for gv in 0..g.n() {
        if used.contains(gv) || g.degree(gv) < f.degree(fv) {
            continue;
        }
        if induced {
            for (fu, &gu) in image.iter().enumerate() {
                if gu != usize::MAX && f.has_edge(fu, fv) != g.has_edge(gu, gv) {
                    continue 'candidates;
                }
            }
        } else {
            for fu in f.neighbors(fv).iter() {
                let gu = image[fu];
                if gu != usize::MAX && !g.has_edge(gu, gv) {
                    continue 'candidates;
                }
            }
        }
        image[fv] = gv;
        used.insert(gv);
        extend_embedding(g, f, order, depth + 1, image, used, induced, count);
        image[fv] = usize::MAX;
        used.remove(gv);
    }
}

fn anchors_of(g: &Graph, kind: AnchorKind) -> Result<Vec<Anchor>> {
    let anchors: Vec<Anchor> = match kind {
        AnchorKind::Edge => g
            .edges()
            .into_iter()
            .map(|(u, v)| Anchor::Edge(u, v))
            .collect(),
        // isolated vertices are excluded from vertex anchors
        AnchorKind::Vertex => (0..g.n())
            .filter(|&v| g.degree(v) > 0)
            .map(Anchor::Vertex)
            .collect(),
    };
    if anchors.is_empty() {
        return Err(Error::EmptyAnchorSet(match kind {
            AnchorKind::Edge => "edge",
            AnchorKind::Vertex => "non-isolated vertex",
        }));
    }
    Ok(anchors)
}

fn assemble(
    kind: AnchorKind,
    k: Option<usize>,
    per_anchor: BTreeMap<Anchor, u64>,
    per_class: Option<Vec<(String, u64)>>,
) -> DensityReport {
    let (&argmin, &min_count) = per_anchor
        .iter()
        .min_by_key(|&(a, c)| (*c, *a))
        .expect("anchor set is non-empty");
    DensityReport {
        anchor_kind: kind,
        k,
        per_anchor,
        per_class,
        min_count,
        argmin,
    }
}

/// Copy counts of `f` over every anchor of `g`; the host is
/// `(F, t)`-locally dense iff `min_count >= t`.
pub fn local_density(g: &Graph, f: &Pattern, kind: AnchorKind) -> Result<DensityReport> {
    let anchors = anchors_of(g, kind)?;
    let per_anchor = anchors
        .into_par_iter()
        .map(|a| count_copies_anchored(g, f, a).map(|c| (a, c)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(assemble(kind, None, per_anchor, None))
}

/// The subgraph-class variant: every anchor must lie in at least `t` copies
/// of every subgraph class of `f` with at least `k` vertices and one edge.
pub fn k_local_density(
    g: &Graph,
    f: &Pattern,
    k: usize,
    kind: AnchorKind,
) -> Result<DensityReport> {
    if !(3..=f.order()).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "k must satisfy 3 <= k <= {}, got {k}",
            f.order()
        )));
    }
    let classes = iso::subgraph_classes(f, k, true)?;
    let anchors = anchors_of(g, kind)?;

    // counts[class][anchor]
    let counts: Vec<Vec<(Anchor, u64)>> = classes
        .par_iter()
        .map(|class| {
            anchors
                .iter()
                .map(|&a| count_copies_anchored(g, class, a).map(|c| (a, c)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let per_class: Vec<(String, u64)> = classes
        .iter()
        .zip(&counts)
        .map(|(class, row)| {
            let name = class.label().unwrap_or("?").to_string();
            let min = row
                .iter()
                .map(|&(_, c)| c)
                .min()
                .expect("anchors non-empty");
            (name, min)
        })
        .collect();

    let mut per_anchor: BTreeMap<Anchor, u64> = BTreeMap::new();
    for (idx, &a) in anchors.iter().enumerate() {
        let min = counts
            .iter()
            .map(|row| row[idx].1)
            .min()
            .expect("classes non-empty");
        per_anchor.insert(a, min);
    }

    Ok(assemble(kind, Some(k), per_anchor, Some(per_class)))
}

/// Density decision: dense iff the relevant minimum is at least `t`.
/// The witnessing report is attached either way.
pub fn is_locally_dense(
    g: &Graph,
    f: &Pattern,
    t: u64,
    k: Option<usize>,
    kind: AnchorKind,
) -> Result<(bool, DensityReport)> {
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let report = match k {
        Some(k) => k_local_density(g, f, k, kind)?,
        None => local_density(g, f, kind)?,
    };
    Ok((report.min_count >= t, report))
}
