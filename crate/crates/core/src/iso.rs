//! Small-graph isomorphism utilities: backtracking tests, automorphism
//! counting, canonical forms and subgraph-class enumeration.
//!
//! Everything here is exponential and guarded by [`ISO_CAP`]; the rest of the
//! crate only calls in with patterns of order at most [`crate::PATTERN_CAP`].

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::pattern::Pattern;

/// Order cap for the operations in this module.
pub const ISO_CAP: usize = 12;

/// Edge-subset enumeration cap for [`subgraph_classes`]: a subset with more
/// edges than this would mean over a million candidate subgraphs.
const SUBGRAPH_EDGE_CAP: usize = 20;

fn check_cap(what: &'static str, n: usize) -> Result<()> {
    if n > ISO_CAP {
        Err(Error::CapExceeded {
            what,
            limit: ISO_CAP,
            actual: n,
        })
    } else {
        Ok(())
    }
}

/// Search order for backtracking: descending degree, then greedily pulling
/// vertices with the most already-ordered neighbors forward.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut remaining: Vec<usize> = (0..n).collect();
    remaining.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut order = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(_, &v)| {
                let anchored = order.iter().filter(|&&u| g.has_edge(u, v)).count();
                (anchored, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("remaining is non-empty");
        order.push(remaining.remove(pos));
    }
    order
}

/// Visits every edge-preserving bijection g1 -> g2; the visitor returns
/// false to stop the search. Returns false if the search was stopped.
fn extend_map(
    g1: &Graph,
    g2: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if depth == order.len() {
        return visit(map);
    }
    let v = order[depth];
    'candidates: for w in 0..g2.n() {
        if used[w] || g2.degree(w) != g1.degree(v) {
            continue;
        }
        for &u in &order[..depth] {
            if g1.has_edge(u, v) != g2.has_edge(map[u], w) {
                continue 'candidates;
            }
        }
        map[v] = w;
        used[w] = true;
        let keep_going = extend_map(g1, g2, order, depth + 1, map, used, visit);
        used[w] = false;
        if !keep_going {
            return false;
        }
    }
    true
}

fn for_each_bijection(g1: &Graph, g2: &Graph, visit: &mut impl FnMut(&[usize]) -> bool) {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return;
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return;
    }
    let order = search_order(g1);
    let mut map = vec![usize::MAX; g1.n()];
    let mut used = vec![false; g2.n()];
    extend_map(g1, g2, &order, 0, &mut map, &mut used, visit);
}

/// True iff an edge-preserving bijection between the two graphs exists.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    check_cap("isomorphism test order", g1.n().max(g2.n()))?;
    let mut found = false;
    for_each_bijection(g1, g2, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Number of edge-preserving self-bijections, by exhaustive backtracking.
pub fn automorphism_count(g: &Graph) -> u64 {
    let mut count = 0u64;
    for_each_bijection(g, g, &mut |_| {
        count += 1;
        true
    });
    count.max(1)
}

/// Every automorphism of `g` as a map `vertex -> image`.
pub fn automorphism_list(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_bijection(g, g, &mut |map| {
        out.push(map.to_vec());
        true
    });
    if out.is_empty() {
        out.push((0..g.n()).collect());
    }
    out
}

/// Permutation `position -> original vertex` maximizing the packed upper
/// triangle of the relabeled adjacency matrix (prefix-pruned backtracking).
///
/// `tied` tracks whether the bits written so far equal the incumbent's
/// prefix; only then may a smaller column be pruned. A strictly greater
/// prefix must keep exploring regardless of later columns.
fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best_bits: Option<Vec<bool>> = None;
    let mut best_perm: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        tied: bool,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        bits: &mut Vec<bool>,
        best_bits: &mut Option<Vec<bool>>,
        best_perm: &mut Vec<usize>,
    ) {
        let n = g.n();
        if perm.len() == n {
            if best_bits.as_ref().is_none_or(|b| bits[..] > b[..]) {
                *best_bits = Some(bits.clone());
                *best_perm = perm.clone();
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let start = bits.len();
            for &u in perm.iter() {
                bits.push(g.has_edge(u, v));
            }
            let next_tied = if !tied {
                false
            } else {
                match best_bits {
                    None => true,
                    Some(b) => match bits[start..].cmp(&b[start..bits.len()]) {
                        std::cmp::Ordering::Less => {
                            bits.truncate(start);
                            continue;
                        }
                        std::cmp::Ordering::Equal => true,
                        std::cmp::Ordering::Greater => false,
                    },
                }
            };
            perm.push(v);
            used[v] = true;
            rec(g, next_tied, perm, used, bits, best_bits, best_perm);
            used[v] = false;
            perm.pop();
            bits.truncate(start);
        }
    }

    rec(
        g,
        true,
        &mut perm,
        &mut used,
        &mut bits,
        &mut best_bits,
        &mut best_perm,
    );
    best_perm
}

/// Relabels the graph into its canonical form.
pub fn canonical_graph(g: &Graph) -> Graph {
    let perm = canonical_order(g);
    let mut out = Graph::empty(g.n());
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if g.has_edge(perm[i], perm[j]) {
                out.add_edge(i, j);
            }
        }
    }
    out
}

/// graph6 string of the canonical form; equal strings iff isomorphic.
pub fn canonical_g6(g: &Graph) -> String {
    graph6::encode(&canonical_graph(g)).expect("canonical form is within graph6 range")
}

/// Short name for a graph class: a built-in family name when the graph is
/// one, otherwise the canonical graph6 string.
pub fn class_name(g: &Graph) -> String {
    let n = g.n();
    let m = g.edge_count();
    let degrees = || (0..n).map(|v| g.degree(v));
    if n >= 1 && m == n * (n - 1) / 2 && n >= 3 {
        return format!("K{n}");
    }
    if n >= 4 && m == n * (n - 1) / 2 - 1 {
        return format!("K{n}-");
    }
    if n >= 3 && m == n && degrees().all(|d| d == 2) && is_connected(g) {
        return format!("C{n}");
    }
    if n >= 2 && m == n - 1 && degrees().all(|d| d <= 2) && is_connected(g) {
        return format!("P{n}");
    }
    if n >= 4 && m == n - 1 && degrees().any(|d| d == n - 1) {
        return format!("S{n}");
    }
    canonical_g6(g)
}

fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v).iter() {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// One representative per isomorphism class of subgraphs of `f` on at least
/// `min_vertices` vertices, ordered by vertex count, then descending edge
/// count, then canonical form.
pub fn subgraph_classes(
    f: &Pattern,
    min_vertices: usize,
    require_edge: bool,
) -> Result<Vec<Pattern>> {
    let l = f.order();
    if min_vertices > l {
        return Err(Error::InvalidParameter(format!(
            "min_vertices {min_vertices} exceeds pattern order {l}"
        )));
    }
    let mut seen: HashSet<String> = HashSet::new();
    let mut classes: Vec<(usize, usize, String, Graph)> = Vec::new();

    for size in min_vertices.max(1)..=l {
        for subset in subsets_of_size(l, size) {
            let induced = f.graph().induced_subgraph(&subset)?;
            let edges = induced.edges();
            if edges.len() > SUBGRAPH_EDGE_CAP {
                return Err(Error::CapExceeded {
                    what: "subgraph edge enumeration",
                    limit: SUBGRAPH_EDGE_CAP,
                    actual: edges.len(),
                });
            }
            for mask in 0u32..(1 << edges.len()) {
                if require_edge && mask == 0 {
                    continue;
                }
                let mut h = Graph::empty(size);
                for (b, &(u, v)) in edges.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        h.add_edge(u, v);
                    }
                }
                let key = canonical_g6(&h);
                if seen.insert(key.clone()) {
                    classes.push((size, h.edge_count(), key, h));
                }
            }
        }
    }

    classes.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(a.2.cmp(&b.2)));
    classes
        .into_iter()
        .map(|(_, _, _, g)| {
            let name = class_name(&g);
            Pattern::new(g, Some(name))
        })
        .collect()
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if current.len() == size {
            out.push(VertexSet::new(current.clone()));
            return;
        }
        let needed = size - current.len();
        for v in start..=n.saturating_sub(needed) {
            current.push(v);
            rec(n, size, v + 1, current, out);
            current.pop();
        }
    }
    if size <= n {
        rec(n, size, 0, &mut current, &mut out);
    }
    out
}
