//! Generators for the extremal and auxiliary hosts, plus the book-structure
//! search and the explicit witness family it supports.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::binomial_u64;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::iso;
use crate::pattern::Pattern;
use crate::witness::SubdivisionWitness;

/// Host with a small dominating clique `A` joined completely to a large
/// independent set `B`.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub graph: Graph,
    pub a: VertexSet,
    pub b: VertexSet,
}

/// The split host on `l - 2 + t + 1` vertices: `A = {0, ..., l-3}` induces a
/// clique, `B` is independent, and every A-B pair is an edge.
pub fn split_construction(l: usize, t: usize) -> Result<SplitGraph> {
    if l < 4 {
        return Err(Error::InvalidParameter(
            "split construction needs l >= 4".into(),
        ));
    }
    if t < 1 {
        return Err(Error::InvalidParameter(
            "split construction needs t >= 1".into(),
        ));
    }
    let a_size = l - 2;
    let b_size = t + 1;
    let n = a_size + b_size;
    let mut g = Graph::empty(n);
    for u in 0..a_size {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(SplitGraph {
        graph: g,
        a: (0..a_size).collect(),
        b: (a_size..n).collect(),
    })
}

pub fn complete_graph(r: usize) -> Graph {
    Graph::complete(r)
}

pub fn complete_bipartite(r: usize, s: usize) -> Graph {
    Graph::complete_bipartite(r, s)
}

/// Smallest `r` with `binom(r-2, l-2) >= t`; rounds up because exact
/// equality is rarely attainable.
pub fn tuza_r_for(l: usize, t: u64) -> Result<usize> {
    if l < 3 {
        return Err(Error::InvalidParameter("tuza_r_for needs l >= 3".into()));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("tuza_r_for needs t >= 1".into()));
    }
    let mut r = l;
    while binomial_u64((r - 2) as u64, (l - 2) as u64) < t {
        r += 1;
    }
    Ok(r)
}

/// The bipartite-obstruction side size `floor(d^2 / 8)`.
pub fn jung_r_for(d: usize) -> usize {
    d * d / 8
}

/// A clique `A` of order `l - 1` with a designated vertex `z` such that
/// `A \ {z}` is completely joined to `B`.
#[derive(Debug, Clone)]
pub struct BookStructure {
    pub host: Graph,
    /// Ordered: the designated vertex `z` is the last element.
    pub a: Vec<usize>,
    pub b: VertexSet,
}

impl BookStructure {
    pub fn z(&self) -> usize {
        *self.a.last().expect("A is non-empty")
    }

    /// Checks the defining invariants against the stored host.
    pub fn verify(&self) -> Result<()> {
        let z = self.z();
        for (i, &u) in self.a.iter().enumerate() {
            for &v in self.a.iter().skip(i + 1) {
                if !self.host.has_edge(u, v) {
                    return Err(Error::InvalidParameter(format!(
                        "book A is not a clique: ({u}, {v}) missing"
                    )));
                }
            }
        }
        for &u in self.a.iter().filter(|&&u| u != z) {
            for v in self.b.iter() {
                if !self.host.has_edge(u, v) {
                    return Err(Error::InvalidParameter(format!(
                        "book A-B joint missing edge ({u}, {v})"
                    )));
                }
            }
        }
        if self.b.iter().any(|v| self.a.contains(&v)) {
            return Err(Error::InvalidParameter(
                "book sides A and B intersect".into(),
            ));
        }
        Ok(())
    }
}

/// Searches every clique `J` of order `l - 1` through the edge and every
/// designated vertex `z` in it, returning the pair whose side set
/// `B(J, z) = { x outside J adjacent to all of J \ {z} }` is largest.
/// Ties break to the lexicographically smallest `J`, then smallest `z`.
pub fn find_book_structure(g: &Graph, e: (usize, usize), l: usize) -> Result<BookStructure> {
    let (x, y) = (e.0.min(e.1), e.0.max(e.1));
    if x >= g.n() || y >= g.n() || !g.has_edge(x, y) {
        return Err(Error::AnchorNotInGraph(format!("edge ({x}, {y})")));
    }
    if l < 3 {
        return Err(Error::InvalidParameter(
            "find_book_structure needs l >= 3".into(),
        ));
    }
    let clique_order = l - 1;

    // cliques of order l-1 on the edge: (l-3)-subsets of the common
    // neighborhood that are themselves cliques
    let common: Vec<usize> = g
        .neighbors(x)
        .iter()
        .filter(|&v| g.has_edge(v, y) && v != x && v != y)
        .collect();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for subset in iso::subsets_of_size(common.len(), clique_order - 2) {
        let chosen: Vec<usize> = subset.iter().map(|i| common[i]).collect();
        let pairwise = chosen
            .iter()
            .enumerate()
            .all(|(i, &u)| chosen.iter().skip(i + 1).all(|&v| g.has_edge(u, v)));
        if pairwise {
            let mut clique = vec![x, y];
            clique.extend(chosen);
            clique.sort_unstable();
            cliques.push(clique);
        }
    }
    cliques.sort();
    if cliques.is_empty() {
        return Err(Error::NoCliqueOnEdge(x, y));
    }

    let mut best: Option<(Vec<usize>, usize, VertexSet)> = None;
    for clique in &cliques {
        for &z in clique {
            let side: VertexSet = (0..g.n())
                .filter(|&w| !clique.contains(&w))
                .filter(|&w| clique.iter().all(|&a| a == z || g.has_edge(a, w)))
                .collect();
            let better = match &best {
                None => true,
                Some((_, _, incumbent)) => side.len() > incumbent.len(),
            };
            if better {
                best = Some((clique.clone(), z, side));
            }
        }
    }
    let (clique, z, side) = best.expect("at least one clique was found");
    let mut a: Vec<usize> = clique.iter().copied().filter(|&v| v != z).collect();
    a.push(z);
    let book = BookStructure {
        host: g.clone(),
        a,
        b: side,
    };
    book.verify()?;
    Ok(book)
}

/// The explicit family of near-complete subdivisions supported by a book
/// structure: branch vertices `A` plus one B-vertex, and one B-vertex
/// subdividing each edge inside `A \ {z}`. Distinct choices give distinct
/// vertex sets, so the family has size `binom(|B|, binom(l-2, 2) + 1)`.
pub fn theorem_iii_family(
    book: &BookStructure,
    l: usize,
    cap: Option<usize>,
) -> Result<Vec<SubdivisionWitness>> {
    if l < 4 {
        return Err(Error::InvalidParameter(
            "theorem_iii_family needs l >= 4".into(),
        ));
    }
    if book.a.len() != l - 1 {
        return Err(Error::InvalidParameter(format!(
            "book side A has {} vertices, need l - 1 = {}",
            book.a.len(),
            l - 1
        )));
    }
    book.verify()?;
    let picks = binomial_u64((l - 2) as u64, 2) as usize + 1;
    if book.b.len() < picks {
        return Err(Error::SideSetTooSmall {
            needed: picks,
            got: book.b.len(),
        });
    }
    let pattern = Pattern::complete_minus_edge(l)?;
    let b: Vec<usize> = book.b.iter().collect();
    let cap = cap.unwrap_or(usize::MAX);

    let mut family = Vec::new();
    for choice in iso::subsets_of_size(b.len(), picks) {
        if family.len() >= cap {
            break;
        }
        let chosen: Vec<usize> = choice.iter().map(|i| b[i]).collect();
        // roles in fixed order: the extra branch vertex, then one subdividing
        // vertex per edge inside A \ {z}, edges in lexicographic order
        let x_l = chosen[0];
        let mut branch = book.a.clone();
        branch.push(x_l);

        let mut paths = BTreeMap::new();
        let mut next = 1;
        #[allow(clippy::needless_range_loop)]
        for i in 0..l - 2 {
            for j in i + 1..l - 2 {
                paths.insert((i, j), vec![branch[i], chosen[next], branch[j]]);
                next += 1;
            }
            paths.insert((i, l - 2), vec![branch[i], book.z()]);
            paths.insert((i, l - 1), vec![branch[i], x_l]);
        }
        let witness = SubdivisionWitness::new(pattern.clone(), branch, paths);
        witness.ensure_valid(&book.host)?;
        family.push(witness);
    }
    Ok(family)
}

/// Seeded Erdos-Renyi host. Identical `(n, p, seed)` give identical graphs
/// on every platform: pairs are visited in lexicographic order and the
/// generator is ChaCha8.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Reproducible generator input; round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    Split { l: usize, t: usize },
    Complete { r: usize },
    CompleteBipartite { r: usize, s: usize },
    Random { n: usize, p: f64, seed: u64 },
}

impl ConstructionSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            ConstructionSpec::Split { l, t } => Ok(split_construction(l, t)?.graph),
            ConstructionSpec::Complete { r } => Ok(complete_graph(r)),
            ConstructionSpec::CompleteBipartite { r, s } => Ok(complete_bipartite(r, s)),
            ConstructionSpec::Random { n, p, seed } => random_graph(n, p, seed),
        }
    }

    /// Comment line recording the generator input, written ahead of the
    /// serialized graph.
    pub fn header(&self) -> String {
        match self {
            ConstructionSpec::Split { l, t } => format!("# split l={l} t={t}"),
            ConstructionSpec::Complete { r } => format!("# complete r={r}"),
            ConstructionSpec::CompleteBipartite { r, s } => {
                format!("# complete-bipartite r={r} s={s}")
            }
            ConstructionSpec::Random { n, p, seed } => format!("# random n={n} p={p} seed={seed}"),
        }
    }
}
