//! Semiring operations on graphs, blowup and fractionalization, and the
//! perp / closure / rank machinery on vertex subsets.
//!
//! Vertex labelling conventions:
//! - `join(G, H)`: the vertices of `G` first, then those of `H` shifted by `|G|`.
//! - products `G * H`, `G ⋉ H`: the pair `(v, w)` gets index `v * |H| + w`.
//! - `blowup(G, d)`: copy `i` of vertex `v` gets index `v * d + i`.
//! - `fractionalize(G, d)`: `d`-cliques in lexicographic order of their
//!   sorted vertex lists.
//! - `power_graph(G)`: the subset with bitmask `m` gets index `m`.

use std::collections::BTreeSet;

use crate::clique;
use crate::error::{Error, Result};
use crate::graph::{check_vertex_count, checked_product, vertex_limit, Graph, GraphBuilder};
use crate::vertex_set::VertexSet;

/// Vertex cap for the power graph ground set; `2^12` subsets.
pub const POWER_GRAPH_MAX_VERTICES: usize = 12;

/// Graph join `G + H`: disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let n = ng.checked_add(nh).ok_or(Error::SizeCap {
        requested: usize::MAX,
        limit: vertex_limit(),
    })?;
    let mut b = GraphBuilder::new(n)?;
    for (u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        b.add_edge(ng + u, ng + v);
    }
    for u in 0..ng {
        for v in 0..nh {
            b.add_edge(u, ng + v);
        }
    }
    Ok(b.build())
}

/// Disjunctive product: `(v,w) ~ (v',w')` iff `v ~ v'` or `w ~ w'`.
pub fn disjunctive(g: &Graph, h: &Graph) -> Result<Graph> {
    let nh = h.vertex_count();
    let n = checked_product(g.vertex_count(), nh)?;
    Graph::from_fn(n, |a, b| {
        let (v, w) = (a / nh, a % nh);
        let (v2, w2) = (b / nh, b % nh);
        g.has_edge(v, v2) || h.has_edge(w, w2)
    })
}

/// Lexicographic product: `(v,w) ~ (v',w')` iff `v ~ v'`, or `v = v'` and `w ~ w'`.
pub fn lexicographic(g: &Graph, h: &Graph) -> Result<Graph> {
    let nh = h.vertex_count();
    let n = checked_product(g.vertex_count(), nh)?;
    Graph::from_fn(n, |a, b| {
        let (v, w) = (a / nh, a % nh);
        let (v2, w2) = (b / nh, b % nh);
        g.has_edge(v, v2) || (v == v2 && h.has_edge(w, w2))
    })
}

/// The `k`-fold disjunctive power; `pow(G, 0)` is `K_1`.
pub fn disjunctive_power(g: &Graph, k: usize) -> Result<Graph> {
    let mut acc = Graph::complete(1)?;
    for _ in 0..k {
        acc = disjunctive(&acc, g)?;
    }
    Ok(acc)
}

/// The `d`-fold blowup `G ⋉ K_d`.
pub fn blowup(g: &Graph, d: usize) -> Result<Graph> {
    if d == 0 {
        return Err(Error::InvalidParameter("blowup factor must be at least 1".into()));
    }
    checked_product(g.vertex_count(), d)?;
    lexicographic(g, &Graph::complete(d)?)
}

/// All `d`-cliques of `g`, sorted lexicographically. Fails with `SizeCap` as
/// soon as more than `limit` cliques have been found.
pub fn cliques_of_size(g: &Graph, d: usize, limit: usize) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if d == 0 {
        out.push(VertexSet::empty(n));
        return Ok(out);
    }
    let mut current = Vec::with_capacity(d);
    extend_cliques(g, d, &VertexSet::full(n), &mut current, &mut out, limit)?;
    Ok(out)
}

fn extend_cliques(
    g: &Graph,
    d: usize,
    candidates: &VertexSet,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
    limit: usize,
) -> Result<()> {
    if current.len() == d {
        if out.len() == limit {
            return Err(Error::SizeCap {
                requested: limit + 1,
                limit,
            });
        }
        out.push(VertexSet::from_elements(g.vertex_count(), current.iter().copied()));
        return Ok(());
    }
    let needed = d - current.len();
    if candidates.len() < needed {
        return Ok(());
    }
    for v in candidates.iter() {
        let mut next = candidates.clone();
        next.intersect_with_words(g.row(v));
        // only extend with larger indices so each clique is produced once
        for u in 0..=v {
            next.remove(u);
        }
        current.push(v);
        extend_cliques(g, d, &next, current, out, limit)?;
        current.pop();
    }
    Ok(())
}

/// `G / d`: the `d`-cliques of `G`, adjacent when disjoint and fully
/// cross-adjacent.
pub fn fractionalize(g: &Graph, d: usize) -> Result<Graph> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "fractionalization needs d at least 1".into(),
        ));
    }
    let cliques = cliques_of_size(g, d, vertex_limit())?;
    let perps: Vec<VertexSet> = cliques.iter().map(|c| perp(g, c)).collect();
    Graph::from_fn(cliques.len(), |a, b| cliques[b].is_subset(&perps[a]))
}

/// The power graph `2^G` on all subsets of `V(G)`, indexed by bitmask.
///
/// `S ~ T` iff both are nonempty, `S ∩ T = ∅` and every `s ∈ S` is adjacent
/// to every `t ∈ T`. The empty set is isolated.
pub fn power_graph(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    if n > POWER_GRAPH_MAX_VERTICES {
        return Err(Error::SizeCap {
            requested: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            limit: 1 << POWER_GRAPH_MAX_VERTICES,
        });
    }
    let size = 1usize << n;
    check_vertex_count(size)?;
    let rows: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, u| m | 1 << u))
        .collect();
    let perp_mask: Vec<usize> = (0..size)
        .map(|s| {
            (0..n)
                .filter(|v| s >> v & 1 == 1)
                .fold(size - 1, |m, v| m & rows[v])
        })
        .collect();
    Graph::from_fn(size, |s, t| s != 0 && t != 0 && t & !perp_mask[s] == 0)
}

/// Vertices adjacent to every vertex of `set`; `perp(∅) = V(G)`.
pub fn perp(g: &Graph, set: &VertexSet) -> VertexSet {
    let mut out = VertexSet::full(g.vertex_count());
    for v in set.iter() {
        out.intersect_with_words(g.row(v));
    }
    out
}

/// `perp(perp(S))`.
pub fn closure(g: &Graph, set: &VertexSet) -> VertexSet {
    perp(g, &perp(g, set))
}

/// Clique number of the subgraph induced on `closure(S)`.
pub fn rank(g: &Graph, set: &VertexSet) -> usize {
    clique::max_clique_within(g, &closure(g, set)).len()
}

pub fn is_flat(g: &Graph, set: &VertexSet) -> bool {
    closure(g, set) == *set
}

/// All flats (fixpoints of `closure`), sorted lexicographically.
///
/// Every flat is `perp(X)` for some `X`, hence an intersection of singleton
/// perps; the lattice is generated from `V(G)` by repeated intersection.
pub fn enumerate_flats(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    let singles: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let mut frontier = vec![VertexSet::full(n)];
    seen.insert(VertexSet::full(n));
    if seen.len() > cap {
        return Err(Error::FlatCountExceeded(cap));
    }
    while let Some(flat) = frontier.pop() {
        for s in &singles {
            let next = flat.intersection(s);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                if seen.len() > cap {
                    return Err(Error::FlatCountExceeded(cap));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
