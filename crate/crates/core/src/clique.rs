//! Maximum clique by branch and bound with a greedy-colouring bound, and a
//! DSATUR colouring used as the upper seed for the chromatic number.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph) -> VertexSet {
    max_clique_within(g, &g.vertices())
}

/// A maximum clique of the subgraph induced on `candidates`.
pub fn max_clique_within(g: &Graph, candidates: &VertexSet) -> VertexSet {
    let n = g.vertex_count();
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    expand(g, candidates.clone(), &mut current, &mut best);
    VertexSet::from_elements(n, best)
}

pub fn omega(g: &Graph) -> usize {
    max_clique(g).len()
}

/// Independence number, `omega` of the complement.
pub fn alpha(g: &Graph) -> usize {
    omega(&g.complement())
}

/// Greedy sequential colouring of `candidates`; returns vertices in colour
/// class order with the colour index (1-based) of each.
fn colour_sort(g: &Graph, candidates: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(candidates.len());
    let mut bounds = Vec::with_capacity(candidates.len());
    let mut uncoloured = candidates.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            let mut nb = g.neighbors(v);
            nb.intersect_with(&q);
            q.difference_with(&nb);
            uncoloured.remove(v);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(g: &Graph, mut candidates: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (order, bounds) = colour_sort(g, &candidates);
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let mut next = candidates.clone();
        next.intersect_with_words(g.row(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, next, current, best);
        }
        current.pop();
        candidates.remove(v);
    }
}

/// DSATUR colouring. Returns one colour per vertex, colours `0..k`.
pub fn dsatur_colouring(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v].is_none())
            .max_by_key(|&v| (saturation[v], degree[v], std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (0..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .unwrap();
        colour[v] = Some(c);
        for u in g.neighbors(v).iter() {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            if !seen[u][c] {
                seen[u][c] = true;
                saturation[u] += 1;
            }
        }
    }
    colour.into_iter().map(|c| c.unwrap()).collect()
}

pub fn is_clique(g: &Graph, set: &VertexSet) -> bool {
    let vs = set.to_vec();
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_proper_colouring(g: &Graph, colours: &[usize]) -> bool {
    colours.len() == g.vertex_count() && g.edges().all(|(u, v)| colours[u] != colours[v])
}
