//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use graph_semiring::Graph;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Isomorphism by trying every bijection; meant for at most 8 vertices.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 8, "brute-force isomorphism oracle is limited to 8 vertices");
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (a, b) = (adjacency(g), adjacency(h));
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|u| (0..n).all(|v| a[u][v] == b[p[u]][p[v]])))
}

/// Tries every map `V(G) -> V(H)`.
pub fn brute_force_hom(g: &Graph, h: &Graph) -> bool {
    let (n, m) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut map = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| h.has_edge(map[u], map[v])) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Maximum clique size by subset enumeration.
pub fn brute_force_omega(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    (0..1u32 << n)
        .filter(|&m| (0..n).all(|u| (u + 1..n).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || g.has_edge(u, v))))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Chromatic number by trying every colouring with `k` colours.
pub fn brute_force_chi(g: &Graph) -> usize {
    (0..=g.vertex_count())
        .find(|&k| brute_force_hom(g, &Graph::complete(k).unwrap()))
        .unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if g.has_edge(u, v) && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// One representative per isomorphism class of connected graphs on
/// `1..=max_n` vertices.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            if !is_connected(&g) {
                continue;
            }
            // canonical form: smallest relabelled edge mask
            let canon = perms
                .iter()
                .map(|p| {
                    edges.iter().fold(0u32, |acc, &(u, v)| {
                        let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                        acc | 1 << pairs.iter().position(|&e| e == (a, b)).unwrap()
                    })
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push(g);
            }
        }
    }
    out
}
