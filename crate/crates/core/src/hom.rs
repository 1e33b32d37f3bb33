//! Graph homomorphism search.
//!
//! The engine is an exhaustive backtracking search. Each source vertex keeps a
//! candidate bitset over the target vertices; after every assignment the
//! candidates of the still unassigned neighbours are intersected with the
//! target neighbourhood of the chosen image (forward checking). The next
//! vertex is the one with the fewest candidates, ties broken by higher degree
//! and then by lower index.
//!
//! When the target is a complete graph its vertices are interchangeable, so a
//! fresh colour is only tried if it is the smallest unused one.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::clique;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ops;
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes (attempted assignments).
    pub node_budget: u64,
    /// Fixed branching order; witnesses are reproducible. Overrides `parallel`.
    pub deterministic: bool,
    /// Split the search tree across the rayon thread pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            deterministic: true,
            parallel: false,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget: node_budget.max(1),
            ..Self::default()
        }
    }

    pub fn parallel() -> Self {
        SearchConfig {
            deterministic: false,
            parallel: true,
            ..Self::default()
        }
    }
}

/// A vertex map `V(G) -> V(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomWitness {
    pub map: Vec<usize>,
}

impl HomWitness {
    /// Checks that the map is total, in range and sends edges to edges.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        self.map.len() == g.vertex_count()
            && self.map.iter().all(|&x| x < h.vertex_count())
            && g.edges().all(|(u, v)| h.has_edge(self.map[u], self.map[v]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomResult {
    Yes(HomWitness),
    No,
    BudgetExceeded,
}

impl HomResult {
    pub fn answer(&self) -> Answer {
        match self {
            HomResult::Yes(_) => Answer::Yes,
            HomResult::No => Answer::No,
            HomResult::BudgetExceeded => Answer::BudgetExceeded,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, HomResult::Yes(_))
    }

    pub fn witness(&self) -> Option<&HomWitness> {
        match self {
            HomResult::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Three-valued answer of a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    BudgetExceeded,
}

impl Answer {
    /// Conjunction that keeps a definite `No` over an inconclusive side.
    pub fn and(self, other: Answer) -> Answer {
        match (self, other) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Yes, Answer::Yes) => Answer::Yes,
            _ => Answer::BudgetExceeded,
        }
    }
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
    Cancelled,
}

#[derive(Clone)]
struct State {
    domains: Vec<VertexSet>,
    image: Vec<Option<usize>>,
    unassigned: usize,
    colours_used: usize,
}

struct Search<'a> {
    h: &'a Graph,
    neighbours: Vec<Vec<usize>>,
    degree: Vec<usize>,
    complete_target: bool,
    budget: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl<'a> Search<'a> {
    fn pick(&self, st: &State) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..st.image.len() {
            if st.image[v].is_some() {
                continue;
            }
            let size = st.domains[v].len();
            let key = (size, usize::MAX - self.degree[v], v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn candidates(&self, st: &State, v: usize) -> Vec<usize> {
        let dom = &st.domains[v];
        if self.complete_target {
            dom.iter().take_while(|&c| c <= st.colours_used).collect()
        } else {
            dom.to_vec()
        }
    }

    /// Assigns `v -> c` and prunes neighbour domains. Returns the saved
    /// domains for undo, or `None` (after undoing) if a domain emptied.
    fn assign(&self, st: &mut State, v: usize, c: usize) -> Option<Vec<(usize, VertexSet)>> {
        let mut saved = Vec::new();
        st.image[v] = Some(c);
        st.unassigned -= 1;
        let row = self.h.row(c);
        for &u in &self.neighbours[v] {
            if st.image[u].is_some() {
                continue;
            }
            let before = st.domains[u].clone();
            st.domains[u].intersect_with_words(row);
            if st.domains[u] != before {
                let emptied = st.domains[u].is_empty();
                saved.push((u, before));
                if emptied {
                    self.undo(st, v, saved);
                    return None;
                }
            }
        }
        Some(saved)
    }

    fn undo(&self, st: &mut State, v: usize, saved: Vec<(usize, VertexSet)>) {
        for (u, dom) in saved.into_iter().rev() {
            st.domains[u] = dom;
        }
        st.image[v] = None;
        st.unassigned += 1;
    }

    fn tick(&self) -> Option<Outcome> {
        if self.stop.load(Ordering::Relaxed) {
            return Some(Outcome::Cancelled);
        }
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            return Some(Outcome::OutOfBudget);
        }
        None
    }

    fn run(&self, st: &mut State) -> Outcome {
        let Some(v) = self.pick(st) else {
            return Outcome::Found;
        };
        for c in self.candidates(st, v) {
            if let Some(stop) = self.tick() {
                return stop;
            }
            let prev_used = st.colours_used;
            if self.complete_target && c == st.colours_used {
                st.colours_used += 1;
            }
            if let Some(saved) = self.assign(st, v, c) {
                match self.run(st) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
                self.undo(st, v, saved);
            }
            st.colours_used = prev_used;
        }
        Outcome::Exhausted
    }

    /// Expands `st` by one branching step into its feasible children.
    fn children(&self, st: &State) -> std::result::Result<Vec<State>, Outcome> {
        let Some(v) = self.pick(st) else {
            return Err(Outcome::Found);
        };
        let mut out = Vec::new();
        for c in self.candidates(st, v) {
            if let Some(stop) = self.tick() {
                return Err(stop);
            }
            let mut child = st.clone();
            if self.complete_target && c == child.colours_used {
                child.colours_used += 1;
            }
            if self.assign(&mut child, v, c).is_some() {
                if child.unassigned == 0 {
                    return Ok(vec![child]);
                }
                out.push(child);
            }
        }
        Ok(out)
    }
}

fn witness_of(st: &State) -> HomWitness {
    HomWitness {
        map: st.image.iter().map(|c| c.expect("complete assignment")).collect(),
    }
}

/// Decides whether a homomorphism `g -> h` exists.
///
/// `No` is only returned after the whole search space was explored; running
/// out of `cfg.node_budget` yields `BudgetExceeded`. Every `Yes` witness has
/// been checked with [`HomWitness::verify`].
pub fn exists_hom(g: &Graph, h: &Graph, cfg: &SearchConfig) -> HomResult {
    let n = g.vertex_count();
    if n == 0 {
        return HomResult::Yes(HomWitness { map: Vec::new() });
    }
    if h.is_empty() {
        return HomResult::No;
    }
    let hn = h.vertex_count();
    let non_isolated = {
        let mut s = VertexSet::empty(hn);
        for v in 0..hn {
            if h.degree(v) > 0 {
                s.insert(v);
            }
        }
        s
    };
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let domains = (0..n)
        .map(|v| {
            if degree[v] > 0 {
                non_isolated.clone()
            } else {
                VertexSet::full(hn)
            }
        })
        .collect::<Vec<_>>();
    if domains.iter().any(|d| d.is_empty()) {
        return HomResult::No;
    }
    let complete_target = h.edge_count() == hn * (hn - 1) / 2;
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let search = Search {
        h,
        neighbours: (0..n).map(|v| g.neighbors(v).to_vec()).collect(),
        degree,
        complete_target,
        budget: cfg.node_budget.max(1),
        nodes: &nodes,
        stop: &stop,
    };
    let mut root = State {
        domains,
        image: vec![None; n],
        unassigned: n,
        colours_used: 0,
    };

    let result = if cfg.parallel && !cfg.deterministic {
        run_parallel(&search, root)
    } else {
        match search.run(&mut root) {
            Outcome::Found => HomResult::Yes(witness_of(&root)),
            Outcome::Exhausted => HomResult::No,
            Outcome::OutOfBudget | Outcome::Cancelled => HomResult::BudgetExceeded,
        }
    };
    if let HomResult::Yes(w) = &result {
        assert!(w.verify(g, h), "homomorphism search produced an invalid witness");
    }
    result
}

fn run_parallel(search: &Search<'_>, root: State) -> HomResult {
    let target = 8 * rayon::current_num_threads().max(1);
    let mut frontier = vec![root];
    // breadth-first expansion until there is enough work to share
    for _ in 0..6 {
        if frontier.len() >= target || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for st in &frontier {
            match search.children(st) {
                Ok(kids) => {
                    for k in kids {
                        if k.unassigned == 0 {
                            return HomResult::Yes(witness_of(&k));
                        }
                        next.push(k);
                    }
                }
                Err(Outcome::Found) => return HomResult::Yes(witness_of(st)),
                Err(_) => return HomResult::BudgetExceeded,
            }
        }
        frontier = next;
    }
    let outcomes: Vec<std::result::Result<HomWitness, Outcome>> = frontier
        .into_par_iter()
        .map(|mut st| match search.run(&mut st) {
            Outcome::Found => {
                search.stop.store(true, Ordering::Relaxed);
                Ok(witness_of(&st))
            }
            other => Err(other),
        })
        .collect();
    let mut out_of_budget = false;
    for o in outcomes {
        match o {
            Ok(w) => return HomResult::Yes(w),
            Err(Outcome::OutOfBudget) => out_of_budget = true,
            Err(_) => {}
        }
    }
    if out_of_budget {
        HomResult::BudgetExceeded
    } else {
        HomResult::No
    }
}

/// `G -> H` and `H -> G`.
pub fn hom_equivalent(g: &Graph, h: &Graph, cfg: &SearchConfig) -> Answer {
    let forward = exists_hom(g, h, cfg).answer();
    if forward == Answer::No {
        return Answer::No;
    }
    forward.and(exists_hom(h, g, cfg).answer())
}

/// A proper colouring with the fewest colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub colours: usize,
    pub assignment: Vec<usize>,
}

/// Exact chromatic number: climbs from the clique number until a colouring
/// exists, capped by the DSATUR colouring.
pub fn chromatic_colouring(g: &Graph, cfg: &SearchConfig) -> Result<Colouring> {
    if g.is_empty() {
        return Ok(Colouring {
            colours: 0,
            assignment: Vec::new(),
        });
    }
    let greedy = clique::dsatur_colouring(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let lower = clique::omega(g);
    for k in lower..upper {
        match exists_hom(g, &Graph::complete(k)?, cfg) {
            HomResult::Yes(w) => {
                return Ok(Colouring {
                    colours: k,
                    assignment: w.map,
                })
            }
            HomResult::No => {}
            HomResult::BudgetExceeded => return Err(Error::BudgetExceeded(cfg.node_budget)),
        }
    }
    Ok(Colouring {
        colours: upper,
        assignment: greedy,
    })
}

pub fn chi(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    chromatic_colouring(g, cfg).map(|c| c.colours)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FracHomResult {
    /// `G ⋉ d -> H ⋉ d` holds with this witness, and fails for every smaller `d`.
    Yes { d: usize, witness: HomWitness },
    /// No `d <= d_max` works.
    No { d_max: usize },
    BudgetExceeded,
}

/// Bounded check of the fractional homomorphism relation: the smallest
/// `d <= d_max` with `G ⋉ d -> H ⋉ d`.
pub fn frachom(g: &Graph, h: &Graph, d_max: usize, cfg: &SearchConfig) -> Result<FracHomResult> {
    if d_max == 0 {
        return Err(Error::InvalidParameter("d_max must be at least 1".into()));
    }
    for d in 1..=d_max {
        let gd = ops::blowup(g, d)?;
        let hd = ops::blowup(h, d)?;
        match exists_hom(&gd, &hd, cfg) {
            HomResult::Yes(witness) => return Ok(FracHomResult::Yes { d, witness }),
            HomResult::No => {}
            HomResult::BudgetExceeded => return Ok(FracHomResult::BudgetExceeded),
        }
    }
    Ok(FracHomResult::No { d_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn c(n: usize) -> Graph {
        Graph::cycle(n).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// Tries every map `V(G) -> V(H)`.
    fn brute_force_hom(g: &Graph, h: &Graph) -> bool {
        let (n, m) = (g.vertex_count(), h.vertex_count());
        if n == 0 {
            return true;
        }
        if m == 0 {
            return false;
        }
        let mut map = vec![0usize; n];
        loop {
            if g.edges().all(|(u, v)| h.has_edge(map[u], map[v])) {
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

    #[test]
    fn spec_examples() {
        let r = exists_hom(&c(5), &k(3), &cfg());
        assert!(r.witness().unwrap().verify(&c(5), &k(3)));
        assert_eq!(exists_hom(&Graph::kneser(6, 2).unwrap(), &k(3), &cfg()), HomResult::No);
        assert_eq!(
            exists_hom(&Graph::empty(), &Graph::empty(), &cfg()),
            HomResult::Yes(HomWitness { map: vec![] })
        );
        assert_eq!(exists_hom(&k(1), &Graph::empty(), &cfg()), HomResult::No);
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(hom_equivalent(&k(3), &c(3), &cfg()), Answer::Yes);
        assert_eq!(hom_equivalent(&c(5), &k(2), &cfg()), Answer::No);
        let b = ops::blowup(&c(5), 2).unwrap();
        assert_eq!(hom_equivalent(&b, &c(5), &cfg()), Answer::No);
        assert!(brute_force_hom(&c(5), &b));
    }

    #[test]
    fn budget_is_reported() {
        let kg = Graph::kneser(6, 2).unwrap();
        assert_eq!(
            exists_hom(&kg, &k(3), &SearchConfig::with_budget(3)),
            HomResult::BudgetExceeded
        );
        assert_eq!(
            hom_equivalent(&kg, &k(3), &SearchConfig::with_budget(3)),
            Answer::BudgetExceeded
        );
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chi(&Graph::empty(), &cfg()).unwrap(), 0);
        assert_eq!(chi(&Graph::edgeless(3).unwrap(), &cfg()).unwrap(), 1);
        assert_eq!(chi(&c(5), &cfg()).unwrap(), 3);
        assert_eq!(chi(&c(6), &cfg()).unwrap(), 2);
        assert_eq!(chi(&Graph::petersen(), &cfg()).unwrap(), 3);
        assert_eq!(chi(&Graph::kneser(6, 2).unwrap(), &cfg()).unwrap(), 4);
        let two_c5 = ops::join(&c(5), &c(5)).unwrap();
        assert_eq!(chi(&two_c5, &cfg()).unwrap(), 6);
        assert_eq!(chi(&ops::blowup(&c(5), 2).unwrap(), &cfg()).unwrap(), 5);
        let col = chromatic_colouring(&Graph::kneser(6, 2).unwrap(), &cfg()).unwrap();
        assert!(clique::is_proper_colouring(&Graph::kneser(6, 2).unwrap(), &col.assignment));
    }

    #[test]
    fn frachom_examples() {
        let kg = Graph::kneser(6, 2).unwrap();
        match frachom(&kg, &k(3), 2, &cfg()).unwrap() {
            FracHomResult::Yes { d, .. } => assert_eq!(d, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            frachom(&c(5), &c(5), 1, &cfg()).unwrap(),
            FracHomResult::Yes { d: 1, .. }
        ));
        assert_eq!(
            frachom(&k(3), &k(2), 2, &cfg()).unwrap(),
            FracHomResult::No { d_max: 2 }
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(0..=6);
            let m = rng.gen_range(0..=5);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(0.5)).unwrap();
            let h = Graph::from_fn(m, |_, _| rng.gen_bool(0.6)).unwrap();
            let expected = brute_force_hom(&g, &h);
            let seq = exists_hom(&g, &h, &cfg());
            assert_eq!(seq.is_yes(), expected, "{g:?} -> {h:?}");
            let par = exists_hom(&g, &h, &SearchConfig::parallel());
            assert_eq!(par.is_yes(), expected);
        }
    }

    #[test]
    fn deterministic_mode_is_reproducible() {
        let g = ops::blowup(&c(7), 2).unwrap();
        let h = Graph::kneser(7, 2).unwrap();
        let a = exists_hom(&g, &h, &cfg());
        let b = exists_hom(&g, &h, &cfg());
        assert_eq!(a, b);
        assert_eq!(exists_hom(&g, &h, &SearchConfig::parallel()).answer(), a.answer());
    }
}
