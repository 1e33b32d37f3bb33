//! Semiring families of graphs and their F-number invariants.
//!
//! A semiring family is a sequence `F_0 = ∅, F_1 ≠ ∅, F_2, ..` with
//! homomorphisms `F_n + F_m -> F_{n+m}` and `F_n * F_m -> F_{nm}`. Two
//! families are implemented:
//!
//! - `Complete`: `F_n = K_n`. Its F-number is `χ`, the fractional one `χ_f`.
//! - `Haemers(q)`: pairs `(x, y) ∈ GF(q)^n × GF(q)^n` with `<x,y> = 1`,
//!   adjacent when `<x,y'> = <x',y> = 0`. Its F-number is the Haemers minrank
//!   bound of the complement.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::clique;
use crate::error::{Error, Result};
use crate::gf::{GaloisField, SUPPORTED_ORDERS};
use crate::graph::{Graph, GraphBuilder};
use crate::hom::{exists_hom, hom_equivalent, Answer, HomResult, HomWitness, SearchConfig};
use crate::ops;
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

/// Limit on `q^n · q^n` candidate pairs for a Haemers family graph.
pub const HAEMERS_CANDIDATE_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    Complete,
    Haemers(usize),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete => write!(f, "complete"),
            FamilySpec::Haemers(q) => write!(f, "haemers:{q}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "complete" => Ok(FamilySpec::Complete),
            other => {
                let q = other
                    .strip_prefix("haemers:")
                    .and_then(|q| q.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown family {other:?}")))?;
                if !SUPPORTED_ORDERS.contains(&q) {
                    return Err(Error::InvalidParameter(format!(
                        "haemers:{q} not supported; fields {SUPPORTED_ORDERS:?}"
                    )));
                }
                Ok(FamilySpec::Haemers(q))
            }
        }
    }
}

/// Vector labels of a Haemers family graph, in vertex order.
pub fn haemers_vertices(field: &GaloisField, n: usize) -> Result<Vec<(Vec<u8>, Vec<u8>)>> {
    let q = field.order();
    let candidates = q
        .checked_pow(2 * n as u32)
        .filter(|&c| c <= HAEMERS_CANDIDATE_CAP)
        .ok_or(Error::SizeCap {
            requested: q.saturating_pow(2 * n as u32),
            limit: HAEMERS_CANDIDATE_CAP,
        })?;
    debug_assert!(candidates <= HAEMERS_CANDIDATE_CAP);
    let vs = field.vectors(n);
    let mut out = Vec::new();
    for x in &vs {
        for y in &vs {
            if field.dot(x, y) == 1 {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// `F_n` of the given family, built from scratch.
pub fn family_graph(spec: FamilySpec, n: usize) -> Result<Graph> {
    match spec {
        FamilySpec::Complete => Graph::complete(n),
        FamilySpec::Haemers(q) => {
            let field = GaloisField::new(q)?;
            let labels = haemers_vertices(&field, n)?;
            let mut b = GraphBuilder::new(labels.len())?;
            for (a, (x, y)) in labels.iter().enumerate() {
                for (c, (x2, y2)) in labels.iter().enumerate().skip(a + 1) {
                    if field.dot(x, y2) == 0 && field.dot(x2, y) == 0 {
                        b.add_edge(a, c);
                    }
                }
            }
            Ok(b.build())
        }
    }
}

/// A family together with a cache of its generated graphs.
pub struct Family {
    spec: FamilySpec,
    cache: RwLock<HashMap<usize, Arc<Graph>>>,
}

impl Family {
    pub fn new(spec: FamilySpec) -> Self {
        Family {
            spec,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> FamilySpec {
        self.spec
    }

    pub fn graph(&self, n: usize) -> Result<Arc<Graph>> {
        if let Some(g) = self.cache.read().unwrap().get(&n) {
            return Ok(Arc::clone(g));
        }
        let built = Arc::new(family_graph(self.spec, n)?);
        let mut cache = self.cache.write().unwrap();
        Ok(Arc::clone(cache.entry(n).or_insert(built)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Sum,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive(String),
}

impl CheckStatus {
    pub fn from_answer(a: Answer) -> Self {
        match a {
            Answer::Yes => CheckStatus::Pass,
            Answer::No => CheckStatus::Fail,
            Answer::BudgetExceeded => CheckStatus::Inconclusive("search budget exhausted".into()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyCheck {
    pub relation: Relation,
    pub n: usize,
    pub m: usize,
    pub status: CheckStatus,
}

#[derive(Debug, Clone)]
pub struct SemiringFamilyReport {
    pub spec: FamilySpec,
    pub base_ok: bool,
    pub checks: Vec<FamilyCheck>,
}

impl SemiringFamilyReport {
    pub fn passed(&self) -> bool {
        self.base_ok && self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }
}

/// Verifies `F_0 = ∅`, `F_1 ≠ ∅` and both structure homomorphisms for all
/// `n, m <= n_max`.
pub fn check_semiring_family(family: &Family, n_max: usize, cfg: &SearchConfig) -> SemiringFamilyReport {
    let base_ok = matches!(family.graph(0), Ok(g) if g.is_empty())
        && matches!(family.graph(1), Ok(g) if !g.is_empty());
    let mut checks = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            for relation in [Relation::Sum, Relation::Product] {
                let status = (|| -> Result<CheckStatus> {
                    let (fa, fb) = (family.graph(n)?, family.graph(m)?);
                    let (source, target) = match relation {
                        Relation::Sum => (ops::join(&fa, &fb)?, family.graph(n + m)?),
                        Relation::Product => (ops::disjunctive(&fa, &fb)?, family.graph(n * m)?),
                    };
                    Ok(CheckStatus::from_answer(exists_hom(&source, &target, cfg).answer()))
                })()
                .unwrap_or_else(|e| CheckStatus::Inconclusive(e.to_string()));
                checks.push(FamilyCheck {
                    relation,
                    n,
                    m,
                    status,
                });
            }
        }
    }
    SemiringFamilyReport {
        spec: family.spec(),
        base_ok,
        checks,
    }
}

#[derive(Debug, Clone)]
pub struct FlatCheck {
    pub flat: VertexSet,
    pub rank: usize,
    pub status: CheckStatus,
}

#[derive(Debug, Clone)]
pub struct LinearLikeReport {
    pub spec: FamilySpec,
    pub n: usize,
    pub omega: usize,
    pub flats: Vec<FlatCheck>,
}

impl LinearLikeReport {
    pub fn omega_ok(&self) -> bool {
        self.omega == self.n
    }

    pub fn passed(&self) -> bool {
        self.omega_ok() && self.flats.iter().all(|f| f.status == CheckStatus::Pass)
    }
}

/// For every flat `S` of `F_n`, checks that the induced subgraph is
/// homomorphically equivalent to `F_rank(S)`; also records `ω(F_n)`.
pub fn check_linear_like(
    family: &Family,
    n: usize,
    flat_cap: usize,
    cfg: &SearchConfig,
) -> Result<LinearLikeReport> {
    let fam = family.graph(n)?;
    let flats = ops::enumerate_flats(&fam, flat_cap)?;
    let mut out = Vec::with_capacity(flats.len());
    for flat in flats {
        let rank = ops::rank(&fam, &flat);
        let status = (|| -> Result<CheckStatus> {
            let induced = fam.induced_subgraph(&flat)?;
            let model = family.graph(rank)?;
            Ok(CheckStatus::from_answer(hom_equivalent(&induced, &model, cfg)))
        })()
        .unwrap_or_else(|e| CheckStatus::Inconclusive(e.to_string()));
        out.push(FlatCheck { flat, rank, status });
    }
    Ok(LinearLikeReport {
        spec: family.spec(),
        n,
        omega: clique::omega(&fam),
        flats: out,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FNumber {
    Value { n: usize, witness: HomWitness },
    ExceedsBound,
}

impl FNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            FNumber::Value { n, .. } => Some(*n),
            FNumber::ExceedsBound => None,
        }
    }
}

/// Smallest `n <= n_max` with `G -> F_n`. The chain `F_n -> F_{n+1}` makes
/// the first hit the minimum.
pub fn f_number(family: &Family, g: &Graph, n_max: usize, cfg: &SearchConfig) -> Result<FNumber> {
    if g.is_empty() {
        return Ok(FNumber::Value {
            n: 0,
            witness: HomWitness { map: Vec::new() },
        });
    }
    for n in 1..=n_max {
        let target = family.graph(n)?;
        match exists_hom(g, &target, cfg) {
            HomResult::Yes(witness) => return Ok(FNumber::Value { n, witness }),
            HomResult::No => {}
            HomResult::BudgetExceeded => return Err(Error::BudgetExceeded(cfg.node_budget)),
        }
    }
    Ok(FNumber::ExceedsBound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalWitness {
    pub value: Rational,
    pub n: usize,
    pub d: usize,
    /// Map from `V(G)` into the vertices of `F_n / d`.
    pub witness: HomWitness,
}

#[derive(Debug, Clone)]
pub struct FractionalFNumber {
    /// Best certified `n/d`, if any grid point admits a homomorphism.
    pub upper: Option<FractionalWitness>,
    /// `ω(G)`, a lower bound for every family with `ω(F_n) = n`.
    pub lower: usize,
    /// Grid points `(n, d)` where the climb stopped without an answer.
    pub inconclusive: Vec<(usize, usize, String)>,
}

/// Certified upper bound `min n/d` over the grid with `G -> F_n / d`.
///
/// For each `d`, `n` climbs until the first homomorphism; points whose ratio
/// cannot beat the current best are skipped.
pub fn f_number_fractional(
    family: &Family,
    g: &Graph,
    n_max: usize,
    d_max: usize,
    cfg: &SearchConfig,
) -> Result<FractionalFNumber> {
    if d_max == 0 {
        return Err(Error::InvalidParameter("d_max must be at least 1".into()));
    }
    let lower = clique::omega(g);
    let mut inconclusive = Vec::new();
    if g.is_empty() {
        return Ok(FractionalFNumber {
            upper: Some(FractionalWitness {
                value: Rational::zero(),
                n: 0,
                d: 1,
                witness: HomWitness { map: Vec::new() },
            }),
            lower,
            inconclusive,
        });
    }
    let mut best: Option<FractionalWitness> = None;
    for d in 1..=d_max {
        for n in 1..=n_max {
            let ratio = Rational::new(n as i64, d as i64);
            if best.as_ref().is_some_and(|b| ratio >= b.value) {
                break;
            }
            if ratio < Rational::from(lower) {
                continue;
            }
            let target = match family.graph(n).and_then(|f| ops::fractionalize(&f, d)) {
                Ok(t) => t,
                Err(e) => {
                    inconclusive.push((n, d, e.to_string()));
                    break;
                }
            };
            match exists_hom(g, &target, cfg) {
                HomResult::Yes(witness) => {
                    best = Some(FractionalWitness {
                        value: ratio,
                        n,
                        d,
                        witness,
                    });
                    break;
                }
                HomResult::No => {}
                HomResult::BudgetExceeded => {
                    inconclusive.push((n, d, "search budget exhausted".into()));
                    break;
                }
            }
        }
    }
    Ok(FractionalFNumber {
        upper: best,
        lower,
        inconclusive,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticBound {
    /// `min_k f_number(G^{*k})^{1/k}` over the powers that resolved.
    pub value: f64,
    /// Power achieving the minimum.
    pub power: usize,
    /// The F-number of each power, `None` where it exceeded `n_max`.
    pub per_power: Vec<Option<usize>>,
}

/// Upper bound on the asymptotic F-number from the first `power_max`
/// disjunctive powers.
pub fn f_number_asymptotic(
    family: &Family,
    g: &Graph,
    power_max: usize,
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<Option<AsymptoticBound>> {
    if power_max == 0 {
        return Err(Error::InvalidParameter("power_max must be at least 1".into()));
    }
    let mut best: Option<AsymptoticBound> = None;
    let mut per_power = Vec::new();
    for k in 1..=power_max {
        let p = ops::disjunctive_power(g, k)?;
        let value = match f_number(family, &p, n_max, cfg) {
            Ok(v) => v.value(),
            // a family graph beyond its cap cannot certify anything here
            Err(Error::SizeCap { .. }) => None,
            Err(e) => return Err(e),
        };
        per_power.push(value);
        if let Some(f) = value {
            let root = (f as f64).powf(1.0 / k as f64);
            if best.as_ref().map_or(true, |b| root < b.value) {
                best = Some(AsymptoticBound {
                    value: root,
                    power: k,
                    per_power: Vec::new(),
                });
            }
        }
    }
    Ok(best.map(|b| AsymptoticBound { per_power, ..b }))
}

pub const MINRANK_MAX_VERTICES: usize = 8;
pub const MINRANK_MAX_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minrank {
    /// Rank `r` with vectors satisfying `<x_v,y_v> = 1` and
    /// `<x_u,y_v> = <x_v,y_u> = 0` on edges.
    Value {
        r: usize,
        x: Vec<Vec<u8>>,
        y: Vec<Vec<u8>>,
    },
    ExceedsBound,
}

impl Minrank {
    pub fn value(&self) -> Option<usize> {
        match self {
            Minrank::Value { r, .. } => Some(*r),
            Minrank::ExceedsBound => None,
        }
    }
}

/// Smallest `r <= r_max` admitting a vector labelling over `GF(q)^r` with
/// `<x_v, y_v> = 1` and `<x_u, y_v> = <x_v, y_u> = 0` for adjacent `u, v`.
///
/// This is the Haemers minrank of the complement of `G`. A maximum clique is
/// pinned to the standard basis (no loss of generality under the
/// pairing-preserving action `x -> Ax`, `y -> A^{-T} y`), the remaining
/// vertices are placed by backtracking with forward checking on their
/// candidate lists.
pub fn minrank(g: &Graph, q: usize, r_max: usize) -> Result<Minrank> {
    let n = g.vertex_count();
    if n > MINRANK_MAX_VERTICES {
        return Err(Error::SizeCap {
            requested: n,
            limit: MINRANK_MAX_VERTICES,
        });
    }
    if r_max > MINRANK_MAX_RANK {
        return Err(Error::InvalidParameter(format!(
            "minrank searches at most rank {MINRANK_MAX_RANK}"
        )));
    }
    let field = GaloisField::new(q)?;
    if n == 0 {
        return Ok(Minrank::Value {
            r: 0,
            x: Vec::new(),
            y: Vec::new(),
        });
    }
    let clique = clique::max_clique(g).to_vec();
    for r in clique.len().max(1)..=r_max {
        if let Some((x, y)) = minrank_at(g, &field, r, &clique) {
            return Ok(Minrank::Value { r, x, y });
        }
    }
    Ok(Minrank::ExceedsBound)
}

fn minrank_at(g: &Graph, field: &GaloisField, r: usize, clique: &[usize]) -> Option<(Vec<Vec<u8>>, Vec<Vec<u8>>)> {
    let n = g.vertex_count();
    let vectors = field.vectors(r);
    let pairs: Vec<(usize, usize)> = (0..vectors.len())
        .flat_map(|a| (0..vectors.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| field.dot(&vectors[a], &vectors[b]) == 1)
        .collect();
    // dot tables indexed by vector ids
    let zero: Vec<Vec<bool>> = vectors
        .iter()
        .map(|a| vectors.iter().map(|b| field.dot(a, b) == 0).collect())
        .collect();

    let mut assigned: Vec<Option<(usize, usize)>> = vec![None; n];
    let unit = |i: usize| -> usize {
        // index of e_i in lexicographic order: q^(r-1-i)
        field.order().pow((r - 1 - i) as u32)
    };
    for (i, &v) in clique.iter().enumerate() {
        assigned[v] = Some((unit(i), unit(i)));
    }
    let compatible = |p: (usize, usize), o: (usize, usize)| zero[p.0][o.1] && zero[o.0][p.1];
    // initial candidate lists, already filtered against the pinned clique
    let mut cands: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| {
            if assigned[v].is_some() {
                return Vec::new();
            }
            pairs
                .iter()
                .copied()
                .filter(|&p| {
                    g.neighbors(v)
                        .iter()
                        .all(|u| assigned[u].map_or(true, |o| compatible(p, o)))
                })
                .collect()
        })
        .collect();
    if (0..n).any(|v| assigned[v].is_none() && cands[v].is_empty()) {
        return None;
    }
    let neighbours: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();

    fn dfs(
        assigned: &mut Vec<Option<(usize, usize)>>,
        cands: &mut Vec<Vec<(usize, usize)>>,
        neighbours: &[Vec<usize>],
        compatible: &dyn Fn((usize, usize), (usize, usize)) -> bool,
    ) -> bool {
        let next = (0..assigned.len())
            .filter(|&v| assigned[v].is_none())
            .min_by_key(|&v| (cands[v].len(), usize::MAX - neighbours[v].len(), v));
        let Some(v) = next else {
            return true;
        };
        let options = cands[v].clone();
        for p in options {
            assigned[v] = Some(p);
            let mut saved = Vec::new();
            let mut dead = false;
            for &u in &neighbours[v] {
                if assigned[u].is_some() {
                    continue;
                }
                let kept: Vec<(usize, usize)> =
                    cands[u].iter().copied().filter(|&c| compatible(c, p)).collect();
                let empty = kept.is_empty();
                saved.push((u, std::mem::replace(&mut cands[u], kept)));
                if empty {
                    dead = true;
                    break;
                }
            }
            if !dead && dfs(assigned, cands, neighbours, compatible) {
                return true;
            }
            for (u, c) in saved.into_iter().rev() {
                cands[u] = c;
            }
            assigned[v] = None;
        }
        false
    }

    if dfs(&mut assigned, &mut cands, &neighbours, &compatible) {
        let x = assigned.iter().map(|p| vectors[p.unwrap().0].clone()).collect();
        let y = assigned.iter().map(|p| vectors[p.unwrap().1].clone()).collect();
        Some((x, y))
    } else {
        None
    }
}

/// Checks a minrank labelling against `G`.
pub fn verify_minrank_labelling(g: &Graph, q: usize, x: &[Vec<u8>], y: &[Vec<u8>]) -> bool {
    let Ok(field) = GaloisField::new(q) else {
        return false;
    };
    x.len() == g.vertex_count()
        && y.len() == g.vertex_count()
        && (0..x.len()).all(|v| field.dot(&x[v], &y[v]) == 1)
        && g
            .edges()
            .all(|(u, v)| field.dot(&x[u], &y[v]) == 0 && field.dot(&x[v], &y[u]) == 0)
}

/// A map from `V(G)` to vertex sets of a family graph `F_m`, claimed to have
/// rank at least `r` everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankRepresentation {
    pub assignment: Vec<VertexSet>,
    pub r: usize,
}

/// Canonical representation attached to a homomorphism `G -> F_n / d`: each
/// vertex goes to its image `d`-clique.
pub fn representation_from_fractional(fam: &Graph, d: usize, witness: &HomWitness) -> Result<RankRepresentation> {
    let cliques = ops::cliques_of_size(fam, d, usize::MAX)?;
    let assignment = witness
        .map
        .iter()
        .map(|&i| {
            cliques
                .get(i)
                .cloned()
                .ok_or_else(|| Error::InvalidRepresentation(format!("no {d}-clique with index {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankRepresentation { assignment, r: d })
}

/// Checks adjacency preservation into `2^{F_m}` and the rank condition;
/// returns the certified ratio `rank(∪ φ(v)) / r`.
pub fn verify_rank_representation(rep: &RankRepresentation, g: &Graph, fam: &Graph) -> Result<Rational> {
    let m = fam.vertex_count();
    if rep.r == 0 {
        return Err(Error::InvalidRepresentation("rank r must be at least 1".into()));
    }
    if rep.assignment.len() != g.vertex_count() || rep.assignment.iter().any(|s| s.universe() != m) {
        return Err(Error::InvalidRepresentation(
            "assignment does not match the graph and the family member".into(),
        ));
    }
    for (u, v) in g.edges() {
        let (s, t) = (&rep.assignment[u], &rep.assignment[v]);
        let adjacent = !s.is_empty() && !t.is_empty() && t.is_subset(&ops::perp(fam, s)) && s.is_disjoint(t);
        if !adjacent {
            return Err(Error::InvalidRepresentation(format!(
                "adjacency not preserved on edge {u}-{v}"
            )));
        }
    }
    for (v, s) in rep.assignment.iter().enumerate() {
        let rk = ops::rank(fam, s);
        if rk < rep.r {
            return Err(Error::InvalidRepresentation(format!(
                "vertex {v} has rank {rk} < {}",
                rep.r
            )));
        }
    }
    let union = rep
        .assignment
        .iter()
        .fold(VertexSet::empty(m), |acc, s| acc.union(s));
    Ok(Rational::new(ops::rank(fam, &union) as i64, rep.r as i64))
}
