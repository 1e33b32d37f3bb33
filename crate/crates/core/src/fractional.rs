//! Fractional chromatic number as an exact covering LP over maximal
//! independent sets, plus an upper bound from homomorphisms into Kneser graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::{exists_hom, HomResult, HomWitness, SearchConfig};
use crate::rational::Rational;
use crate::simplex::{self, CoveringSolution};
use crate::vertex_set::VertexSet;

/// Vertex cap for independent set enumeration.
pub const MIS_MAX_VERTICES: usize = 25;

/// Columns of the covering LP: independent sets of the carrier graph.
#[derive(Debug, Clone)]
pub struct LpInstance {
    pub vertices: usize,
    pub columns: Vec<VertexSet>,
}

/// Optimal fractional colouring with its dual fractional clique.
#[derive(Debug, Clone)]
pub struct FractionalColouring {
    pub value: Rational,
    /// Weight per column of the instance.
    pub weights: Vec<Rational>,
    /// Vertex weights summing to `value` with at most 1 on every independent set.
    pub clique_weights: Vec<Rational>,
    pub instance: LpInstance,
}

/// Inclusion-maximal independent sets, sorted lexicographically.
///
/// Bron–Kerbosch with pivoting, run as clique enumeration on the complement.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > MIS_MAX_VERTICES {
        return Err(Error::SizeCap {
            requested: n,
            limit: MIS_MAX_VERTICES,
        });
    }
    let comp = g.complement();
    let mut out = Vec::new();
    bron_kerbosch(
        &comp,
        VertexSet::empty(n),
        VertexSet::full(n),
        VertexSet::empty(n),
        &mut out,
    );
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| g.neighbors(u).intersection(&p).len())
        .expect("p is nonempty");
    let branch = p.difference(&g.neighbors(pivot));
    for v in branch.iter() {
        let nv = g.neighbors(v);
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(g, r2, p.intersection(&nv), x.intersection(&nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Exact `χ_f(G)`; `χ_f(∅) = 0`.
pub fn fractional_chromatic(g: &Graph) -> Result<Rational> {
    Ok(fractional_colouring(g)?.value)
}

/// Solves the covering LP and checks both the primal and dual certificates.
pub fn fractional_colouring(g: &Graph) -> Result<FractionalColouring> {
    let n = g.vertex_count();
    let columns = maximal_independent_sets(g)?;
    let instance = LpInstance {
        vertices: n,
        columns,
    };
    if n == 0 {
        return Ok(FractionalColouring {
            value: Rational::zero(),
            weights: Vec::new(),
            clique_weights: Vec::new(),
            instance,
        });
    }
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|v| {
            instance
                .columns
                .iter()
                .map(|s| if s.contains(v) { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let b = vec![Rational::one(); n];
    let c = vec![Rational::one(); instance.columns.len()];
    let CoveringSolution {
        value,
        primal,
        dual,
        ..
    } = simplex::minimize_covering(&a, &b, &c)?;
    debug_assert!(certificates_hold(&instance, &value, &primal, &dual));
    Ok(FractionalColouring {
        value,
        weights: primal,
        clique_weights: dual,
        instance,
    })
}

fn certificates_hold(inst: &LpInstance, value: &Rational, x: &[Rational], y: &[Rational]) -> bool {
    let covered = (0..inst.vertices).all(|v| {
        let total = inst
            .columns
            .iter()
            .zip(x)
            .filter(|(s, _)| s.contains(v))
            .fold(Rational::zero(), |acc, (_, w)| &acc + w);
        total >= Rational::one()
    });
    let packed = inst.columns.iter().all(|s| {
        s.iter().fold(Rational::zero(), |acc, v| &acc + &y[v]) <= Rational::one()
    });
    let xs = x.iter().fold(Rational::zero(), |acc, w| &acc + w);
    let ys = y.iter().fold(Rational::zero(), |acc, w| &acc + w);
    covered && packed && xs == *value && ys == *value && y.iter().all(|w| !w.is_negative())
}

/// Upper bound on `χ_f` witnessed by a homomorphism `G -> KG(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserBound {
    pub value: Rational,
    pub n: usize,
    pub d: usize,
    pub witness: HomWitness,
}

/// Smallest `n/d` over `d <= d_max`, `n <= n_max` with `G -> KG(n, d)`.
///
/// Returns `None` if no grid point admits a homomorphism.
pub fn chif_upper_via_kneser(
    g: &Graph,
    n_max: usize,
    d_max: usize,
    cfg: &SearchConfig,
) -> Result<Option<KneserBound>> {
    if n_max == 0 || d_max == 0 {
        return Err(Error::InvalidParameter("grid bounds must be at least 1".into()));
    }
    if g.is_empty() {
        return Ok(Some(KneserBound {
            value: Rational::zero(),
            n: 0,
            d: 1,
            witness: HomWitness { map: Vec::new() },
        }));
    }
    let mut best: Option<KneserBound> = None;
    for d in 1..=d_max {
        for n in d..=n_max {
            let ratio = Rational::new(n as i64, d as i64);
            if best.as_ref().is_some_and(|b| ratio >= b.value) {
                break;
            }
            let target = Graph::kneser(n, d)?;
            match exists_hom(g, &target, cfg) {
                HomResult::Yes(witness) => {
                    best = Some(KneserBound {
                        value: ratio,
                        n,
                        d,
                        witness,
                    });
                    break;
                }
                HomResult::No => {}
                HomResult::BudgetExceeded => return Err(Error::BudgetExceeded(cfg.node_budget)),
            }
        }
    }
    Ok(best)
}
