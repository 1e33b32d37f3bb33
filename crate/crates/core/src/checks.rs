//! Verification suites: the blowup/fractionalization adjunction on random
//! instances, semiring-family axioms, the linear-like condition, and a table
//! of known reference values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{self, BoundOptions};
use crate::clique;
use crate::error::Result;
use crate::expr::eval_str;
use crate::families::{
    self, check_linear_like, check_semiring_family, f_number, f_number_fractional, CheckStatus, Family, FamilySpec,
};
use crate::fractional;
use crate::graph::Graph;
use crate::hom::{self, exists_hom, FracHomResult, HomResult, SearchConfig};
use crate::ops;
use crate::rational::Rational;
use crate::theta;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status != CheckStatus::Pass)
    }
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p)).expect("small random graphs are within the vertex cap")
}

/// Seeded corpus of `count` graphs with `min_n <= n <= max_n` vertices and
/// edge densities drawn from `[0.2, 0.8]`.
pub fn random_corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let p = rng.gen_range(0.2..=0.8);
            random_graph(&mut rng, n, p)
        })
        .collect()
}

/// The two-clique-plus-apex graph in which the 2-clique `{0, 1}` has rank 3.
pub fn cut_vertex_example() -> (Graph, VertexSet) {
    let g = Graph::from_edges(
        6,
        [(0, 1), (2, 3), (3, 4), (2, 4), (0, 5), (1, 5), (2, 5), (3, 5), (4, 5)],
    )
    .expect("fixed edge list");
    (g, VertexSet::from_elements(6, [0, 1]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjunctionTrial {
    pub g: String,
    pub h: String,
    pub d: usize,
    pub blowup_side: Option<bool>,
    pub fraction_side: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjunctionReport {
    pub trials: Vec<AdjunctionTrial>,
    pub discrepancies: usize,
    /// Trials where at least one search ran out of budget.
    pub skipped: usize,
}

fn decided(r: HomResult) -> Option<bool> {
    match r {
        HomResult::Yes(_) => Some(true),
        HomResult::No => Some(false),
        HomResult::BudgetExceeded => None,
    }
}

/// Compares `G ⋉ d -> H` with `G -> H / d` on seeded random triples with at
/// most `max_n` vertices and `d <= max_d`.
pub fn check_adjunction(trials: usize, seed: u64, max_n: usize, max_d: usize, cfg: &SearchConfig) -> Result<AdjunctionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let (mut discrepancies, mut skipped) = (0, 0);
    for _ in 0..trials {
        let ng = rng.gen_range(1..=max_n);
        let nh = rng.gen_range(1..=max_n);
        let pg = rng.gen_range(0.2..=0.8);
        let ph = rng.gen_range(0.3..=0.9);
        let g = random_graph(&mut rng, ng, pg);
        let h = random_graph(&mut rng, nh, ph);
        let d = rng.gen_range(1..=max_d);
        let left = decided(exists_hom(&ops::blowup(&g, d)?, &h, cfg));
        let right = decided(exists_hom(&g, &ops::fractionalize(&h, d)?, cfg));
        match (left, right) {
            (Some(a), Some(b)) if a != b => discrepancies += 1,
            (Some(_), Some(_)) => {}
            _ => skipped += 1,
        }
        out.push(AdjunctionTrial {
            g: g.to_edge_list(),
            h: h.to_edge_list(),
            d,
            blowup_side: left,
            fraction_side: right,
        });
    }
    Ok(AdjunctionReport {
        trials: out,
        discrepancies,
        skipped,
    })
}

pub fn adjunction_suite(trials: usize, seed: u64, cfg: &SearchConfig) -> Result<CheckReport> {
    let r = check_adjunction(trials, seed, 6, 3, cfg)?;
    let status = if r.discrepancies > 0 {
        CheckStatus::Fail
    } else if r.skipped > 0 {
        CheckStatus::Inconclusive(format!("{} trials exhausted the search budget", r.skipped))
    } else {
        CheckStatus::Pass
    };
    Ok(CheckReport {
        suite: "adjunction".into(),
        items: vec![CheckItem {
            name: format!("G ⋉ d -> H iff G -> H / d ({trials} trials, seed {seed})"),
            expected: "0 discrepancies".into(),
            computed: format!("{} discrepancies, {} skipped", r.discrepancies, r.skipped),
            status,
        }],
    })
}

pub fn semiring_family_suite(spec: FamilySpec, n_max: usize, cfg: &SearchConfig) -> CheckReport {
    let family = Family::new(spec);
    let r = check_semiring_family(&family, n_max, cfg);
    let mut items = vec![CheckItem {
        name: "F_0 = ∅ and F_1 ≠ ∅".into(),
        expected: "true".into(),
        computed: r.base_ok.to_string(),
        status: if r.base_ok { CheckStatus::Pass } else { CheckStatus::Fail },
    }];
    for c in r.checks {
        let (op, target) = match c.relation {
            families::Relation::Sum => ("+", c.n + c.m),
            families::Relation::Product => ("*", c.n * c.m),
        };
        items.push(CheckItem {
            name: format!("F_{} {op} F_{} -> F_{target}", c.n, c.m),
            expected: "homomorphism".into(),
            computed: status_word(&c.status),
            status: c.status,
        });
    }
    CheckReport {
        suite: format!("semiring-family:{spec}"),
        items,
    }
}

pub fn linear_like_suite(spec: FamilySpec, n: usize, flat_cap: usize, cfg: &SearchConfig) -> Result<CheckReport> {
    let family = Family::new(spec);
    let r = check_linear_like(&family, n, flat_cap, cfg)?;
    let mut items = vec![CheckItem {
        name: format!("omega(F_{n})"),
        expected: n.to_string(),
        computed: r.omega.to_string(),
        status: if r.omega_ok() { CheckStatus::Pass } else { CheckStatus::Fail },
    }];
    for f in r.flats {
        items.push(CheckItem {
            name: format!("flat {} of rank {}", f.flat, f.rank),
            expected: format!("equivalent to F_{}", f.rank),
            computed: status_word(&f.status),
            status: f.status,
        });
    }
    Ok(CheckReport {
        suite: format!("linear-like:{spec}"),
        items,
    })
}

fn status_word(s: &CheckStatus) -> String {
    match s {
        CheckStatus::Pass => "yes".into(),
        CheckStatus::Fail => "no".into(),
        CheckStatus::Inconclusive(why) => format!("inconclusive: {why}"),
    }
}

/// Accumulates reference checks; any error while computing becomes an
/// inconclusive item rather than aborting the suite.
struct Table {
    items: Vec<CheckItem>,
}

impl Table {
    fn exact<T: ToString + PartialEq>(&mut self, name: &str, expected: T, computed: Result<T>) {
        let item = match computed {
            Ok(v) => CheckItem {
                name: name.into(),
                expected: expected.to_string(),
                computed: v.to_string(),
                status: if v == expected { CheckStatus::Pass } else { CheckStatus::Fail },
            },
            Err(e) => CheckItem {
                name: name.into(),
                expected: expected.to_string(),
                computed: format!("error: {e}"),
                status: CheckStatus::Inconclusive(e.to_string()),
            },
        };
        self.items.push(item);
    }

    fn close(&mut self, name: &str, expected: f64, tol: f64, computed: Result<(f64, f64)>) {
        let item = match computed {
            Ok((lo, hi)) => CheckItem {
                name: name.into(),
                expected: format!("{expected:.7} ± {tol:e}"),
                computed: format!("[{lo:.9}, {hi:.9}]"),
                status: if (lo - expected).abs() <= tol && (hi - expected).abs() <= tol {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
            },
            Err(e) => CheckItem {
                name: name.into(),
                expected: format!("{expected:.7} ± {tol:e}"),
                computed: format!("error: {e}"),
                status: CheckStatus::Inconclusive(e.to_string()),
            },
        };
        self.items.push(item);
    }
}

fn bounded<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "exceeds bound".into(), |x| x.to_string())
}

fn hom_word(r: HomResult) -> &'static str {
    match r {
        HomResult::Yes(_) => "yes",
        HomResult::No => "no",
        HomResult::BudgetExceeded => "budget exceeded",
    }
}

/// Known values from the literature, each recomputed from scratch.
pub fn reference_suite(cfg: &SearchConfig) -> CheckReport {
    let mut t = Table { items: Vec::new() };
    let k = |n| Graph::complete(n);
    let c5 = || Graph::cycle(5);
    let kg62 = || Graph::kneser(6, 2);
    let complete = Family::new(FamilySpec::Complete);
    let haemers2 = Family::new(FamilySpec::Haemers(2));

    t.exact("frac(k6,2) = kg(6,2)", true, (|| Ok(eval_str("frac(k6,2)")? == kg62()?))());
    t.exact("frac(c5,2) is edgeless on 5 vertices", "n=5 m=0".to_string(), (|| {
        let g = ops::fractionalize(&c5()?, 2)?;
        Ok(format!("n={} m={}", g.vertex_count(), g.edge_count()))
    })());
    t.exact("frac(k1,2) is the empty graph", 0, (|| Ok(ops::fractionalize(&k(1)?, 2)?.vertex_count()))());
    t.exact("frac(join(k1,k1),2) = K1 does not map to frac(k1,2) + frac(k1,2)", "no", (|| {
        let lhs = ops::fractionalize(&ops::join(&k(1)?, &k(1)?)?, 2)?;
        let f = ops::fractionalize(&k(1)?, 2)?;
        Ok(hom_word(exists_hom(&lhs, &ops::join(&f, &f)?, cfg)))
    })());

    t.exact("chi(join(c5,c5))", 6, (|| hom::chi(&ops::join(&c5()?, &c5()?)?, cfg))());
    t.exact("chi(disj(k2,c5))", 6, (|| hom::chi(&ops::disjunctive(&k(2)?, &c5()?)?, cfg))());
    t.exact("chi(blow(c5,2))", 5, (|| hom::chi(&ops::blowup(&c5()?, 2)?, cfg))());
    t.exact("chi(lex(c5,k2))", 5, (|| hom::chi(&ops::lexicographic(&c5()?, &k(2)?)?, cfg))());
    t.exact("join(c5,c5) does not map to blow(c5,2)", "no", (|| {
        Ok(hom_word(exists_hom(&ops::join(&c5()?, &c5()?)?, &ops::blowup(&c5()?, 2)?, cfg)))
    })());

    t.exact("chi(disj(blow(k2,2),c5))", 12, (|| hom::chi(&ops::disjunctive(&ops::blowup(&k(2)?, 2)?, &c5()?)?, cfg))());
    t.exact("chi(blow(disj(k2,c5),2))", 10, (|| hom::chi(&ops::blowup(&ops::disjunctive(&k(2)?, &c5()?)?, 2)?, cfg))());
    t.exact("disj(blow(k2,2),c5) does not map to blow(disj(k2,c5),2)", "no", (|| {
        let lhs = ops::disjunctive(&ops::blowup(&k(2)?, 2)?, &c5()?)?;
        let rhs = ops::blowup(&ops::disjunctive(&k(2)?, &c5()?)?, 2)?;
        Ok(hom_word(exists_hom(&lhs, &rhs, cfg)))
    })());

    t.exact("rank of the 2-clique in the cut-vertex graph", 3, {
        let (g, s) = cut_vertex_example();
        Ok(ops::rank(&g, &s))
    });

    t.exact("kg(6,2) -> k3", "no", (|| Ok(hom_word(exists_hom(&kg62()?, &k(3)?, cfg))))());
    t.exact("chi(kg(6,2))", 4, (|| hom::chi(&kg62()?, cfg))());
    for kk in [2usize, 3] {
        t.exact(&format!("chi(kg({},{kk}))", 3 * kk - 1), kk + 1, (|| hom::chi(&Graph::kneser(3 * kk - 1, kk)?, cfg))());
    }
    t.exact("frachom(kg(6,2), k3) at d = 2", "yes at d = 2".to_string(), (|| {
        Ok(match hom::frachom(&kg62()?, &k(3)?, 2, cfg)? {
            FracHomResult::Yes { d, .. } => format!("yes at d = {d}"),
            FracHomResult::No { d_max } => format!("no up to d = {d_max}"),
            FracHomResult::BudgetExceeded => "budget exceeded".into(),
        })
    })());

    t.exact("chif(c5)", Rational::new(5, 2), (|| fractional::fractional_chromatic(&c5()?))());
    for n in 1..=5 {
        t.exact(&format!("chif(k{n})"), Rational::from(n), (|| fractional::fractional_chromatic(&k(n)?))());
    }

    for (n, kk) in [(6usize, 2usize), (5, 2), (8, 3)] {
        let expected = n as f64 / kk as f64;
        t.close(&format!("theta-bar(kg({n},{kk}))"), expected, 1e-4, (|| {
            let r = theta::theta_bar(&Graph::kneser(n, kk)?, 1e-7)?;
            Ok((r.lower, r.upper))
        })());
    }

    for n in 0..=3 {
        t.exact(&format!("omega(F_{n}) for haemers:2"), n, (|| Ok(clique::omega(&*haemers2.graph(n)?)))());
    }
    for n in 0..=4 {
        t.exact(&format!("omega(F_{n}) for complete"), n, (|| Ok(clique::omega(&*complete.graph(n)?)))());
    }

    for spec in [FamilySpec::Complete, FamilySpec::Haemers(2), FamilySpec::Haemers(3), FamilySpec::Haemers(4)] {
        let fam = Family::new(spec);
        let n_top = if spec == FamilySpec::Complete || spec == FamilySpec::Haemers(2) { 3 } else { 2 };
        for n in 1..=n_top {
            t.exact(&format!("fnum:{spec}(k{n})"), n.to_string(), (|| {
                Ok(bounded(f_number(&fam, &k(n)?, n_top, cfg)?.value()))
            })());
            t.exact(&format!("fnumfrac:{spec}(k{n})"), n.to_string(), (|| {
                Ok(bounded(f_number_fractional(&fam, &k(n)?, n_top, 2, cfg)?.upper.map(|w| w.value)))
            })());
        }
    }
    t.exact("fnumfrac:complete(c5) on n <= 5, d <= 2", "5/2".to_string(), (|| {
        Ok(bounded(f_number_fractional(&complete, &c5()?, 5, 2, cfg)?.upper.map(|w| w.value)))
    })());

    t.exact("c5 -> K5/2 is a rank-2 representation", true, (|| {
        let k5 = k(5)?;
        let frac = ops::fractionalize(&k5, 2)?;
        let g = c5()?;
        let Some(w) = exists_hom(&g, &frac, cfg).witness().cloned() else {
            return Ok(false);
        };
        let rep = families::representation_from_fractional(&k5, 2, &w)?;
        families::verify_rank_representation(&rep, &g, &k5)?;
        Ok(rep.r == 2)
    })());

    let opts = BoundOptions {
        search: *cfg,
        ..BoundOptions::default()
    };
    for n in 1..=4 {
        t.close(&format!("shannon upper bound of k{n}"), n as f64, 1e-6, (|| {
            let (b, _) = capacity::shannon_upper(&k(n)?, &opts)?;
            Ok((b.value, b.value))
        })());
    }
    t.exact("shannon upper bound of kg(6,2) is at most 3 + 1e-4", true, (|| {
        Ok(capacity::shannon_upper(&kg62()?, &opts)?.0.value <= 3.0 + 1e-4)
    })());
    t.close("rate(c5 -> k2) upper bound", 5f64.sqrt().log2(), 1e-3, (|| {
        let r = capacity::rate_bounds(&c5()?, &k(2)?, 2, 2, &opts)?;
        Ok((r.upper.value, r.upper.value))
    })());

    CheckReport {
        suite: "paper".into(),
        items: t.items,
    }
}
