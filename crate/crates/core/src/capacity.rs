//! Two-sided bounds on the Shannon capacity `Θ(Ḡ)` and on rates `R(G -> H)`.
//!
//! Lower bounds come from explicit objects (cliques in disjunctive powers,
//! homomorphisms between powers). Upper bounds minimize over the implemented
//! semiring-homomorphic invariants, always using the side of each computation
//! that is certified to lie above the true value.

use rayon::prelude::*;
use serde::Serialize;

use crate::clique;
use crate::error::{Error, Result};
use crate::families::{f_number_fractional, Family, FamilySpec};
use crate::fractional::{self, MIS_MAX_VERTICES};
use crate::graph::Graph;
use crate::hom::{exists_hom, HomResult, SearchConfig};
use crate::ops;
use crate::theta::{self, THETA_MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub value: f64,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInterval {
    pub lower: Bound,
    pub upper: Bound,
}

impl BoundInterval {
    pub fn width(&self) -> f64 {
        self.upper.value - self.lower.value
    }

    pub fn is_consistent(&self) -> bool {
        self.lower.value <= self.upper.value + 1e-6
    }
}

/// One invariant evaluated for an upper bound; `value` is `None` when it was
/// skipped (size caps, budget) with the reason in `detail`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub name: String,
    pub value: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    pub lower: Bound,
    pub upper: Bound,
    pub candidates: Vec<Candidate>,
}

impl CapacityReport {
    pub fn interval(&self) -> BoundInterval {
        BoundInterval {
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundOptions {
    /// Largest disjunctive power used for clique lower bounds.
    pub power_max: usize,
    pub gap_tol: f64,
    /// Haemers families used as upper-bound invariants.
    pub haemers_fields: Vec<usize>,
    /// Search grid for the fractional Haemers numbers.
    pub family_n_max: usize,
    pub family_d_max: usize,
    pub search: SearchConfig,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            power_max: 2,
            gap_tol: theta::DEFAULT_GAP_TOL,
            haemers_fields: vec![2],
            family_n_max: 4,
            family_d_max: 2,
            search: SearchConfig::default(),
        }
    }
}

/// `max_k ω(G^{*k})^{1/k}` for `1 <= k <= power_max`.
pub fn shannon_lower(g: &Graph, power_max: usize) -> Result<Bound> {
    if power_max == 0 {
        return Err(Error::InvalidParameter("power_max must be at least 1".into()));
    }
    let mut best = Bound {
        value: 0.0,
        certificate: "empty graph".into(),
    };
    if g.is_empty() {
        return Ok(best);
    }
    for k in 1..=power_max {
        let p = ops::disjunctive_power(g, k)?;
        let cl = clique::max_clique(&p);
        let value = (cl.len() as f64).powf(1.0 / k as f64);
        if value > best.value + 1e-12 {
            best = Bound {
                value,
                certificate: format!("omega(G^*{k})^(1/{k}) = {}^(1/{k}), clique {}", cl.len(), cl),
            };
        }
    }
    Ok(best)
}

/// An invariant evaluated on one graph, with bounds on both sides.
#[derive(Debug, Clone)]
struct Evaluation {
    lower: f64,
    upper: f64,
    detail: String,
}

fn evaluate_chif(g: &Graph) -> std::result::Result<Evaluation, String> {
    if g.vertex_count() > MIS_MAX_VERTICES {
        return Err(format!("more than {MIS_MAX_VERTICES} vertices"));
    }
    let v = fractional::fractional_chromatic(g).map_err(|e| e.to_string())?;
    Ok(Evaluation {
        lower: v.to_f64(),
        upper: v.to_f64(),
        detail: format!("exact LP value {v}"),
    })
}

fn evaluate_theta_bar(g: &Graph, gap_tol: f64) -> std::result::Result<Evaluation, String> {
    if g.vertex_count() > THETA_MAX_VERTICES {
        return Err(format!("more than {THETA_MAX_VERTICES} vertices"));
    }
    let r = theta::theta_bar(g, gap_tol).map_err(|e| e.to_string())?;
    Ok(Evaluation {
        lower: r.lower,
        upper: r.upper,
        detail: format!(
            "SDP enclosure [{:.9}, {:.9}] after {} iterations{}",
            r.lower,
            r.upper,
            r.iterations,
            if r.converged { "" } else { " (not converged)" }
        ),
    })
}

fn evaluate_haemers(g: &Graph, q: usize, opts: &BoundOptions) -> std::result::Result<Evaluation, String> {
    let family = Family::new(FamilySpec::Haemers(q));
    let r = f_number_fractional(&family, g, opts.family_n_max, opts.family_d_max, &opts.search)
        .map_err(|e| e.to_string())?;
    let up = r.upper.ok_or_else(|| {
        format!(
            "no homomorphism on the grid n <= {}, d <= {}",
            opts.family_n_max, opts.family_d_max
        )
    })?;
    // ω(F_n) = n makes ω(G) a lower bound for the fractional F-number
    Ok(Evaluation {
        lower: r.lower as f64,
        upper: up.value.to_f64(),
        detail: format!(
            "G -> F_{}/{} gives {}; omega(G) = {}{}",
            up.n,
            up.d,
            up.value,
            r.lower,
            if r.inconclusive.is_empty() {
                String::new()
            } else {
                format!("; {} grid points inconclusive", r.inconclusive.len())
            }
        ),
    })
}

/// Evaluates the configured semiring-homomorphic invariants concurrently;
/// results are returned in a fixed order.
fn evaluate_invariants(g: &Graph, opts: &BoundOptions) -> Vec<(String, std::result::Result<Evaluation, String>)> {
    let mut jobs: Vec<String> = vec!["chif".into(), "theta-bar".into()];
    jobs.extend(opts.haemers_fields.iter().map(|q| format!("haemers:{q}")));
    jobs.par_iter()
        .map(|name| {
            let r = match name.as_str() {
                "chif" => evaluate_chif(g),
                "theta-bar" => evaluate_theta_bar(g, opts.gap_tol),
                other => {
                    let q = other["haemers:".len()..].parse().expect("job names are generated above");
                    evaluate_haemers(g, q, opts)
                }
            };
            (name.clone(), r)
        })
        .collect()
}

/// Minimum over ties broken by name, so the winner does not depend on
/// scheduling.
fn pick_min(values: impl Iterator<Item = (String, f64, String)>) -> Option<(String, f64, String)> {
    values.fold(None, |best, cur| match best {
        None => Some(cur),
        Some(b) => {
            if cur.1 < b.1 || (cur.1 == b.1 && cur.0 < b.0) {
                Some(cur)
            } else {
                Some(b)
            }
        }
    })
}

/// Upper bound `min_η η(G)` over the implemented invariants, plus the
/// number of colours in a greedy colouring (an upper bound on `χ_f`).
pub fn shannon_upper(g: &Graph, opts: &BoundOptions) -> Result<(Bound, Vec<Candidate>)> {
    if g.is_empty() {
        return Err(Error::DegenerateInput("the empty graph has no capacity bounds".into()));
    }
    let mut candidates: Vec<Candidate> = evaluate_invariants(g, opts)
        .into_iter()
        .map(|(name, r)| match r {
            Ok(e) => Candidate {
                name,
                value: Some(e.upper),
                detail: e.detail,
            },
            Err(why) => Candidate {
                name,
                value: None,
                detail: format!("skipped: {why}"),
            },
        })
        .collect();
    let colours = clique::dsatur_colouring(g).iter().max().map_or(0, |&c| c + 1);
    candidates.push(Candidate {
        name: "colouring".into(),
        value: Some(colours as f64),
        detail: format!("greedy proper colouring with {colours} colours"),
    });
    let (name, value, detail) = pick_min(
        candidates
            .iter()
            .filter_map(|c| c.value.map(|v| (c.name.clone(), v, c.detail.clone()))),
    )
    .expect("the colouring candidate is always present");
    Ok((
        Bound {
            value,
            certificate: format!("{name}: {detail}"),
        },
        candidates,
    ))
}

/// Lower and upper bound on `Θ(Ḡ)` for input `G`.
pub fn shannon_bounds(g: &Graph, opts: &BoundOptions) -> Result<CapacityReport> {
    let lower = shannon_lower(g, opts.power_max)?;
    let (upper, candidates) = shannon_upper(g, opts)?;
    Ok(CapacityReport {
        lower,
        upper,
        candidates,
    })
}

/// Bounds on `R(G -> H) = sup { m/n : H^{*m} -> G^{*n} }`.
///
/// The lower bound searches `1 <= m <= m_max`, `1 <= n <= n_max`. The upper
/// bound is `min_η log η(G) / log η(H)` over invariants with a certified
/// `η(H) > 1`, taking the upper side for `G` and the lower side for `H`.
pub fn rate_bounds(g: &Graph, h: &Graph, m_max: usize, n_max: usize, opts: &BoundOptions) -> Result<CapacityReport> {
    if g.edge_count() == 0 {
        return Err(Error::DegenerateInput("G must have at least one edge".into()));
    }
    if h.is_empty() {
        return Err(Error::DegenerateInput("H must have at least one vertex".into()));
    }
    if m_max == 0 || n_max == 0 {
        return Err(Error::InvalidParameter("rate grid bounds must be at least 1".into()));
    }

    let mut lower = Bound {
        value: 0.0,
        certificate: "H^*0 = K1 -> G".into(),
    };
    for n in 1..=n_max {
        let gp = match ops::disjunctive_power(g, n) {
            Ok(p) => p,
            Err(Error::SizeCap { .. }) => break,
            Err(e) => return Err(e),
        };
        // H^{*m} -> H^{*(m+1)}, so the feasible m form an initial segment
        for m in 1..=m_max {
            let hp = match ops::disjunctive_power(h, m) {
                Ok(p) => p,
                Err(Error::SizeCap { .. }) => break,
                Err(e) => return Err(e),
            };
            match exists_hom(&hp, &gp, &opts.search) {
                HomResult::Yes(_) => {
                    let ratio = m as f64 / n as f64;
                    if ratio > lower.value {
                        lower = Bound {
                            value: ratio,
                            certificate: format!("H^*{m} -> G^*{n}"),
                        };
                    }
                }
                HomResult::No | HomResult::BudgetExceeded => break,
            }
        }
    }

    let on_g = evaluate_invariants(g, opts);
    let on_h = evaluate_invariants(h, opts);
    let mut candidates = Vec::new();
    for ((name, eg), (_, eh)) in on_g.into_iter().zip(on_h) {
        let c = match (eg, eh) {
            (Ok(eg), Ok(eh)) if eh.lower > 1.0 + 1e-12 => Candidate {
                value: Some(eg.upper.max(1.0).ln() / eh.lower.ln()),
                detail: format!("log {} / log {} (G: {}; H: {})", eg.upper, eh.lower, eg.detail, eh.detail),
                name,
            },
            (Ok(_), Ok(eh)) => Candidate {
                value: None,
                detail: format!("skipped: certified value on H is {} <= 1", eh.lower),
                name,
            },
            (Err(why), _) | (_, Err(why)) => Candidate {
                value: None,
                detail: format!("skipped: {why}"),
                name,
            },
        };
        candidates.push(c);
    }
    let upper = pick_min(
        candidates
            .iter()
            .filter_map(|c| c.value.map(|v| (c.name.clone(), v, c.detail.clone()))),
    )
    .map(|(name, value, detail)| Bound {
        value,
        certificate: format!("{name}: {detail}"),
    })
    .unwrap_or(Bound {
        value: f64::INFINITY,
        certificate: "no invariant applicable".into(),
    });
    Ok(CapacityReport {
        lower,
        upper,
        candidates,
    })
}
