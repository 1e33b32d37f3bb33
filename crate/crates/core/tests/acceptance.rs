//! Acceptance criteria. Run with `--nocapture` to see one line per criterion.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graph_semiring::capacity::{shannon_bounds, BoundOptions};
use graph_semiring::checks::{check_adjunction, cut_vertex_example, random_corpus, random_graph};
use graph_semiring::clique::omega;
use graph_semiring::families::{check_linear_like, check_semiring_family, f_number, minrank, Family, FamilySpec};
use graph_semiring::fractional::fractional_chromatic;
use graph_semiring::hom::{chi, exists_hom, frachom, FracHomResult, HomResult, SearchConfig};
use graph_semiring::ops::{blowup, disjunctive, fractionalize, join, lexicographic, rank};
use graph_semiring::theta::theta_bar;
use graph_semiring::{Graph, Rational};

use common::connected_graphs;

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn odd_cycle_theta(n: usize) -> f64 {
    let c = (std::f64::consts::PI / n as f64).cos();
    n as f64 * c / (1.0 + c)
}

fn c5() -> Graph {
    Graph::cycle(5).unwrap()
}

fn kg62() -> Graph {
    Graph::kneser(6, 2).unwrap()
}

fn chromatic_kneser() -> Outcome {
    let x = chi(&kg62(), &cfg()).map_err(|e| e.to_string())?;
    ensure(x == 4, format!("chi(KG(6,2)) = {x}"))
}

fn chromatic_blowup_and_join() -> Outcome {
    let a = chi(&blowup(&c5(), 2).unwrap(), &cfg()).map_err(|e| e.to_string())?;
    let b = chi(&join(&c5(), &c5()).unwrap(), &cfg()).map_err(|e| e.to_string())?;
    ensure(a == 5 && b == 6, format!("chi(blowup(C5,2)) = {a}, chi(C5+C5) = {b}"))
}

fn fractionalized_complete_is_kneser() -> Outcome {
    let f = fractionalize(&Graph::complete(6).unwrap(), 2).unwrap();
    ensure(f == kg62(), format!("frac(K6,2) has n={} m={}", f.vertex_count(), f.edge_count()))
}

fn fractional_chromatic_c5() -> Outcome {
    let x = fractional_chromatic(&c5()).map_err(|e| e.to_string())?;
    ensure(x == Rational::new(5, 2), format!("chi_f(C5) = {x}"))
}

fn theta_kneser() -> Outcome {
    let t = theta_bar(&kg62(), 1e-6).map_err(|e| e.to_string())?;
    ensure(
        (t.lower - 3.0).abs() <= 1e-4 && (t.upper - 3.0).abs() <= 1e-4,
        format!("theta_bar(KG(6,2)) in [{:.7}, {:.7}]", t.lower, t.upper),
    )
}

fn theta_c5() -> Outcome {
    let t = theta_bar(&c5(), 1e-7).map_err(|e| e.to_string())?;
    let s5 = 5f64.sqrt();
    let oracle = odd_cycle_theta(5);
    let ok = [t.lower, t.upper].iter().all(|v| (v - s5).abs() <= 1e-5 && (v - oracle).abs() <= 1e-5);
    ensure(ok, format!("theta_bar(C5) in [{:.8}, {:.8}], oracle {oracle:.8}", t.lower, t.upper))
}

fn theta_blowup_scaling() -> Outcome {
    let a = theta_bar(&blowup(&c5(), 2).unwrap(), 1e-6).map_err(|e| e.to_string())?;
    let b = theta_bar(&c5(), 1e-7).map_err(|e| e.to_string())?;
    let diff = (a.midpoint() - 2.0 * b.midpoint()).abs();
    // Certified worst case from both intervals.
    let worst = (a.upper - 2.0 * b.lower).max(2.0 * b.upper - a.lower);
    ensure(diff <= 1e-3 && worst <= 1e-3, format!("|diff| = {diff:.2e}, certified <= {worst:.2e}"))
}

fn adjunction() -> Outcome {
    let r = check_adjunction(100, 7, 6, 3, &cfg()).map_err(|e| e.to_string())?;
    ensure(
        r.discrepancies == 0 && r.skipped == 0,
        format!("{} trials, {} discrepancies, {} undecided", r.trials.len(), r.discrepancies, r.skipped),
    )
}

fn semiring_families() -> Outcome {
    let a = check_semiring_family(&Family::new(FamilySpec::Complete), 4, &cfg());
    let b = check_semiring_family(&Family::new(FamilySpec::Haemers(2)), 2, &cfg());
    ensure(
        a.passed() && b.passed(),
        format!("complete: {} checks ok={}, haemers:2: {} checks ok={}", a.checks.len(), a.passed(), b.checks.len(), b.passed()),
    )
}

fn linear_like() -> Outcome {
    let complete = Family::new(FamilySpec::Complete);
    let mut flats = 0;
    for n in 0..=4 {
        let r = check_linear_like(&complete, n, 100_000, &cfg()).map_err(|e| e.to_string())?;
        if !r.passed() || r.omega != n {
            return Err(format!("complete n={n}: omega={} passed={}", r.omega, r.passed()));
        }
        flats += r.flats.len();
    }
    let r = check_linear_like(&Family::new(FamilySpec::Haemers(2)), 2, 100_000, &cfg()).map_err(|e| e.to_string())?;
    ensure(
        r.passed() && r.omega == 2,
        format!("complete n<=4: {flats} flats ok; haemers:2 n=2: omega={}, {} flats, ok={}", r.omega, r.flats.len(), r.passed()),
    )
}

fn minrank_oracle() -> Outcome {
    let fam = Family::new(FamilySpec::Haemers(2));
    let corpus = connected_graphs(5);
    let mut mismatches = 0;
    for g in &corpus {
        let a = f_number(&fam, g, 3, &cfg()).map_err(|e| e.to_string())?;
        let b = minrank(g, 2, 3).map_err(|e| e.to_string())?;
        if a.value() != b.value() {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, format!("{} connected graphs, {mismatches} mismatches", corpus.len()))
}

fn shannon_c5() -> Outcome {
    let w = omega(&disjunctive(&c5(), &c5()).unwrap());
    let r = shannon_bounds(&c5(), &BoundOptions::default()).map_err(|e| e.to_string())?;
    let s5 = 5f64.sqrt();
    let (lo, hi) = (r.lower.value, r.upper.value);
    ensure(
        w == 5 && hi - lo <= 1e-3 && (lo - s5).abs() <= 1e-3 && (hi - s5).abs() <= 1e-3,
        format!("omega(C5*C5) = {w}, interval [{lo:.7}, {hi:.7}]"),
    )
}

fn fractional_separation() -> Outcome {
    let k3 = Graph::complete(3).unwrap();
    let plain = exists_hom(&kg62(), &k3, &cfg());
    let frac = frachom(&kg62(), &k3, 2, &cfg()).map_err(|e| e.to_string())?;
    ensure(
        matches!(plain, HomResult::No) && matches!(frac, FracHomResult::Yes { d: 2, .. }),
        format!("KG(6,2)->K3: {:?}, frachom: {}", plain.answer(), match frac {
            FracHomResult::Yes { d, .. } => format!("yes at d={d}"),
            FracHomResult::No { d_max } => format!("no up to d={d_max}"),
            FracHomResult::BudgetExceeded => "budget exceeded".into(),
        }),
    )
}

fn chif_semiring_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut bad = Vec::new();
    for i in 0..50 {
        let ng = rng.gen_range(1..=7);
        let nh = rng.gen_range(1..=(25 / ng).min(7));
        let pg = rng.gen_range(0.2..=0.8);
        let ph = rng.gen_range(0.2..=0.8);
        let g = random_graph(&mut rng, ng, pg);
        let h = random_graph(&mut rng, nh, ph);
        let f = |x: &Graph| fractional_chromatic(x).map_err(|e| e.to_string());
        let (a, b) = (f(&g)?, f(&h)?);
        let sum = f(&join(&g, &h).unwrap())?;
        let dis = f(&disjunctive(&g, &h).unwrap())?;
        let lex = f(&lexicographic(&g, &h).unwrap())?;
        if sum != &a + &b || dis != &a * &b || lex != &a * &b {
            bad.push(i);
        }
    }
    ensure(bad.is_empty(), format!("50 pairs, failing pairs {bad:?}"))
}

fn sandwich() -> Outcome {
    let mut bad = Vec::new();
    for (i, g) in random_corpus(15, 50, 1, 12).iter().enumerate() {
        let w = omega(g) as f64;
        let t = theta_bar(g, 1e-6).map_err(|e| e.to_string())?;
        let xf = fractional_chromatic(g).map_err(|e| e.to_string())?;
        let x = chi(g, &cfg()).map_err(|e| e.to_string())?;
        let ok = w <= t.lower + 1e-4 && t.upper <= xf.to_f64() + 1e-4 && xf <= Rational::from(x);
        if !ok {
            bad.push(i);
        }
    }
    ensure(bad.is_empty(), format!("50 graphs, failing {bad:?}"))
}

fn rank_anomaly() -> Outcome {
    let (g, s) = cut_vertex_example();
    let r = rank(&g, &s);
    ensure(r == 3 && s.len() == 2, format!("rank(S) = {r}, |S| = {}", s.len()))
}

const MIN: u64 = 60;

fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs: u64, run| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "chromatic number of KG(6,2)", 5, chromatic_kneser),
        c(2, "blowup and join chromatic numbers", 1, chromatic_blowup_and_join),
        c(3, "fractionalized K6 is KG(6,2)", 1, fractionalized_complete_is_kneser),
        c(4, "fractional chromatic number of C5", 1, fractional_chromatic_c5),
        c(5, "theta_bar of KG(6,2)", 30, theta_kneser),
        c(6, "theta_bar of C5", 10, theta_c5),
        c(7, "theta_bar blowup scaling", 60, theta_blowup_scaling),
        c(8, "adjunction suite", 120, adjunction),
        c(9, "semiring families", 120, semiring_families),
        c(10, "linear-like families", 300, linear_like),
        c(11, "minrank oracle equivalence", 10 * MIN, minrank_oracle),
        c(12, "Shannon interval of C5", 60, shannon_c5),
        c(13, "fractional homomorphism separation", 60, fractional_separation),
        c(14, "chi_f additive and multiplicative", 10 * MIN, chif_semiring_homomorphism),
        c(15, "sandwich suite", 10 * MIN, sandwich),
        c(16, "rank anomaly", 1, rank_anomaly),
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let (ok, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        let timing = format!("{:.3}s / {}s", elapsed.as_secs_f64(), c.limit.as_secs());
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} {}: {detail} ({timing}{})", c.id, c.name, if in_time { "" } else { ", over time" });
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
