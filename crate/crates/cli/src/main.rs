//! `gsr`: evaluate graph expressions, compute invariants, run verification
//! suites and report capacity and rate bounds.
//!
//! Exit codes: 0 success, 1 failed check, 2 invalid input (parse, evaluation
//! or parameter error), 3 size cap exceeded, 4 search budget exhausted,
//! 5 degenerate input.

mod format;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graph_semiring::capacity::{self, BoundOptions};
use graph_semiring::checks::{self, CheckReport};
use graph_semiring::families::{self, CheckStatus, Family, FamilySpec, FNumber, Minrank};
use graph_semiring::hom::{self, SearchConfig, DEFAULT_NODE_BUDGET};
use graph_semiring::{clique, fractional, theta, Error, Graph};
use serde_json::{json, Value};

use format::{sig7, Output};

#[derive(Parser, Debug)]
#[command(name = "gsr", version, about = "Graph semiring toolkit")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include witnesses and certificates.
    #[arg(long, global = true)]
    witness: bool,
    /// Node budget per homomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Largest denominator d for fractional searches.
    #[arg(long, global = true)]
    d_max: Option<usize>,
    /// Largest family index n (or rank for minrank, power for check suites).
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Largest disjunctive power used by shannon and rate.
    #[arg(long, global = true, default_value_t = 2)]
    power_max: usize,
    /// Gap tolerance for the theta SDP.
    #[arg(long, global = true, default_value_t = theta::DEFAULT_GAP_TOL)]
    gap_tol: f64,
    /// Worker threads; more than one enables parallel search.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Force sequential search with a fixed branching order.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Number of random trials for randomized suites.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Family index for linear-like checks.
    #[arg(long, global = true)]
    n: Option<usize>,
}

impl GlobalOpts {
    fn search(&self) -> SearchConfig {
        let parallel = !self.deterministic && self.threads.is_some_and(|t| t > 1);
        SearchConfig {
            node_budget: self.budget.max(1),
            deterministic: !parallel,
            parallel,
        }
    }

    fn bounds(&self) -> BoundOptions {
        BoundOptions {
            power_max: self.power_max,
            gap_tol: self.gap_tol,
            family_n_max: self.n_max.unwrap_or(4),
            family_d_max: self.d_max.unwrap_or(2),
            search: self.search(),
            ..BoundOptions::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and summarize the graph.
    Eval {
        expr: String,
        /// Also compute the clique number.
        #[arg(long)]
        omega: bool,
        /// Also compute the chromatic number.
        #[arg(long)]
        chi: bool,
        /// Print the edge list.
        #[arg(long)]
        edges: bool,
    },
    /// Compute one invariant: omega, chi, alpha, chif, theta-bar,
    /// fnum:SPEC, fnumfrac:SPEC or minrank:Q.
    Invariant { name: String, expr: String },
    /// Run a suite: adjunction, semiring-family:SPEC, linear-like:SPEC or paper.
    Check { suite: String },
    /// Bounds on the Shannon capacity of the complement of G.
    ///
    /// The input G is the confusability complement: the capacity of the
    /// 7-cycle is `shannon 'compl(c7)'`.
    Shannon { expr: String },
    /// Bounds on the rate R(G -> H).
    Rate { g: String, h: String },
}

/// Failure categories mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    CheckFailed,
    Inconclusive,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeCap { .. } | Error::FlatCountExceeded(_) => 3,
        Error::BudgetExceeded(_) => 4,
        Error::DegenerateInput(_) => 5,
        _ => 2,
    }
}

fn parse_graph(text: &str) -> Result<Graph, Error> {
    graph_semiring::eval_str(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.opts.threads {
        // the global pool can only be set once; ignore a second attempt
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let mut out = Output::new(cli.opts.json);
    let result = run(&cli, &mut out);
    match result {
        Ok(()) => {
            out.finish();
            ExitCode::SUCCESS
        }
        Err(Failure::CheckFailed) => {
            out.finish();
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive) => {
            out.finish();
            ExitCode::from(4)
        }
        Err(Failure::Lib(e)) => {
            let code = exit_code(&e);
            if cli.opts.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"schema": 1, "error": e.to_string(), "exit": code}))
                        .expect("static json")
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Eval { expr, omega, chi, edges } => cmd_eval(o, out, expr, *omega, *chi, *edges),
        Command::Invariant { name, expr } => cmd_invariant(o, out, name, expr),
        Command::Check { suite } => cmd_check(o, out, suite),
        Command::Shannon { expr } => cmd_shannon(o, out, expr),
        Command::Rate { g, h } => cmd_rate(o, out, g, h),
    }
}

fn cmd_eval(o: &GlobalOpts, out: &mut Output, expr: &str, omega: bool, chi: bool, edges: bool) -> Result<(), Failure> {
    let g = parse_graph(expr)?;
    out.set("command", json!("eval"));
    out.set("expr", json!(expr));
    out.field("n", g.vertex_count());
    out.field("m", g.edge_count());
    out.field("min_degree", g.min_degree());
    out.field("max_degree", g.max_degree());
    if omega {
        out.field("omega", clique::omega(&g));
    }
    if chi {
        out.field("chi", hom::chi(&g, &o.search())?);
    }
    if edges {
        let list: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
        out.set("edges", json!(list));
        out.line(g.to_edge_list().trim_end());
    }
    Ok(())
}

fn parse_family(s: &str) -> Result<FamilySpec, Error> {
    s.parse()
}

fn cmd_invariant(o: &GlobalOpts, out: &mut Output, name: &str, expr: &str) -> Result<(), Failure> {
    let g = parse_graph(expr)?;
    let cfg = o.search();
    out.set("command", json!("invariant"));
    out.set("invariant", json!(name));
    out.set("expr", json!(expr));
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    match (kind, arg) {
        ("omega", None) => {
            let c = clique::max_clique(&g);
            out.value(json!(c.len()), c.len().to_string());
            if o.witness {
                out.witness(json!(c.to_vec()), format!("clique {c}"));
            }
        }
        ("alpha", None) => {
            let s = clique::max_clique(&g.complement());
            out.value(json!(s.len()), s.len().to_string());
            if o.witness {
                out.witness(json!(s.to_vec()), format!("independent set {s}"));
            }
        }
        ("chi", None) => {
            let c = hom::chromatic_colouring(&g, &cfg)?;
            out.value(json!(c.colours), c.colours.to_string());
            if o.witness {
                out.witness(json!(c.assignment), format!("colouring {:?}", c.assignment));
            }
        }
        ("chif", None) => {
            let fc = fractional::fractional_colouring(&g)?;
            out.value(serde_json::to_value(&fc.value).expect("rational"), fc.value.to_string());
            if o.witness {
                let cols: Vec<Value> = fc
                    .instance
                    .columns
                    .iter()
                    .zip(&fc.weights)
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(s, w)| json!({"set": s.to_vec(), "weight": w}))
                    .collect();
                let text: Vec<String> = fc
                    .instance
                    .columns
                    .iter()
                    .zip(&fc.weights)
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(s, w)| format!("{w}·{s}"))
                    .collect();
                let dual: Vec<String> = fc.clique_weights.iter().map(|w| w.to_string()).collect();
                out.witness(
                    json!({"colouring": cols, "clique_weights": fc.clique_weights}),
                    format!("colouring {}; clique weights [{}]", text.join(" + "), dual.join(", ")),
                );
            }
        }
        ("theta-bar", None) => {
            let r = theta::theta_bar(&g, o.gap_tol)?;
            out.value(
                json!({"lower": r.lower, "upper": r.upper, "converged": r.converged, "iterations": r.iterations}),
                format!(
                    "{} ± {:.1e}{}",
                    sig7(r.midpoint()),
                    r.gap() / 2.0,
                    if r.converged { "" } else { " (not converged)" }
                ),
            );
            if o.witness {
                out.line(&format!("enclosure [{}, {}] after {} iterations", sig7(r.lower), sig7(r.upper), r.iterations));
            }
        }
        ("fnum", Some(spec)) => {
            let family = Family::new(parse_family(spec)?);
            let n_max = o.n_max.unwrap_or(4);
            match families::f_number(&family, &g, n_max, &cfg)? {
                FNumber::Value { n, witness } => {
                    out.value(json!(n), n.to_string());
                    if o.witness {
                        out.witness(json!(witness.map), format!("map into F_{n}: {:?}", witness.map));
                    }
                }
                FNumber::ExceedsBound => out.value(json!({"exceeds": n_max}), format!("> {n_max}")),
            }
        }
        ("fnumfrac", Some(spec)) => {
            let family = Family::new(parse_family(spec)?);
            let (n_max, d_max) = (o.n_max.unwrap_or(6), o.d_max.unwrap_or(2));
            let r = families::f_number_fractional(&family, &g, n_max, d_max, &cfg)?;
            match &r.upper {
                Some(w) => out.value(
                    json!({"upper": w.value, "n": w.n, "d": w.d, "lower": r.lower}),
                    format!("<= {} (F_{}/{}), >= {}", w.value, w.n, w.d, r.lower),
                ),
                None => out.value(
                    json!({"upper": null, "lower": r.lower}),
                    format!("no bound on n <= {n_max}, d <= {d_max}; >= {}", r.lower),
                ),
            }
            if let (true, Some(w)) = (o.witness, &r.upper) {
                out.witness(json!(w.witness.map), format!("map into F_{}/{}: {:?}", w.n, w.d, w.witness.map));
            }
            if !r.inconclusive.is_empty() {
                let pts: Vec<Value> = r
                    .inconclusive
                    .iter()
                    .map(|(n, d, why)| json!({"n": n, "d": d, "reason": why}))
                    .collect();
                out.set("inconclusive", json!(pts));
                for (n, d, why) in &r.inconclusive {
                    out.line(&format!("inconclusive at n={n}, d={d}: {why}"));
                }
            }
        }
        ("minrank", Some(q)) => {
            let q: usize = q
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("field order {q:?} is not a number")))?;
            let r_max = o.n_max.unwrap_or(families::MINRANK_MAX_RANK);
            match families::minrank(&g, q, r_max)? {
                Minrank::Value { r, x, y } => {
                    out.value(json!(r), r.to_string());
                    if o.witness {
                        out.witness(json!({"x": x, "y": y}), format!("x = {x:?}, y = {y:?}"));
                    }
                }
                Minrank::ExceedsBound => out.value(json!({"exceeds": r_max}), format!("> {r_max}")),
            }
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown invariant {name:?}; expected omega, chi, alpha, chif, theta-bar, fnum:SPEC, fnumfrac:SPEC or minrank:Q"
            ))
            .into())
        }
    }
    Ok(())
}

fn report(out: &mut Output, r: &CheckReport) -> Result<(), Failure> {
    out.set("suite", json!(r.suite));
    out.set("items", serde_json::to_value(&r.items).expect("report"));
    out.set("passed", json!(r.passed()));
    for item in &r.items {
        let tag = match item.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive(_) => "SKIP",
        };
        out.line(&format!(
            "{tag} {}: expected {}, computed {}",
            item.name, item.expected, item.computed
        ));
    }
    let failed = r.items.iter().filter(|i| i.status == CheckStatus::Fail).count();
    let skipped = r.items.iter().filter(|i| matches!(i.status, CheckStatus::Inconclusive(_))).count();
    out.line(&format!(
        "{}: {} passed, {failed} failed, {skipped} inconclusive",
        r.suite,
        r.items.len() - failed - skipped
    ));
    if failed > 0 {
        Err(Failure::CheckFailed)
    } else if skipped > 0 {
        Err(Failure::Inconclusive)
    } else {
        Ok(())
    }
}

fn cmd_check(o: &GlobalOpts, out: &mut Output, suite: &str) -> Result<(), Failure> {
    let cfg = o.search();
    out.set("command", json!("check"));
    let (kind, arg) = match suite.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (suite, None),
    };
    let r = match (kind, arg) {
        ("adjunction", None) => checks::adjunction_suite(o.trials, o.seed, &cfg)?,
        ("semiring-family", Some(spec)) => {
            let spec = parse_family(spec)?;
            let default = if spec == FamilySpec::Complete { 4 } else { 2 };
            checks::semiring_family_suite(spec, o.n_max.unwrap_or(default), &cfg)
        }
        ("linear-like", Some(spec)) => {
            let spec = parse_family(spec)?;
            checks::linear_like_suite(spec, o.n.unwrap_or(2), 100_000, &cfg)?
        }
        ("paper", None) => checks::reference_suite(&cfg),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite {suite:?}; expected adjunction, semiring-family:SPEC, linear-like:SPEC or paper"
            ))
            .into())
        }
    };
    report(out, &r)
}

fn interval_lines(out: &mut Output, r: &capacity::CapacityReport, witness: bool) {
    out.set("lower", serde_json::to_value(&r.lower).expect("bound"));
    out.set("upper", serde_json::to_value(&r.upper).expect("bound"));
    out.set("candidates", serde_json::to_value(&r.candidates).expect("candidates"));
    out.line(&format!("[{}, {}]", sig7(r.lower.value), sig7(r.upper.value)));
    out.line(&format!("lower: {}", r.lower.certificate));
    out.line(&format!("upper: {}", r.upper.certificate));
    if witness {
        for c in &r.candidates {
            let v = c.value.map_or_else(|| "-".to_string(), sig7);
            out.line(&format!("  {} = {v} ({})", c.name, c.detail));
        }
    }
}

fn cmd_shannon(o: &GlobalOpts, out: &mut Output, expr: &str) -> Result<(), Failure> {
    let g = parse_graph(expr)?;
    let r = capacity::shannon_bounds(&g, &o.bounds())?;
    out.set("command", json!("shannon"));
    out.set("expr", json!(expr));
    interval_lines(out, &r, o.witness);
    Ok(())
}

fn cmd_rate(o: &GlobalOpts, out: &mut Output, g: &str, h: &str) -> Result<(), Failure> {
    let (gg, hh) = (parse_graph(g)?, parse_graph(h)?);
    let r = capacity::rate_bounds(&gg, &hh, o.power_max, o.power_max, &o.bounds())?;
    out.set("command", json!("rate"));
    out.set("g", json!(g));
    out.set("h", json!(h));
    interval_lines(out, &r, o.witness);
    Ok(())
}
