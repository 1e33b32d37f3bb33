//! Lovász number by ADMM on the SDP
//!
//! ```text
//! θ(G) = max <J, X>  s.t.  tr X = 1,  X_uv = 0 for uv ∈ E(G),  X ⪰ 0.
//! ```
//!
//! The iteration alternates between the affine constraint set and the PSD
//! cone with a scaled dual update. Each reported bound is certified from the
//! current iterate independently of convergence:
//!
//! - lower: the PSD iterate with edge entries zeroed and its diagonal lifted
//!   by `max(0, -λ_min)` is primal feasible; its objective over its trace is
//!   a lower bound.
//! - upper: any symmetric `A` with `A_ij = 1` on the diagonal and on
//!   non-edges has `λ_max(A) >= θ(G)`. Edge entries are read off the dual
//!   iterate.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const THETA_MAX_VERTICES: usize = 64;
pub const DEFAULT_GAP_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 50_000;

const CHECK_EVERY: usize = 10;
const RHO_UPDATE_EVERY: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaResult {
    /// Objective of a primal feasible point.
    pub lower: f64,
    /// Largest eigenvalue of a dual feasible matrix.
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl ThetaResult {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaOptions {
    pub gap_tol: f64,
    pub max_iterations: usize,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions {
            gap_tol: DEFAULT_GAP_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

impl ThetaOptions {
    pub fn with_gap(gap_tol: f64) -> Self {
        ThetaOptions {
            gap_tol,
            ..Self::default()
        }
    }
}

/// `θ(G)` with the default iteration cap.
///
/// If the gap does not close the result is still returned with
/// `converged = false`; [`lovasz_theta_strict`] turns that into an error.
pub fn lovasz_theta(g: &Graph, gap_tol: f64) -> Result<ThetaResult> {
    lovasz_theta_with(g, &ThetaOptions::with_gap(gap_tol))
}

/// `θ` of the complement, the semiring-homomorphic invariant.
pub fn theta_bar(g: &Graph, gap_tol: f64) -> Result<ThetaResult> {
    lovasz_theta(&g.complement(), gap_tol)
}

pub fn lovasz_theta_strict(g: &Graph, gap_tol: f64) -> Result<ThetaResult> {
    let r = lovasz_theta(g, gap_tol)?;
    if r.converged {
        Ok(r)
    } else {
        Err(Error::InvalidParameter(format!(
            "theta did not converge after {} iterations (gap {:.3e})",
            r.iterations,
            r.gap()
        )))
    }
}

fn lambda_max(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
}

fn project_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let mut vals = eig.eigenvalues.clone();
    for v in vals.iter_mut() {
        *v = v.max(0.0);
    }
    let q = &eig.eigenvectors;
    q * DMatrix::from_diagonal(&vals) * q.transpose()
}

struct Problem {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Problem {
    /// Projection onto `{tr X = 1, X_e = 0}`; the two constraint groups act
    /// on disjoint entries.
    fn project_affine(&self, m: &mut DMatrix<f64>) {
        for &(u, v) in &self.edges {
            m[(u, v)] = 0.0;
            m[(v, u)] = 0.0;
        }
        let shift = (1.0 - m.trace()) / self.n as f64;
        for i in 0..self.n {
            m[(i, i)] += shift;
        }
    }

    fn lower_bound(&self, z: &DMatrix<f64>) -> Option<f64> {
        let mut x = z.clone();
        for &(u, v) in &self.edges {
            x[(u, v)] = 0.0;
            x[(v, u)] = 0.0;
        }
        let x = (&x + x.transpose()) * 0.5;
        let lmin = SymmetricEigen::new(x.clone())
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let lift = (-lmin).max(0.0);
        let trace = x.trace() + lift * self.n as f64;
        if trace <= 0.0 {
            return None;
        }
        let total = x.sum() + lift * self.n as f64;
        Some(total / trace)
    }

    fn upper_bound(&self, scaled_dual: &DMatrix<f64>, rho: f64) -> f64 {
        let mut a = DMatrix::from_element(self.n, self.n, 1.0);
        for &(u, v) in &self.edges {
            let w = 0.5 * rho * (scaled_dual[(u, v)] + scaled_dual[(v, u)]);
            a[(u, v)] = w;
            a[(v, u)] = w;
        }
        lambda_max(&a)
    }
}

pub fn lovasz_theta_with(g: &Graph, opts: &ThetaOptions) -> Result<ThetaResult> {
    let n = g.vertex_count();
    if n > THETA_MAX_VERTICES {
        return Err(Error::SizeCap {
            requested: n,
            limit: THETA_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(ThetaResult {
            lower: 0.0,
            upper: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let prob = Problem {
        n,
        edges: g.edges().collect(),
    };
    if prob.edges.is_empty() {
        // X = J/n attains n and λ_max(J) = n
        return Ok(ThetaResult {
            lower: n as f64,
            upper: n as f64,
            iterations: 0,
            converged: true,
        });
    }
    let j = DMatrix::from_element(n, n, 1.0);
    let mut z = DMatrix::identity(n, n) / n as f64;
    let mut u = DMatrix::zeros(n, n);
    let mut rho = 1.0;
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    let mut iterations = 0;

    while iterations < opts.max_iterations {
        iterations += 1;
        let mut x = &z - &u + &j / rho;
        prob.project_affine(&mut x);
        let z_prev = z;
        z = project_psd(&(&x + &u));
        u += &x - &z;

        if iterations % CHECK_EVERY == 0 {
            if let Some(lb) = prob.lower_bound(&z) {
                lower = lower.max(lb);
            }
            upper = upper.min(prob.upper_bound(&u, rho));
            if upper - lower <= opts.gap_tol {
                break;
            }
        }
        if iterations % RHO_UPDATE_EVERY == 0 {
            let primal = (&x - &z).norm();
            let dual = rho * (&z - &z_prev).norm();
            if primal > 10.0 * dual {
                rho *= 2.0;
                u /= 2.0;
            } else if dual > 10.0 * primal {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }
    Ok(ThetaResult {
        lower,
        upper,
        iterations,
        converged: upper - lower <= opts.gap_tol,
    })
}
