//! Dense exact-rational simplex for `min c·x` subject to `A x >= b`, `x >= 0`
//! with `b >= 0`.
//!
//! Two phases over a full tableau. Pivoting uses Bland's least-index rule
//! for both the entering and the leaving variable, so degenerate problems
//! cannot cycle.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct CoveringSolution {
    /// Optimal objective value.
    pub value: Rational,
    /// Optimal primal point, one entry per column of `A`.
    pub primal: Vec<Rational>,
    /// Optimal dual point, one entry per row of `A`: `y >= 0`, `yᵀA <= c`,
    /// `b·y = value`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    // rows: constraint rows followed by the objective row
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.cols
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.pivots += 1;
        let inv = BigRational::one() / &self.t[row][col];
        for x in self.t[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.t[row]);
        let support: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r.is_empty() || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                r[j] -= delta;
            }
        }
        self.t[row] = pivot_row;
        self.basis[row] = col;
    }

    /// Runs simplex iterations on the objective row, allowing only columns
    /// for which `allowed` holds to enter.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> Result<()> {
        let m = self.basis.len();
        let obj = m;
        loop {
            // objective row stores reduced costs; negative means improving
            let entering = (0..self.cols).find(|&j| allowed(j) && self.t[obj][j].is_negative());
            let Some(col) = entering else {
                return Ok(());
            };
            let mut best: Option<(BigRational, usize)> = None;
            for i in 0..m {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.rhs()] / a;
                let better = match &best {
                    None => true,
                    Some((r, bi)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
            let Some((_, row)) = best else {
                return Err(Error::InvalidParameter("linear program is unbounded".into()));
            };
            self.pivot(row, col);
        }
    }
}

/// Solves `min c·x  s.t.  A x >= b, x >= 0` exactly.
///
/// `a` is given row-major (`a[i][j]` for row `i`, column `j`); every
/// `b[i]` must be nonnegative.
pub fn minimize_covering(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<CoveringSolution> {
    let m = a.len();
    let k = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidParameter("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidParameter("right-hand side must be nonnegative".into()));
    }
    // columns: x (k), surplus (m), artificial (m), then rhs
    let cols = k + 2 * m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); cols + 1];
        for j in 0..k {
            row[j] = a[i][j].inner().clone();
        }
        row[k + i] = -BigRational::one();
        row[k + m + i] = BigRational::one();
        row[cols] = b[i].inner().clone();
        t.push(row);
    }
    // phase one: minimize the sum of artificials, expressed in nonbasic terms
    let mut obj = vec![BigRational::zero(); cols + 1];
    for row in &t {
        for j in 0..k + m {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }
    t.push(obj);
    let mut tab = Tableau {
        t,
        basis: (0..m).map(|i| k + m + i).collect(),
        cols,
        pivots: 0,
    };
    tab.optimize(|j| j < k + m)?;
    if !tab.t[m][cols].is_zero() {
        return Err(Error::InvalidParameter("linear program is infeasible".into()));
    }
    // drive artificials at level zero out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= k + m {
            if let Some(j) = (0..k + m).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }
    // phase two objective, reduced against the current basis
    let mut obj = vec![BigRational::zero(); cols + 1];
    for j in 0..k {
        obj[j] = c[j].inner().clone();
    }
    for i in 0..m {
        let bj = tab.basis[i];
        if bj < k && !obj[bj].is_zero() {
            let factor = obj[bj].clone();
            for j in 0..=cols {
                let delta = &factor * &tab.t[i][j];
                obj[j] -= delta;
            }
        }
    }
    tab.t[m] = obj;
    tab.optimize(|j| j < k + m)?;

    let mut primal = vec![Rational::zero(); k];
    for i in 0..m {
        if tab.basis[i] < k {
            primal[tab.basis[i]] = Rational::from_inner(tab.t[i][cols].clone());
        }
    }
    // reduced cost of surplus column k+i is 0 - y·(-e_i) = y_i
    let dual: Vec<Rational> = (0..m)
        .map(|i| Rational::from_inner(tab.t[m][k + i].clone()))
        .collect();
    let value = Rational::from_inner(-tab.t[m][cols].clone());
    Ok(CoveringSolution {
        value,
        primal,
        dual,
        pivots: tab.pivots,
    })
}
