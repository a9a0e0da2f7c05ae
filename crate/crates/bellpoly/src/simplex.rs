//! Two-phase simplex in exact rational arithmetic with Bland's anti-cycling
//! rule, for `min c.x  s.t.  A x = b, x >= 0`.

use crate::error::{BellError, Result};
use crate::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// dual values for the equality constraints, in input row order
    pub y: Vec<Rational>,
}

struct Tableau {
    /// rows[i] holds the constraint coefficients followed by the rhs
    rows: Vec<Vec<Rational>>,
    /// reduced costs followed by the negated objective value
    obj: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..=self.ncols {
                    let s = &f * &self.rows[r][j];
                    self.rows[i][j] -= s;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..=self.ncols {
                let s = &f * &self.rows[r][j];
                self.obj[j] -= s;
            }
        }
        self.basis[r] = col;
    }

    /// Dantzig pricing while the objective is moving, switching permanently
    /// to Bland's rule after a stall so cycling is impossible. The leaving
    /// row is the minimum ratio with smallest basic variable as tie-break.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        let mut bland = false;
        let mut stall = 0usize;
        let mut last = self.obj[self.ncols].clone();
        loop {
            let col = if bland {
                (0..self.ncols).find(|&j| allowed(j) && self.obj[j].is_negative())
            } else {
                (0..self.ncols)
                    .filter(|&j| allowed(j) && self.obj[j].is_negative())
                    .min_by(|&a, &b| self.obj[a].cmp(&self.obj[b]))
            };
            let Some(col) = col else {
                return Ok(());
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cur = &self.rows[i][self.ncols] / &self.rows[i][col];
                        let best = &self.rows[l][self.ncols] / &self.rows[l][col];
                        cur < best || (cur == best && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            let r = leave.ok_or_else(|| BellError::Internal("unbounded LP".into()))?;
            self.pivot(r, col);
            if !bland {
                if self.obj[self.ncols] == last {
                    stall += 1;
                    if stall > 50 {
                        bland = true;
                    }
                } else {
                    stall = 0;
                    last = self.obj[self.ncols].clone();
                }
            }
        }
    }
}

/// Solves `min c.x  s.t.  A x = b, x >= 0` exactly, returning the optimum,
/// a primal vertex and the equality duals.
pub fn solve_standard_form(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<LpSolution> {
    let m = a.len();
    let nvars = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != nvars) {
        return Err(BellError::BadInput("LP shape mismatch".into()));
    }

    // row signs so every rhs is nonnegative; duals flip back at the end
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut sign: Vec<bool> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        sign.push(neg);
        let mut row: Vec<Rational> = Vec::with_capacity(nvars + m + 1);
        for v in &a[i] {
            row.push(if neg { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let ncols = nvars + m;

    // phase 1: minimize the artificial sum, priced out over the start basis
    let mut obj = vec![Rational::zero(); ncols + 1];
    for row in &rows {
        for j in 0..=ncols {
            obj[j] -= &row[j];
        }
    }
    for j in nvars..ncols {
        obj[j] += Rational::one();
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (nvars..ncols).collect(),
        ncols,
    };
    t.run(&|_| true)?;
    if !t.obj[ncols].is_zero() {
        return Err(BellError::Internal("infeasible LP".into()));
    }

    // drive artificials out of the basis; a zero row means a redundant
    // constraint and stays put (its dual reads off the artificial column)
    for r in 0..m {
        if t.basis[r] >= nvars {
            if let Some(col) = (0..nvars).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            }
        }
    }

    // phase 2 objective, priced out over the current basis
    let mut obj = vec![Rational::zero(); ncols + 1];
    obj[..nvars].clone_from_slice(c);
    for r in 0..m {
        let bv = t.basis[r];
        if !obj[bv].is_zero() {
            let f = obj[bv].clone();
            for j in 0..=ncols {
                let s = &f * &t.rows[r][j];
                obj[j] -= s;
            }
        }
    }
    t.obj = obj;
    t.run(&|j| j < nvars)?;

    let mut x = vec![Rational::zero(); nvars];
    for r in 0..m {
        if t.basis[r] < nvars {
            x[t.basis[r]] = t.rows[r][ncols].clone();
        }
    }
    // artificial column i keeps e_i, so its phase-2 reduced cost is -y_i
    let y: Vec<Rational> = (0..m)
        .map(|i| {
            let v = -t.obj[nvars + i].clone();
            if sign[i] { -v } else { v }
        })
        .collect();
    let value = -t.obj[ncols].clone();
    Ok(LpSolution { value, x, y })
}
