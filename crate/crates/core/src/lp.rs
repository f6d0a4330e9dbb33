//! Covering LPs `min c·x, A x ≥ b, x ≥ 0` with lazily generated rows.
//!
//! The solver runs a dense revised simplex on the dual
//! `max b·y, Aᵀ y ≤ c, y ≥ 0`. Its slack basis is feasible because `c ≥ 0`,
//! and a new primal row is just a new dual column, so every re-solve after
//! a separation round starts from the previous optimal basis. The primal
//! solution is read off the simplex multipliers and is therefore a basic
//! (vertex) solution of the generated system.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("row limit of {limit} reached before the oracle accepted the point")]
    RowLimit { limit: usize, last: Vec<f64> },
    #[error("pivot limit reached")]
    PivotLimit,
    #[error("basis matrix became numerically singular")]
    Singular,
    #[error("generated row {row} violated by {violation:e} at the final point")]
    Numerical { row: usize, violation: f64 },
}

/// A constraint `Σ coeff·x_var ≥ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        Row { coeffs, rhs }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }
}

/// Variables `x_0..x_{n-1} ≥ 0`, objective `min c·x` with `c ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    objective: Vec<f64>,
    fixed_zero: Vec<bool>,
    rows: Vec<Row>,
}

impl LpModel {
    pub fn new(objective: Vec<f64>) -> Self {
        assert!(objective.iter().all(|&c| c >= 0.0 && c.is_finite()), "objective must be finite and nonnegative");
        let n = objective.len();
        LpModel { objective, fixed_zero: vec![false; n], rows: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn fix_zero(&mut self, var: usize) {
        self.fixed_zero[var] = true;
    }

    pub fn is_fixed_zero(&self, var: usize) -> bool {
        self.fixed_zero[var]
    }

    pub fn add_row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Produces a row violated by more than `tol` at `x`, or `None` if `x` is
/// feasible.
pub trait SeparationOracle {
    fn separate(&mut self, x: &[f64], tol: f64) -> Option<Row>;
}

impl<F: FnMut(&[f64], f64) -> Option<Row>> SeparationOracle for F {
    fn separate(&mut self, x: &[f64], tol: f64) -> Option<Row> {
        self(x, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    pub tau_sep: f64,
    pub tau_feas: f64,
    pub max_rows: usize,
    pub max_pivots: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { tau_sep: 1e-7, tau_feas: 1e-7, max_rows: 100_000, max_pivots: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    /// Number of rows in the final generated system.
    pub rows: usize,
}

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-10;
const REFACTOR_EVERY: usize = 64;
const DEGENERATE_STREAK: usize = 32;

/// Dual simplex state: `m` dual constraints (one per free primal variable).
struct DualSimplex {
    m: usize,
    /// Column `j < m` is the slack of dual constraint `j`; column `m + r` is
    /// dual variable `y_r` with entries `A[r][free vars]`.
    cols: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    since_refactor: usize,
    pivots: usize,
}

impl DualSimplex {
    fn new(rhs: Vec<f64>) -> Self {
        let m = rhs.len();
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        DualSimplex {
            m,
            cols: (0..m).map(|j| vec![(j, 1.0)]).collect(),
            cost: vec![0.0; m],
            xb: rhs.clone(),
            rhs,
            basis: (0..m).collect(),
            in_basis: vec![true; m],
            binv,
            since_refactor: 0,
            pivots: 0,
        }
    }

    fn add_column(&mut self, entries: Vec<(usize, f64)>, b: f64) {
        self.cols.push(entries);
        // minimizing -b·y
        self.cost.push(-b);
        self.in_basis.push(false);
    }

    fn multipliers(&self) -> Vec<f64> {
        let m = self.m;
        let mut pi = vec![0.0; m];
        for (i, &col) in self.basis.iter().enumerate() {
            let c = self.cost[col];
            if c != 0.0 {
                let row = &self.binv[i * m..(i + 1) * m];
                for (p, r) in pi.iter_mut().zip(row) {
                    *p += c * r;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, col: usize, pi: &[f64]) -> f64 {
        self.cost[col] - self.cols[col].iter().map(|&(i, a)| pi[i] * a).sum::<f64>()
    }

    fn ftran(&self, col: usize) -> Vec<f64> {
        let m = self.m;
        let mut u = vec![0.0; m];
        for &(k, a) in &self.cols[col] {
            for i in 0..m {
                u[i] += self.binv[i * m + k] * a;
            }
        }
        u
    }

    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m;
        // Gauss-Jordan on [B | I]
        let mut b = vec![0.0; m * m];
        for (i, &col) in self.basis.iter().enumerate() {
            for &(k, a) in &self.cols[col] {
                b[k * m + i] = a;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&x, &y| b[x * m + c].abs().total_cmp(&b[y * m + c].abs()))
                .ok_or(LpError::Singular)?;
            if b[p * m + c].abs() < 1e-12 {
                return Err(LpError::Singular);
            }
            if p != c {
                for j in 0..m {
                    b.swap(p * m + j, c * m + j);
                    inv.swap(p * m + j, c * m + j);
                }
            }
            let d = b[c * m + c];
            for j in 0..m {
                b[c * m + j] /= d;
                inv[c * m + j] /= d;
            }
            for r in 0..m {
                if r != c {
                    let f = b[r * m + c];
                    if f != 0.0 {
                        for j in 0..m {
                            b[r * m + j] -= f * b[c * m + j];
                            inv[r * m + j] -= f * inv[c * m + j];
                        }
                    }
                }
            }
        }
        self.binv = inv;
        let mut xb = vec![0.0; m];
        for i in 0..m {
            xb[i] = (0..m).map(|k| self.binv[i * m + k] * self.rhs[k]).sum::<f64>().max(0.0);
        }
        self.xb = xb;
        self.since_refactor = 0;
        Ok(())
    }

    /// Runs primal simplex on the dual to optimality.
    fn optimize(&mut self, max_pivots: usize) -> Result<(), LpError> {
        let m = self.m;
        let mut streak = 0;
        loop {
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let pi = self.multipliers();
            let bland = streak >= DEGENERATE_STREAK;
            let mut enter = None;
            let mut best = -COST_EPS;
            for col in 0..self.cols.len() {
                if self.in_basis[col] {
                    continue;
                }
                let rc = self.reduced_cost(col, &pi);
                if rc < best {
                    enter = Some(col);
                    if bland {
                        break;
                    }
                    best = rc;
                }
            }
            let Some(q) = enter else { return Ok(()) };
            let u = self.ftran(q);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                if u[i] > PIVOT_EPS {
                    let ratio = self.xb[i] / u[i];
                    let better = match leave {
                        None => true,
                        Some((p, r)) => {
                            ratio < r - 1e-12 || (ratio <= r + 1e-12 && self.basis[i] < self.basis[p])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // an unbounded dual ray means the primal rows cannot all hold
            let Some((p, ratio)) = leave else { return Err(LpError::Infeasible) };
            streak = if ratio <= 1e-12 { streak + 1 } else { 0 };
            let up = u[p];
            for j in 0..m {
                self.binv[p * m + j] /= up;
            }
            let theta = self.xb[p] / up;
            for i in 0..m {
                if i != p && u[i] != 0.0 {
                    let f = u[i];
                    for j in 0..m {
                        self.binv[i * m + j] -= f * self.binv[p * m + j];
                    }
                    self.xb[i] = (self.xb[i] - f * theta).max(0.0);
                }
            }
            self.xb[p] = theta;
            self.in_basis[self.basis[p]] = false;
            self.in_basis[q] = true;
            self.basis[p] = q;
            self.since_refactor += 1;
            self.pivots += 1;
            if self.pivots > max_pivots {
                return Err(LpError::PivotLimit);
            }
        }
    }
}

/// Solves the model exactly as given (no separation).
pub fn solve(model: &LpModel) -> Result<LpSolution, LpError> {
    let mut none = |_: &[f64], _: f64| None;
    let mut m = model.clone();
    solve_with_separation(&mut m, &mut none, LpOptions::default())
}

/// Cutting-plane loop: solve, ask the oracle for a violated row, add it,
/// re-solve from the previous basis. Rows the oracle generates are appended
/// to `model`.
pub fn solve_with_separation<O: SeparationOracle + ?Sized>(
    model: &mut LpModel,
    oracle: &mut O,
    opts: LpOptions,
) -> Result<LpSolution, LpError> {
    let n = model.var_count();
    let free: Vec<usize> = (0..n).filter(|&j| !model.fixed_zero[j]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &j) in free.iter().enumerate() {
        pos[j] = i;
    }
    let mut lp = DualSimplex::new(free.iter().map(|&j| model.objective[j]).collect());
    let mut loaded = 0;
    loop {
        while loaded < model.rows.len() {
            let row = &model.rows[loaded];
            let mut entries: Vec<(usize, f64)> = Vec::new();
            for &(j, a) in &row.coeffs {
                if pos[j] != usize::MAX && a != 0.0 {
                    match entries.iter_mut().find(|e| e.0 == pos[j]) {
                        Some(e) => e.1 += a,
                        None => entries.push((pos[j], a)),
                    }
                }
            }
            if entries.is_empty() && row.rhs > opts.tau_feas {
                return Err(LpError::Infeasible);
            }
            lp.add_column(entries, row.rhs);
            loaded += 1;
        }
        lp.optimize(opts.max_pivots)?;
        let pi = lp.multipliers();
        let mut x = vec![0.0; n];
        for (i, &j) in free.iter().enumerate() {
            let v = -pi[i];
            x[j] = if v < 0.0 { 0.0 } else { v };
        }
        match oracle.separate(&x, opts.tau_sep) {
            Some(row) => {
                if model.rows.len() >= opts.max_rows {
                    return Err(LpError::RowLimit { limit: opts.max_rows, last: x });
                }
                model.rows.push(row);
            }
            None => {
                for (r, row) in model.rows.iter().enumerate() {
                    let violation = row.rhs - row.activity(&x);
                    if violation > opts.tau_feas {
                        return Err(LpError::Numerical { row: r, violation });
                    }
                }
                let value = model.value(&x);
                return Ok(LpSolution { x, value, rows: model.rows.len() });
            }
        }
    }
}
