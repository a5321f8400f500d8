//! Exact primal simplex for packing LPs with column generation.
//!
//! Solves `max c·x  s.t.  A x ≤ r,  x ≥ 0` with `r ≥ 0`, so the all-slack basis
//! is feasible from the start. Columns can be added after an optimum is
//! reached and the solve resumes from the current basis. Pivoting follows
//! Bland's rule, which rules out cycling.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Slack(usize),
    Column(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct PackingLp<T> {
    rows: usize,
    /// Tableau entries of the structural columns, `rows × columns`.
    body: Vec<Vec<T>>,
    /// Tableau entries of the slack columns; this is the basis inverse.
    inverse: Vec<Vec<T>>,
    rhs: Vec<T>,
    costs: Vec<T>,
    /// `z_j − c_j` per structural column.
    reduced: Vec<T>,
    /// Reduced costs of the slacks, i.e. the dual values.
    duals: Vec<T>,
    basis: Vec<Var>,
    objective: T,
}

impl<T: Scalar> PackingLp<T> {
    /// An LP with no columns yet and the given non-negative right-hand side.
    pub fn new(rhs: Vec<T>) -> Self {
        assert!(rhs.iter().all(|r| !r.is_negative()), "packing LP needs r ≥ 0");
        let rows = rhs.len();
        let inverse = (0..rows)
            .map(|i| (0..rows).map(|k| if i == k { T::one() } else { T::zero() }).collect())
            .collect();
        PackingLp {
            rows,
            body: vec![Vec::new(); rows],
            inverse,
            rhs,
            costs: Vec::new(),
            reduced: Vec::new(),
            duals: vec![T::zero(); rows],
            basis: (0..rows).map(Var::Slack).collect(),
            objective: T::zero(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> usize {
        self.costs.len()
    }

    /// Appends a column with objective coefficient `cost` and dense entries `a`.
    /// Returns its index.
    pub fn add_column(&mut self, cost: T, a: &[T]) -> usize {
        assert_eq!(a.len(), self.rows);
        let mut reduced = -cost.clone();
        for (y, x) in self.duals.iter().zip(a) {
            reduced = reduced + y.clone() * x.clone();
        }
        for i in 0..self.rows {
            let mut entry = T::zero();
            for (b, x) in self.inverse[i].iter().zip(a) {
                if !x.is_zero() {
                    entry = entry + b.clone() * x.clone();
                }
            }
            self.body[i].push(entry);
        }
        self.costs.push(cost);
        self.reduced.push(reduced);
        self.costs.len() - 1
    }

    /// Pivots to optimality. Returns the number of pivots taken.
    pub fn solve(&mut self) -> Result<usize, LpError> {
        let mut pivots = 0;
        while let Some(entering) = self.entering() {
            let column = self.tableau_column(entering);
            let leaving = self.leaving(&column).ok_or(LpError::Unbounded)?;
            self.pivot(leaving, entering, &column);
            pivots += 1;
        }
        Ok(pivots)
    }

    pub fn objective(&self) -> &T {
        &self.objective
    }

    /// Dual values, one per row; non-negative at an optimum.
    pub fn duals(&self) -> &[T] {
        &self.duals
    }

    /// Current basic solution over the structural columns.
    pub fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.columns()];
        for (i, v) in self.basis.iter().enumerate() {
            if let Var::Column(k) = v {
                x[*k] = self.rhs[i].clone();
            }
        }
        x
    }

    fn order(&self, v: Var) -> usize {
        match v {
            Var::Slack(i) => i,
            Var::Column(k) => self.rows + k,
        }
    }

    fn entering(&self) -> Option<Var> {
        let slack = (0..self.rows).find(|&i| self.duals[i].is_negative());
        if let Some(i) = slack {
            return Some(Var::Slack(i));
        }
        (0..self.columns())
            .find(|&k| self.reduced[k].is_negative())
            .map(Var::Column)
    }

    fn tableau_column(&self, v: Var) -> Vec<T> {
        match v {
            Var::Slack(s) => (0..self.rows).map(|i| self.inverse[i][s].clone()).collect(),
            Var::Column(k) => (0..self.rows).map(|i| self.body[i][k].clone()).collect(),
        }
    }

    fn leaving(&self, column: &[T]) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for (i, a) in column.iter().enumerate() {
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs[i].clone() / a.clone();
            let better = match &best {
                None => true,
                Some((r, q)) => {
                    ratio < *q
                        || (ratio == *q && self.order(self.basis[i]) < self.order(self.basis[*r]))
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, entering: Var, column: &[T]) {
        let p = column[r].clone();
        for x in self.body[r].iter_mut().chain(self.inverse[r].iter_mut()) {
            *x = x.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;

        let pivot_body = self.body[r].clone();
        let pivot_inv = self.inverse[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows {
            let f = &column[i];
            if i == r || f.is_zero() {
                continue;
            }
            eliminate(&mut self.body[i], &pivot_body, f);
            eliminate(&mut self.inverse[i], &pivot_inv, f);
            self.rhs[i] = self.rhs[i].clone() - f.clone() * pivot_rhs.clone();
        }
        let d = match entering {
            Var::Slack(s) => self.duals[s].clone(),
            Var::Column(k) => self.reduced[k].clone(),
        };
        eliminate(&mut self.reduced, &pivot_body, &d);
        eliminate(&mut self.duals, &pivot_inv, &d);
        self.objective = self.objective.clone() - d * pivot_rhs;
        self.basis[r] = entering;
    }
}

fn eliminate<T: Scalar>(row: &mut [T], pivot_row: &[T], factor: &T) {
    for (x, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *x = x.clone() - factor.clone() * p.clone();
        }
    }
}
