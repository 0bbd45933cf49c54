//! Dense exact-rational linear programming.
//!
//! Two-phase primal simplex over `BigRational` with Bland's anti-cycling
//! rule. Problems here are small certificates (graded pieces of algebras,
//! simplex counts of desk-scale complexes), so a dense tableau in exact
//! arithmetic is the right trade: no tolerances, no cycling, reproducible
//! optima.

// Tableau updates address rows and columns by index.
#![allow(clippy::needless_range_loop)]

pub mod matrix;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use matrix::Matrix;

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Optimal value and one optimal point.
    Optimal { objective: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// min c·x  subject to  A x = b,  x ≥ 0.
///
/// Rows with negative right-hand side are negated during setup.
#[derive(Clone, Debug, Default)]
pub struct Program {
    objective: Vec<Rat>,
    rows: Vec<(Vec<Rat>, Rat)>,
}

impl Program {
    pub fn minimize(objective: Vec<Rat>) -> Self {
        Program {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn equality(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.objective.len());
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> Outcome {
        let n = self.objective.len();
        let m = self.rows.len();

        // Tableau columns: x_0..x_{n-1}, artificials a_0..a_{m-1}, rhs.
        let cols = n + m + 1;
        let mut t = vec![vec![Rat::zero(); cols]; m];
        for (i, (coeffs, rhs)) in self.rows.iter().enumerate() {
            let flip = rhs.is_negative();
            for (j, c) in coeffs.iter().enumerate() {
                t[i][j] = if flip { -c.clone() } else { c.clone() };
            }
            t[i][n + i] = Rat::one();
            t[i][cols - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        }
        let mut basis: Vec<usize> = (n..n + m).collect();

        // Phase 1: minimize the sum of artificials.
        let mut z = vec![Rat::zero(); cols];
        for row in t.iter() {
            for (j, v) in row.iter().enumerate() {
                let sum = &z[j] + v;
                z[j] = sum;
            }
        }
        for j in n..n + m {
            z[j] = Rat::zero();
        }
        simplex_loop(&mut t, &mut z, &mut basis, n + m);
        if !z[cols - 1].is_zero() {
            return Outcome::Infeasible;
        }
        // Drive artificials out of the basis where possible.
        for i in 0..m {
            if basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                    pivot(&mut t, &mut z, &mut basis, i, j);
                }
            }
        }

        // Phase 2: original objective, artificial columns frozen.
        let mut z2 = vec![Rat::zero(); cols];
        for j in 0..n {
            z2[j] = -self.objective[j].clone();
        }
        for i in 0..m {
            if basis[i] < n && !self.objective[basis[i]].is_zero() {
                let factor = self.objective[basis[i]].clone();
                for j in 0..cols {
                    let v = &z2[j] + &(&factor * &t[i][j]);
                    z2[j] = v;
                }
            }
        }
        for j in n..n + m {
            z2[j] = Rat::zero();
        }
        if !simplex_loop(&mut t, &mut z2, &mut basis, n) {
            return Outcome::Unbounded;
        }

        let mut point = vec![Rat::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                point[b] = t[i][cols - 1].clone();
            }
        }
        let objective = point
            .iter()
            .zip(&self.objective)
            .map(|(x, c)| x * c)
            .fold(Rat::zero(), |acc, v| acc + v);
        Outcome::Optimal { objective, point }
    }
}

/// Runs Bland-rule pivoting until optimal (true) or unbounded (false).
/// Columns at index ≥ `active_cols` never enter the basis.
fn simplex_loop(
    t: &mut [Vec<Rat>],
    z: &mut [Rat],
    basis: &mut [usize],
    active_cols: usize,
) -> bool {
    let cols = z.len();
    let rhs_col = cols - 1;
    loop {
        // Bland: entering variable is the lowest-index improving column.
        let Some(entering) = (0..active_cols).find(|&j| z[j].is_positive()) else {
            return true;
        };
        // Ratio test; ties broken by lowest basis index (Bland).
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][entering].is_positive() {
                let ratio = &t[i][rhs_col] / &t[i][entering];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((best_i, best)) => {
                        if ratio < *best || (ratio == *best && basis[i] < basis[*best_i]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((leaving, _)) = leave else {
            return false;
        };
        pivot(t, z, basis, leaving, entering);
    }
}

fn pivot(t: &mut [Vec<Rat>], z: &mut [Rat], basis: &mut [usize], row: usize, col: usize) {
    let cols = z.len();
    let inv = t[row][col].recip();
    for j in 0..cols {
        let v = &t[row][j] * &inv;
        t[row][j] = v;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let factor = t[i][col].clone();
            for j in 0..cols {
                let v = &t[i][j] - &(&factor * &t[row][j]);
                t[i][j] = v;
            }
        }
    }
    if !z[col].is_zero() {
        let factor = z[col].clone();
        for j in 0..cols {
            let v = &z[j] - &(&factor * &t[row][j]);
            z[j] = v;
        }
    }
    basis[row] = col;
}

/// Wrapper for problems with free (sign-unrestricted) variables: each free
/// variable is split into a difference of two nonnegative ones.
pub struct FreeVarProgram {
    free: Vec<bool>,
    objective: Vec<Rat>,
    rows: Vec<(Vec<Rat>, Rat)>,
}

impl FreeVarProgram {
    pub fn minimize(objective: Vec<Rat>, free: Vec<bool>) -> Self {
        assert_eq!(objective.len(), free.len());
        FreeVarProgram {
            free,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn equality(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.objective.len());
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> Outcome {
        let n = self.objective.len();
        let neg_index: Vec<Option<usize>> = {
            let mut next = n;
            self.free
                .iter()
                .map(|&f| {
                    if f {
                        let idx = next;
                        next += 1;
                        Some(idx)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let total = n + neg_index.iter().flatten().count();
        let mut obj = vec![Rat::zero(); total];
        for j in 0..n {
            obj[j] = self.objective[j].clone();
            if let Some(k) = neg_index[j] {
                obj[k] = -self.objective[j].clone();
            }
        }
        let mut p = Program::minimize(obj);
        for (coeffs, rhs) in &self.rows {
            let mut row = vec![Rat::zero(); total];
            for j in 0..n {
                row[j] = coeffs[j].clone();
                if let Some(k) = neg_index[j] {
                    row[k] = -coeffs[j].clone();
                }
            }
            p.equality(row, rhs.clone());
        }
        match p.solve() {
            Outcome::Optimal { objective, point } => {
                let mut out = Vec::with_capacity(n);
                for j in 0..n {
                    let v = match neg_index[j] {
                        Some(k) => &point[j] - &point[k],
                        None => point[j].clone(),
                    };
                    out.push(v);
                }
                Outcome::Optimal {
                    objective,
                    point: out,
                }
            }
            other => other,
        }
    }
}
