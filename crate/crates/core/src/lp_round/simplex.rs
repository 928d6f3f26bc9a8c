//! Dense two-phase tableau simplex for `min cᵀx  s.t.  Ax = b, x ≥ 0`.
//!
//! Bland's rule picks both the entering and the leaving variable, so the
//! method terminates on the highly degenerate programs the restricted
//! center problem produces. Sizes here are a few hundred columns at most.

use crate::error::{Error, Result};

pub(crate) const PIVOT_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    active: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [f64]) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        let f = obj[c];
        if f != 0.0 {
            for (v, &pv) in obj.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on reduced-cost row `obj` (last entry holds
    /// minus the objective value).
    fn optimize(&mut self, obj: &mut [f64]) -> Result<()> {
        let rhs = self.rhs();
        for _ in 0..MAX_PIVOTS {
            let Some(c) = (0..self.active).find(|&j| obj[j] < -PIVOT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[c];
                if a > PIVOT_TOL {
                    let ratio = row[rhs] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - PIVOT_TOL
                                || (ratio <= br + PIVOT_TOL && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::NumericalFailure("objective unbounded below".into()));
            };
            self.pivot(r, c, obj);
        }
        Err(Error::NumericalFailure(format!("no convergence after {MAX_PIVOTS} pivots")))
    }
}

/// Solves `min cᵀx, Ax = b, x ≥ 0`. Requires `b ≥ 0`.
pub(crate) fn minimize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(b.len(), m);
    if let Some(bad) = b.iter().find(|&&v| v < 0.0) {
        return Err(Error::NumericalFailure(format!("negative right-hand side {bad}")));
    }
    if m == 0 {
        return Ok(LpSolution { x: vec![0.0; n], objective: 0.0 });
    }

    // Columns: original 0..n, artificial n..n+m, rhs.
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut t = vec![0.0; width];
        t[..n].copy_from_slice(row);
        t[n + i] = 1.0;
        t[width - 1] = bi;
        rows.push(t);
    }
    let mut tab = Tableau { rows, basis: (n..n + m).collect(), active: n };

    // Phase 1: minimize the sum of artificials.
    let mut obj = vec![0.0; width];
    for row in &tab.rows {
        for j in 0..n {
            obj[j] -= row[j];
        }
        obj[width - 1] -= row[width - 1];
    }
    tab.optimize(&mut obj)?;
    let infeasibility = -obj[width - 1];
    if infeasibility > 1e-7 {
        return Err(Error::NumericalFailure(format!("infeasible (phase 1 residual {infeasibility:e})")));
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| tab.rows[i][j].abs() > PIVOT_TOL) {
                Some(j) => tab.pivot(i, j, &mut obj),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2.
    let rhs = width - 1;
    let mut obj = vec![0.0; width];
    obj[..n].copy_from_slice(c);
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        let cb = c[bv];
        if cb != 0.0 {
            for (v, &rv) in obj.iter_mut().zip(row) {
                *v -= cb * rv;
            }
        }
    }
    tab.optimize(&mut obj)?;

    let mut x = vec![0.0; n];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        x[bv] = row[rhs].max(0.0);
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_program() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 ; optimum 36 at (2, 6).
        let a = vec![
            vec![1.0, 0.0, 1.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0, 1.0, 0.0],
            vec![3.0, 2.0, 0.0, 0.0, 1.0],
        ];
        let sol = minimize(&a, &[4.0, 12.0, 18.0], &[-3.0, -5.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((sol.objective + 36.0).abs() < 1e-9);
        assert!((sol.x[0] - 2.0).abs() < 1e-9 && (sol.x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 stated twice; min x.
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let sol = minimize(&a, &[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!(sol.objective.abs() < 1e-12);
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded_are_failures() {
        let a = vec![vec![1.0], vec![1.0]];
        assert!(matches!(minimize(&a, &[1.0, 2.0], &[0.0]), Err(Error::NumericalFailure(_))));
        let a = vec![vec![1.0, -1.0]];
        assert!(matches!(minimize(&a, &[0.0], &[0.0, -1.0]), Err(Error::NumericalFailure(_))));
    }
}
