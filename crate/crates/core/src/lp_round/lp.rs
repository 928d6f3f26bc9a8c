use super::simplex;
use super::{FractionalCenter, RestrictedProblem, LP_TOL};
use crate::error::{Error, Result};

/// Fractional optimum of the 0-1 program over the free positions:
///
/// ```text
/// min d
///   Σ_a x[j][a] = 1                               for every free position j
///   Σ_j Σ_a χ(sᵢ[j], a)·x[j][a] ≤ d − fixedᵢ      for every string i
///   0 ≤ x[j][a]
/// ```
///
/// Only symbols that occur in a column get a variable; any other symbol
/// mismatches every string there and is dominated.
pub fn solve_lp(p: &RestrictedProblem) -> Result<FractionalCenter> {
    let k = p.p().len();
    if k == 0 {
        return Err(Error::Domain("LP needs at least one free position".into()));
    }
    let n = p.inst().n();
    let sigma = p.inst().alphabet().size();

    // vars[j] = (symbol, column) for each symbol present in free position j.
    let mut vars: Vec<Vec<(u8, usize)>> = Vec::with_capacity(k);
    let mut ncols = 0;
    for j in 0..k {
        let mut present = vec![false; sigma];
        for i in 0..n {
            present[p.symbol(i, j) as usize] = true;
        }
        let col: Vec<(u8, usize)> = (0..sigma as u8)
            .filter(|&a| present[a as usize])
            .map(|a| {
                ncols += 1;
                (a, ncols - 1)
            })
            .collect();
        vars.push(col);
    }
    let d_col = ncols;
    let slack0 = ncols + 1;
    let width = ncols + 1 + n;

    let mut a = Vec::with_capacity(k + n);
    let mut b = Vec::with_capacity(k + n);
    for col in &vars {
        let mut row = vec![0.0; width];
        for &(_, c) in col {
            row[c] = 1.0;
        }
        a.push(row);
        b.push(1.0);
    }
    // d − Σ χ x − sᵢ = fixedᵢ
    for i in 0..n {
        let mut row = vec![0.0; width];
        row[d_col] = 1.0;
        row[slack0 + i] = -1.0;
        for (j, col) in vars.iter().enumerate() {
            let si = p.symbol(i, j);
            for &(sym, c) in col {
                if sym != si {
                    row[c] = -1.0;
                }
            }
        }
        a.push(row);
        b.push(p.fixed_costs()[i] as f64);
    }
    let mut c = vec![0.0; width];
    c[d_col] = 1.0;

    let sol = simplex::minimize(&a, &b, &c)?;

    let mut weights = vec![vec![0.0; sigma]; k];
    for (j, col) in vars.iter().enumerate() {
        let total: f64 = col.iter().map(|&(_, c)| sol.x[c].clamp(0.0, 1.0)).sum();
        if total <= 0.0 {
            return Err(Error::NumericalFailure(format!("empty distribution at free position {j}")));
        }
        for &(sym, c) in col {
            weights[j][sym as usize] = sol.x[c].clamp(0.0, 1.0) / total;
        }
    }

    // Objective achieved by the cleaned weights, rounded up to the 1e-9 grid.
    let achieved = (0..n)
        .map(|i| {
            let exp: f64 = weights.iter().enumerate().map(|(j, row)| 1.0 - row[p.symbol(i, j) as usize]).sum();
            exp + p.fixed_costs()[i] as f64
        })
        .fold(0.0f64, f64::max);
    let value = achieved.max(sol.objective);
    let objective = ((value / LP_TOL) - 1e-3).ceil() * LP_TOL;
    FractionalCenter::new(weights, objective.max(0.0))
}
