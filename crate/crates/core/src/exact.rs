//! Exponential-time oracles: true optimal centers for small instances, used
//! as ground truth for the approximation algorithms.

use crate::error::{Error, Result};
use crate::instance::{cost_string_raw, cost_substring_raw, CenterSolution, StringInstance, SubstringInstance};
use crate::seq::{hamming_slices, Seq};

pub const DEFAULT_EXACT_BUDGET: u64 = 1 << 24;

fn count(sigma: usize, len: usize) -> u64 {
    u32::try_from(len)
        .ok()
        .and_then(|l| (sigma as u64).checked_pow(l))
        .unwrap_or(u64::MAX)
}

fn over_budget(sigma: usize, len: usize, budget: u64) -> Result<()> {
    let c = count(sigma, len);
    if c > budget {
        return Err(Error::BudgetExceeded {
            detail: format!("{sigma}^{len} = {c} candidate centers exceed budget {budget}"),
        });
    }
    Ok(())
}

/// Advances `x` to the next string in lexicographic order; false on wrap.
fn odometer(x: &mut [u8], sigma: u8) -> bool {
    for v in x.iter_mut().rev() {
        *v += 1;
        if *v < sigma {
            return true;
        }
        *v = 0;
    }
    false
}

/// Sweeps all of `Σ^m`. Ties go to the lexicographically smallest center.
pub fn exhaustive_closest_string(inst: &StringInstance, budget: u64) -> Result<CenterSolution> {
    let sigma = inst.alphabet().size();
    over_budget(sigma, inst.m(), budget)?;
    let mut x = vec![0u8; inst.m()];
    let mut best = (usize::MAX, x.clone());
    loop {
        let c = cost_string_raw(inst, &x);
        if c < best.0 {
            best = (c, x.clone());
        }
        if !odometer(&mut x, sigma as u8) {
            break;
        }
    }
    Ok(CenterSolution {
        center: Seq::from_raw(inst.alphabet(), best.1),
        radius: best.0,
        witnesses: vec![0; inst.n()],
    })
}

/// Optimal Closest String center by depth-first branch-and-bound over
/// `Σ^m` in lexicographic order. `budget` caps the number of search nodes.
///
/// A prefix is cut when its lower bound reaches the incumbent. The bound is
/// the larger of the worst prefix mismatch count and, for every pair of
/// strings, half of their prefix mismatches plus their remaining disagreements.
pub fn exact_closest_string(inst: &StringInstance, budget: u64) -> Result<CenterSolution> {
    let n = inst.n();
    let m = inst.m();
    let rows: Vec<&[u8]> = inst.strings().iter().map(Seq::indices).collect();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut suffix = vec![0usize; m + 1];
            for j in (0..m).rev() {
                suffix[j] = suffix[j + 1] + usize::from(rows[a][j] != rows[b][j]);
            }
            if suffix[0] > 0 {
                pairs.push((a, b, suffix));
            }
        }
    }
    // Start from the best input string: a valid incumbent that prunes early.
    let seed = best_input_center(inst);
    let mut bb = BranchAndBound {
        rows,
        pairs,
        sigma: inst.alphabet().size() as u8,
        costs: vec![0; n],
        prefix: Vec::with_capacity(m),
        best: seed.radius + 1,
        best_center: seed.center.indices().to_vec(),
        nodes: 0,
        budget,
    };
    bb.descend(0)?;
    Ok(CenterSolution {
        center: Seq::from_raw(inst.alphabet(), bb.best_center),
        radius: bb.best,
        witnesses: vec![0; n],
    })
}

struct BranchAndBound<'a> {
    rows: Vec<&'a [u8]>,
    pairs: Vec<(usize, usize, Vec<usize>)>,
    sigma: u8,
    costs: Vec<usize>,
    prefix: Vec<u8>,
    best: usize,
    best_center: Vec<u8>,
    nodes: u64,
    budget: u64,
}

impl BranchAndBound<'_> {
    fn lower_bound(&self, j: usize) -> usize {
        let mut lb = self.costs.iter().copied().max().unwrap_or(0);
        for (a, b, suffix) in &self.pairs {
            lb = lb.max((self.costs[*a] + self.costs[*b] + suffix[j]).div_ceil(2));
        }
        lb
    }

    fn descend(&mut self, j: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                detail: format!("branch-and-bound visited more than {} nodes", self.budget),
            });
        }
        if self.lower_bound(j) >= self.best {
            return Ok(());
        }
        let m = self.rows[0].len();
        if j == m {
            self.best = self.costs.iter().copied().max().unwrap_or(0);
            self.best_center = self.prefix.clone();
            return Ok(());
        }
        for a in 0..self.sigma {
            for (i, row) in self.rows.iter().enumerate() {
                self.costs[i] += usize::from(row[j] != a);
            }
            self.prefix.push(a);
            let r = self.descend(j + 1);
            self.prefix.pop();
            for (i, row) in self.rows.iter().enumerate() {
                self.costs[i] -= usize::from(row[j] != a);
            }
            r?;
        }
        Ok(())
    }
}

/// Sweeps all of `Σ^L` scoring each center by its best windows.
pub fn exact_closest_substring(inst: &SubstringInstance, budget: u64) -> Result<CenterSolution> {
    let sigma = inst.alphabet().size();
    let l = inst.window();
    over_budget(sigma, l, budget)?;
    let mut x = vec![0u8; l];
    let mut best: Option<(usize, Vec<u8>, Vec<usize>)> = None;
    loop {
        if !exceeds(inst, &x, best.as_ref().map_or(usize::MAX, |b| b.0)) {
            let (c, w) = cost_substring_raw(inst, &x);
            if best.as_ref().is_none_or(|b| c < b.0) {
                let done = c == 0;
                best = Some((c, x.clone(), w));
                if done {
                    break;
                }
            }
        }
        if !odometer(&mut x, sigma as u8) {
            break;
        }
    }
    let (radius, center, witnesses) = best.expect("at least one candidate");
    Ok(CenterSolution { center: Seq::from_raw(inst.alphabet(), center), radius, witnesses })
}

/// True when some string has no window within distance `< limit` of `x`.
fn exceeds(inst: &SubstringInstance, x: &[u8], limit: usize) -> bool {
    let l = x.len();
    inst.strings().iter().any(|s| {
        let s = s.indices();
        (0..=s.len() - l).all(|off| hamming_slices(&s[off..off + l], x) >= limit)
    })
}

/// The best input string used as the center (ties to the smallest index).
pub fn best_input_center(inst: &StringInstance) -> CenterSolution {
    let (idx, radius) = inst
        .strings()
        .iter()
        .enumerate()
        .map(|(i, s)| (i, cost_string_raw(inst, s.indices())))
        .min_by_key(|&(i, c)| (c, i))
        .expect("instance is non-empty");
    CenterSolution { center: inst.strings()[idx].clone(), radius, witnesses: vec![0; inst.n()] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use rand::Rng;
    use std::sync::Arc;

    fn bin() -> Arc<Alphabet> {
        Arc::new(Alphabet::binary())
    }

    #[test]
    fn closest_string_examples() {
        let b = bin();
        let inst = StringInstance::parse(&b, &["00", "01", "10"]).unwrap();
        for sol in [exact_closest_string(&inst, 1 << 20).unwrap(), exhaustive_closest_string(&inst, 4).unwrap()] {
            assert_eq!((sol.radius, sol.center.to_string()), (1, "00".into()));
        }

        let a = Arc::new(Alphabet::parse("AC").unwrap());
        let inst = StringInstance::parse(&a, &["A"]).unwrap();
        let sol = exact_closest_string(&inst, 100).unwrap();
        assert_eq!((sol.radius, sol.center.to_string()), (0, "A".into()));

        let inst = StringInstance::parse(&b, &["000", "111"]).unwrap();
        for sol in [exact_closest_string(&inst, 1 << 20).unwrap(), exhaustive_closest_string(&inst, 8).unwrap()] {
            assert_eq!((sol.radius, sol.center.to_string()), (2, "001".into()));
        }
    }

    #[test]
    fn budgets() {
        let b = bin();
        let inst = StringInstance::parse(&b, &["000", "111"]).unwrap();
        assert!(matches!(exhaustive_closest_string(&inst, 7), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(exact_closest_string(&inst, 2), Err(Error::BudgetExceeded { .. })));
        let sub = SubstringInstance::parse(&b, &["0000"], 3).unwrap();
        assert!(matches!(exact_closest_substring(&sub, 7), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn closest_substring_examples() {
        let ab = Arc::new(Alphabet::parse("AB").unwrap());
        let inst = SubstringInstance::parse(&ab, &["AAAA", "BAAB"], 2).unwrap();
        let sol = exact_closest_substring(&inst, 4).unwrap();
        assert_eq!((sol.radius, sol.center.to_string(), sol.witnesses), (0, "AA".into(), vec![0, 1]));

        let b = bin();
        let inst = SubstringInstance::parse(&b, &["0110"], 3).unwrap();
        assert_eq!(exact_closest_substring(&inst, 8).unwrap().radius, 0);

        let inst = SubstringInstance::parse(&b, &["01", "10"], 1).unwrap();
        let sol = exact_closest_substring(&inst, 2).unwrap();
        assert_eq!((sol.radius, sol.center.to_string()), (0, "0".into()));
    }

    #[test]
    fn best_input_examples() {
        let b = bin();
        let sol = best_input_center(&StringInstance::parse(&b, &["00", "01"]).unwrap());
        assert_eq!((sol.radius, sol.center.to_string()), (1, "00".into()));
        let sol = best_input_center(&StringInstance::parse(&b, &["101", "101"]).unwrap());
        assert_eq!(sol.radius, 0);
        let sol = best_input_center(&StringInstance::parse(&b, &["000", "011", "101"]).unwrap());
        assert_eq!(sol.radius, 2);
    }

    #[test]
    fn branch_and_bound_matches_sweep() {
        let b = bin();
        let mut rng = crate::seed::rng(2024);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=10);
            let rows = (0..n)
                .map(|_| Seq::from_raw(&b, (0..m).map(|_| rng.gen_range(0..2)).collect()))
                .collect();
            let inst = StringInstance::new(rows).unwrap();
            let sweep = exhaustive_closest_string(&inst, 1 << 10).unwrap();
            let bb = exact_closest_string(&inst, 1 << 20).unwrap();
            assert_eq!(bb, sweep);
            // radius ≥ ⌈max pairwise / 2⌉
            let max_pair = inst
                .strings()
                .iter()
                .flat_map(|x| inst.strings().iter().map(move |y| hamming_slices(x.indices(), y.indices())))
                .max()
                .unwrap();
            assert!(bb.radius >= max_pair.div_ceil(2));
        }
    }
}
