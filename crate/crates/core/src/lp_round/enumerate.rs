use super::RestrictedProblem;
use crate::error::{Error, Result};
use crate::seq::Seq;

/// `sigma^k`, saturating at `u64::MAX`.
pub(crate) fn candidate_count(sigma: usize, k: usize) -> u64 {
    u32::try_from(k)
        .ok()
        .and_then(|k| (sigma as u64).checked_pow(k))
        .unwrap_or(u64::MAX)
}

/// Exact optimum of the restricted problem over all `|Σ|^|P|` patches.
///
/// Patches are visited depth-first in lexicographic order and a branch is cut
/// once its partial cost reaches the incumbent, so the first optimum found is
/// the lexicographically smallest one.
pub fn enumerate_small_p(p: &RestrictedProblem, budget: u64) -> Result<Seq> {
    let k = p.p().len();
    let sigma = p.inst().alphabet().size();
    let count = candidate_count(sigma, k);
    if count > budget {
        return Err(Error::BudgetExceeded {
            detail: format!("{sigma}^{k} patches exceed the enumeration budget {budget}"),
        });
    }
    let mut search = Search {
        p,
        sigma: sigma as u8,
        lower: p.fixed_costs().iter().copied().max().unwrap_or(0),
        costs: p.fixed_costs().to_vec(),
        patch: Vec::with_capacity(k),
        best: usize::MAX,
        best_patch: Vec::new(),
    };
    search.descend(0);
    Ok(Seq::from_raw(p.inst().alphabet(), search.best_patch))
}

struct Search<'a> {
    p: &'a RestrictedProblem,
    sigma: u8,
    lower: usize,
    costs: Vec<usize>,
    patch: Vec<u8>,
    best: usize,
    best_patch: Vec<u8>,
}

impl Search<'_> {
    /// Returns true once the lower bound is reached.
    fn descend(&mut self, j: usize) -> bool {
        let cur = self.costs.iter().copied().max().unwrap_or(0);
        if cur >= self.best {
            return false;
        }
        if j == self.p.p().len() {
            self.best = cur;
            self.best_patch = self.patch.clone();
            return cur == self.lower;
        }
        let n = self.costs.len();
        for a in 0..self.sigma {
            for i in 0..n {
                if self.p.symbol(i, j) != a {
                    self.costs[i] += 1;
                }
            }
            self.patch.push(a);
            let done = self.descend(j + 1);
            self.patch.pop();
            for i in 0..n {
                if self.p.symbol(i, j) != a {
                    self.costs[i] -= 1;
                }
            }
            if done {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::instance::StringInstance;
    use crate::lp_round::build_restricted;
    use crate::positions::PositionSet;
    use std::sync::Arc;

    fn problem(strings: &[&str], anchor: &str, q: Vec<usize>) -> RestrictedProblem {
        let b = Arc::new(Alphabet::binary());
        let inst = StringInstance::parse(&b, strings).unwrap();
        let m = inst.m();
        build_restricted(&inst, &Seq::parse(&b, anchor).unwrap(), &PositionSet::new(q, m).unwrap()).unwrap()
    }

    #[test]
    fn empty_free_set() {
        let p = problem(&["01", "11"], "01", vec![0, 1]);
        let x = enumerate_small_p(&p, 1).unwrap();
        assert!(x.is_empty());
        assert_eq!(p.cost_of_patch(&x).unwrap(), 1);
    }

    #[test]
    fn lexicographic_tie_break() {
        let p = problem(&["01", "10"], "01", vec![]);
        let x = enumerate_small_p(&p, 1 << 20).unwrap();
        assert_eq!(x.to_string(), "00");
        assert_eq!(p.cost_of_patch(&x).unwrap(), 1);
    }

    #[test]
    fn anchored_example() {
        let p = problem(&["000", "011"], "000", vec![0]);
        let x = enumerate_small_p(&p, 1 << 20).unwrap();
        assert_eq!(x.to_string(), "01");
        assert_eq!(p.cost_of_patch(&x).unwrap(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let p = problem(&["0000", "1111"], "0000", vec![]);
        assert!(matches!(enumerate_small_p(&p, 15), Err(Error::BudgetExceeded { .. })));
        assert!(enumerate_small_p(&p, 16).is_ok());
        assert_eq!(candidate_count(4, 40), u64::MAX);
    }
}
