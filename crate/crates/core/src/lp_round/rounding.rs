use rand::Rng;

use super::{FractionalCenter, RestrictedProblem, RoundingConfig};
use crate::error::{Error, Result};
use crate::seed;
use crate::seq::Seq;

fn draw_symbol<R: Rng>(row: &[f64], rng: &mut R) -> u8 {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (a, &w) in row.iter().enumerate() {
        acc += w;
        if u < acc {
            return a as u8;
        }
    }
    // u landed in the rounding gap above the cumulative sum
    row.iter().rposition(|&w| w > 0.0).unwrap_or(0) as u8
}

/// One independent draw per position from the weights, no selection.
pub(crate) fn draw_patch<R: Rng>(frac: &FractionalCenter, rng: &mut R) -> Vec<u8> {
    frac.weights().iter().map(|row| draw_symbol(row, rng)).collect()
}

/// Randomized rounding: `cfg.trials` independent draws, keeping the patch of
/// lowest restricted cost (ties go to the earliest trial). Trial `t` draws
/// from the stream derived from `(cfg.rng_seed, t)`.
pub fn round_randomized(frac: &FractionalCenter, p: &RestrictedProblem, cfg: &RoundingConfig) -> Result<Seq> {
    frac.check_against(p)?;
    if cfg.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let mut best: Option<(usize, Vec<u8>)> = None;
    for t in 0..cfg.trials {
        let mut rng = seed::rng(seed::derive(cfg.rng_seed, t as u64));
        let patch = draw_patch(frac, &mut rng);
        let cost = p.patch_cost(&patch);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, patch));
        }
    }
    let (_, patch) = best.expect("at least one trial");
    Ok(Seq::from_raw(p.inst().alphabet(), patch))
}

/// Upper-tail probabilities of a Poisson-binomial suffix sum:
/// `tail[j][t] = Pr[Σ_{l ≥ j} B_l ≥ t]` for `t` in `0..=k-j`.
struct SuffixTails {
    tail: Vec<Vec<f64>>,
}

impl SuffixTails {
    fn new(probs: &[f64]) -> Self {
        let k = probs.len();
        let mut dist = vec![1.0];
        let mut tail = vec![Vec::new(); k + 1];
        tail[k] = vec![1.0];
        for j in (0..k).rev() {
            let q = probs[j];
            let mut next = vec![0.0; dist.len() + 1];
            for (v, &pv) in dist.iter().enumerate() {
                next[v] += (1.0 - q) * pv;
                next[v + 1] += q * pv;
            }
            let mut t = vec![0.0; next.len()];
            let mut acc = 0.0;
            for v in (0..next.len()).rev() {
                acc += next[v];
                t[v] = acc.min(1.0);
            }
            tail[j] = t;
            dist = next;
        }
        Self { tail }
    }

    /// `Pr[Σ_{l ≥ j} B_l > slack]`.
    fn exceeds(&self, j: usize, slack: i64) -> f64 {
        let need = slack + 1;
        if need <= 0 {
            return 1.0;
        }
        self.tail[j].get(need as usize).copied().unwrap_or(0.0)
    }
}

/// Deterministic rounding by conditional probabilities.
///
/// String `i` is violated when its total cost exceeds `d̄ + ε′|P|`. Positions
/// are fixed left to right, each time choosing the symbol that minimizes the
/// sum over strings of the exact conditional violation probability, with the
/// unfixed positions still distributed per the fractional weights. The sum
/// never increases, so a start below 1 ends at 0 violations.
pub fn round_derandomized(frac: &FractionalCenter, p: &RestrictedProblem, epsilon_prime: f64) -> Result<Seq> {
    frac.check_against(p)?;
    let k = p.p().len();
    let n = p.inst().n();
    let sigma = p.inst().alphabet().size() as u8;
    let bound = (frac.objective() + epsilon_prime * k as f64).floor() as i64;
    let allowed: Vec<i64> = p.fixed_costs().iter().map(|&f| bound - f as i64).collect();

    let tails: Vec<SuffixTails> = (0..n)
        .map(|i| {
            let probs: Vec<f64> = (0..k)
                .map(|j| (1.0 - frac.weights()[j][p.symbol(i, j) as usize]).clamp(0.0, 1.0))
                .collect();
            SuffixTails::new(&probs)
        })
        .collect();

    let start: f64 = (0..n).map(|i| tails[i].exceeds(0, allowed[i])).sum();
    if start >= 1.0 {
        return Err(Error::EstimatorAtLeastOne(start));
    }

    let mut used = vec![0i64; n];
    let mut patch = Vec::with_capacity(k);
    for j in 0..k {
        let row = &frac.weights()[j];
        let mut best = (f64::INFINITY, -1.0, 0u8);
        for a in 0..sigma {
            let est: f64 = (0..n)
                .map(|i| {
                    let c = used[i] + i64::from(p.symbol(i, j) != a);
                    tails[i].exceeds(j + 1, allowed[i] - c)
                })
                .sum();
            // near-ties go to the heavier fractional weight
            let w = row[a as usize];
            if est < best.0 - 1e-12 || (est <= best.0 + 1e-12 && w > best.1) {
                best = (est, w, a);
            }
        }
        let a = best.2;
        for (i, u) in used.iter_mut().enumerate() {
            *u += i64::from(p.symbol(i, j) != a);
        }
        patch.push(a);
    }
    let violated = (0..n).filter(|&i| used[i] > allowed[i]).count();
    if violated > 0 {
        return Err(Error::EstimatorAtLeastOne(violated as f64));
    }
    Ok(Seq::from_raw(p.inst().alphabet(), patch))
}
