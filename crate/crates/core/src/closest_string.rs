//! Closest String by subset decomposition.
//!
//! For every `r`-subset of the inputs, the positions where the subset agrees
//! are copied from its first member and the remaining positions are solved as
//! a restricted problem. Every input string is also tried as the center, and
//! the best candidate wins. The output radius is at most
//! `(1 + 1/(2r−1) + ε)·d_opt`, where `ε = r·ε′` for the rounding slack `ε′`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::best_input_center;
use crate::instance::{CenterSolution, StringInstance};
use crate::lp_round::{build_restricted, solve_restricted, RoundingConfig};
use crate::seed;
use crate::seq::{agreement_of_slices, Seq};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosestStringConfig {
    pub r: usize,
    pub rounding: RoundingConfig,
    pub parallel: bool,
    /// Also try every subset member, not only the first, as the anchor.
    pub all_anchors: bool,
}

impl Default for ClosestStringConfig {
    fn default() -> Self {
        Self { r: 2, rounding: RoundingConfig::default(), parallel: false, all_anchors: false }
    }
}

impl ClosestStringConfig {
    /// Approximation bound `1 + 1/(2r−1) + r·ε′` for this configuration.
    pub fn ratio_bound(&self) -> f64 {
        1.0 + 1.0 / (2 * self.r - 1) as f64 + self.r as f64 * self.rounding.epsilon_prime
    }
}

/// All `C(n, r)` increasing index tuples in lexicographic order.
pub fn subset_candidates(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(r)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    radius: usize,
    /// 0 for an input string, 1 for a subset-derived center.
    kind: u8,
    center: Vec<u8>,
}

pub fn solve_closest_string(inst: &StringInstance, cfg: &ClosestStringConfig) -> Result<CenterSolution> {
    if cfg.r < 2 {
        return Err(Error::Domain(format!("r must be at least 2, got {}", cfg.r)));
    }
    cfg.rounding.validate()?;
    let r = cfg.r.min(inst.n());

    let trivial = best_input_center(inst);
    let mut best = Candidate { radius: trivial.radius, kind: 0, center: trivial.center.indices().to_vec() };

    let anchors = if cfg.all_anchors { r } else { 1 };
    let jobs: Vec<(u64, Vec<usize>, usize)> = subset_candidates(inst.n(), r)
        .enumerate()
        .flat_map(|(k, subset)| (0..anchors).map(move |a| ((k * anchors + a) as u64, subset.clone(), a)))
        .collect();

    let eval = |(key, subset, anchor_at): &(u64, Vec<usize>, usize)| -> Result<Candidate> {
        let rows: Vec<&[u8]> = subset.iter().map(|&i| inst.strings()[i].indices()).collect();
        let q = agreement_of_slices(&rows);
        let anchor = &inst.strings()[subset[*anchor_at]];
        let problem = build_restricted(inst, anchor, &q)?;
        let rounding = RoundingConfig { rng_seed: seed::derive(cfg.rounding.rng_seed, *key), ..cfg.rounding };
        let sol = solve_restricted(&problem, &rounding)?;
        Ok(Candidate { radius: sol.cost, kind: 1, center: sol.center.indices().to_vec() })
    };

    let results: Vec<Result<Candidate>> =
        if cfg.parallel { jobs.par_iter().map(eval).collect() } else { jobs.iter().map(eval).collect() };
    for c in results {
        let c = c?;
        if c < best {
            best = c;
        }
    }

    Ok(CenterSolution {
        center: Seq::from_raw(inst.alphabet(), best.center),
        radius: best.radius,
        witnesses: vec![0; inst.n()],
    })
}
