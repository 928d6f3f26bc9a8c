//! The restricted center problem: copy an anchor string on a fixed position
//! set `Q` and optimize the remaining positions `P` so that the maximum
//! distance to the inputs is small.
//!
//! Large `P` goes through an LP relaxation followed by rounding; small `P`
//! is enumerated exactly.

mod enumerate;
mod lp;
mod rounding;
pub(crate) mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{cost_string_raw, StringInstance};
use crate::positions::PositionSet;
use crate::seq::{compose_slices, hamming_on, Seq};

pub use enumerate::enumerate_small_p;
pub use lp::solve_lp;
pub use rounding::{round_derandomized, round_randomized};

/// Solver tolerance for the LP and for the simplex constraints of a
/// fractional center.
pub const LP_TOL: f64 = 1e-9;

/// Default cap on `|Σ|^|P|` for exhaustive patch enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RoundingMode {
    Randomized,
    Derandomized,
    /// Derandomized, falling back to randomized when the estimator starts at 1 or above.
    #[default]
    Auto,
}

impl std::str::FromStr for RoundingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" => Ok(Self::Randomized),
            "derandomized" => Ok(Self::Derandomized),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Parse(format!("unknown rounding mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoundingConfig {
    pub mode: RoundingMode,
    pub trials: usize,
    pub epsilon_prime: f64,
    pub rng_seed: u64,
    /// Maximum number of candidate patches the exact path may sweep.
    pub enum_budget: u64,
}

impl Default for RoundingConfig {
    fn default() -> Self {
        Self {
            mode: RoundingMode::Auto,
            trials: 32,
            epsilon_prime: 0.5,
            rng_seed: 0,
            enum_budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

impl RoundingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        if !(self.epsilon_prime > 0.0 && self.epsilon_prime <= 1.0) {
            return Err(Error::Domain(format!(
                "epsilon' must lie in (0, 1], got {}",
                self.epsilon_prime
            )));
        }
        Ok(())
    }
}

/// Instance strings, the free positions `P`, their complement `Q`, the
/// anchor copied on `Q`, and each string's distance to the anchor on `Q`.
#[derive(Debug, Clone)]
pub struct RestrictedProblem {
    inst: StringInstance,
    p: PositionSet,
    q: PositionSet,
    anchor: Seq,
    fixed_costs: Vec<usize>,
}

impl RestrictedProblem {
    pub fn inst(&self) -> &StringInstance {
        &self.inst
    }

    pub fn p(&self) -> &PositionSet {
        &self.p
    }

    pub fn q(&self) -> &PositionSet {
        &self.q
    }

    pub fn anchor(&self) -> &Seq {
        &self.anchor
    }

    pub fn fixed_costs(&self) -> &[usize] {
        &self.fixed_costs
    }

    /// Symbol of string `i` at the `j`-th free position.
    #[inline]
    pub(crate) fn symbol(&self, i: usize, j: usize) -> u8 {
        self.inst.strings()[i].indices()[self.p.positions()[j]]
    }

    /// `max_i d(sᵢ|_P, x) + fixed_costs[i]` for a patch given as symbol indices.
    pub(crate) fn patch_cost(&self, patch: &[u8]) -> usize {
        (0..self.inst.n())
            .map(|i| {
                let mism = patch.iter().enumerate().filter(|&(j, &x)| self.symbol(i, j) != x).count();
                mism + self.fixed_costs[i]
            })
            .max()
            .unwrap_or(0)
    }

    pub fn cost_of_patch(&self, patch: &Seq) -> Result<usize> {
        if patch.len() != self.p.len() {
            return Err(Error::SizeMismatch { patch: patch.len(), positions: self.p.len() });
        }
        if !patch.same_alphabet(&self.anchor) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.patch_cost(patch.indices()))
    }
}

pub fn build_restricted(inst: &StringInstance, anchor: &Seq, q: &PositionSet) -> Result<RestrictedProblem> {
    if !anchor.same_alphabet(&inst.strings()[0]) {
        return Err(Error::AlphabetMismatch);
    }
    if anchor.len() != inst.m() {
        return Err(Error::LengthMismatch { left: anchor.len(), right: inst.m() });
    }
    if q.frame() != inst.m() {
        return Err(Error::FrameMismatch { frame: q.frame(), len: inst.m() });
    }
    if q.is_multiset() {
        return Err(Error::Domain("Q must be a plain position set".into()));
    }
    let fixed_costs = inst
        .strings()
        .iter()
        .map(|s| hamming_on(s.indices(), anchor.indices(), q.positions()))
        .collect();
    Ok(RestrictedProblem {
        inst: inst.clone(),
        p: q.complement(),
        q: q.clone(),
        anchor: anchor.clone(),
        fixed_costs,
    })
}

/// Per-position symbol weights `x̄[j][a]` and the LP objective `d̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCenter {
    weights: Vec<Vec<f64>>,
    objective: f64,
}

impl FractionalCenter {
    /// Validates that every row is a probability vector within [`LP_TOL`].
    pub fn new(weights: Vec<Vec<f64>>, objective: f64) -> Result<Self> {
        for (j, row) in weights.iter().enumerate() {
            if row.iter().any(|&w| !(-LP_TOL..=1.0 + LP_TOL).contains(&w)) {
                return Err(Error::Domain(format!("weight outside [0,1] at position {j}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > LP_TOL {
                return Err(Error::Domain(format!("weights at position {j} sum to {sum}")));
            }
        }
        if objective.is_nan() || objective < 0.0 {
            return Err(Error::Domain(format!("objective must be nonnegative, got {objective}")));
        }
        Ok(Self { weights, objective })
    }

    /// The 0/1 solution selecting `patch[j]` at position `j`.
    pub fn integral(patch: &[u8], alphabet_size: usize, objective: f64) -> Self {
        let weights = patch
            .iter()
            .map(|&x| (0..alphabet_size).map(|a| if a == x as usize { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { weights, objective }
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ_j Σ_a χ(sᵢ[j], a)·x̄[j][a]` for every string of `p`.
    pub fn expected_costs(&self, p: &RestrictedProblem) -> Vec<f64> {
        (0..p.inst.n())
            .map(|i| {
                self.weights
                    .iter()
                    .enumerate()
                    .map(|(j, row)| 1.0 - row[p.symbol(i, j) as usize])
                    .sum()
            })
            .collect()
    }

    fn check_against(&self, p: &RestrictedProblem) -> Result<()> {
        if self.weights.len() != p.p.len() {
            return Err(Error::SizeMismatch { patch: self.weights.len(), positions: p.p.len() });
        }
        let k = p.inst.alphabet().size();
        if self.weights.iter().any(|row| row.len() != k) {
            return Err(Error::Domain("weight rows must cover the whole alphabet".into()));
        }
        Ok(())
    }
}

/// Whether the exact enumeration path applies: `|P| < (4 ln n) / ε′²`.
pub fn use_enumeration(p_len: usize, n: usize, epsilon_prime: f64) -> bool {
    (p_len as f64) < 4.0 * (n as f64).ln() / (epsilon_prime * epsilon_prime)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RestrictedPath {
    /// `P` was empty; the anchor is the center.
    Anchor,
    Enumerated,
    Derandomized,
    Randomized,
}

#[derive(Debug, Clone)]
pub struct RestrictedSolution {
    pub center: Seq,
    pub cost: usize,
    pub path: RestrictedPath,
}

/// Solves the restricted problem by enumeration when `P` is below the
/// threshold, and by LP relaxation plus rounding otherwise.
pub fn solve_restricted(p: &RestrictedProblem, cfg: &RoundingConfig) -> Result<RestrictedSolution> {
    cfg.validate()?;
    let k = p.p.len();
    let alphabet = p.inst.alphabet();
    let finish = |patch: &[u8], path| {
        let center = Seq::from_raw(alphabet, compose_slices(p.anchor.indices(), patch, p.p.positions()));
        let cost = cost_string_raw(&p.inst, center.indices());
        RestrictedSolution { center, cost, path }
    };
    if k == 0 {
        return Ok(finish(&[], RestrictedPath::Anchor));
    }
    let fits_budget = enumerate::candidate_count(alphabet.size(), k) <= cfg.enum_budget;
    if use_enumeration(k, p.inst.n(), cfg.epsilon_prime) && fits_budget {
        let patch = enumerate_small_p(p, cfg.enum_budget)?;
        return Ok(finish(patch.indices(), RestrictedPath::Enumerated));
    }
    let frac = solve_lp(p)?;
    let (patch, path) = match cfg.mode {
        RoundingMode::Randomized => (round_randomized(&frac, p, cfg)?, RestrictedPath::Randomized),
        RoundingMode::Derandomized => {
            (round_derandomized(&frac, p, cfg.epsilon_prime)?, RestrictedPath::Derandomized)
        }
        RoundingMode::Auto => match round_derandomized(&frac, p, cfg.epsilon_prime) {
            Ok(x) => (x, RestrictedPath::Derandomized),
            Err(Error::EstimatorAtLeastOne(_)) => {
                (round_randomized(&frac, p, cfg)?, RestrictedPath::Randomized)
            }
            Err(e) => return Err(e),
        },
    };
    Ok(finish(patch.indices(), path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use std::sync::Arc;

    fn bin() -> Arc<Alphabet> {
        Arc::new(Alphabet::binary())
    }

    #[test]
    fn build_restricted_examples() {
        let b = bin();
        let inst = StringInstance::parse(&b, &["00"]).unwrap();
        let anchor = Seq::parse(&b, "00").unwrap();
        let p = build_restricted(&inst, &anchor, &PositionSet::full(2)).unwrap();
        assert!(p.p().is_empty());
        assert_eq!(p.fixed_costs(), &[0]);

        let inst = StringInstance::parse(&b, &["01", "10"]).unwrap();
        let p = build_restricted(&inst, &anchor, &PositionSet::new(vec![0], 2).unwrap()).unwrap();
        assert_eq!(p.p().positions(), &[1]);
        assert_eq!(p.fixed_costs(), &[0, 1]);

        let inst = StringInstance::parse(&b, &["111"]).unwrap();
        let anchor = Seq::parse(&b, "000").unwrap();
        let p = build_restricted(&inst, &anchor, &PositionSet::full(3)).unwrap();
        assert_eq!(p.fixed_costs(), &[3]);
    }

    #[test]
    fn build_restricted_rejects_bad_anchor() {
        let b = bin();
        let inst = StringInstance::parse(&b, &["01"]).unwrap();
        let anchor = Seq::parse(&b, "0").unwrap();
        assert!(matches!(
            build_restricted(&inst, &anchor, &PositionSet::empty(1)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_threshold() {
        // 4 ln 3 / 0.25 = 17.58
        assert!(use_enumeration(17, 3, 0.5));
        assert!(!use_enumeration(18, 3, 0.5));
        assert!(!use_enumeration(0, 1, 0.5));
    }

    #[test]
    fn solve_restricted_examples() {
        let b = bin();
        let cfg = RoundingConfig::default();
        let inst = StringInstance::parse(&b, &["0110", "0110", "0110"]).unwrap();
        for q in [PositionSet::empty(4), PositionSet::new(vec![1, 2], 4).unwrap()] {
            let p = build_restricted(&inst, &inst.strings()[0], &q).unwrap();
            assert_eq!(solve_restricted(&p, &cfg).unwrap().cost, 0);
        }

        let inst = StringInstance::parse(&b, &["00", "11"]).unwrap();
        let p = build_restricted(&inst, &inst.strings()[0], &PositionSet::empty(2)).unwrap();
        let sol = solve_restricted(&p, &cfg).unwrap();
        assert_eq!(sol.cost, 1);
        assert_eq!(sol.path, RestrictedPath::Enumerated);
    }

    #[test]
    fn lp_path_is_taken_above_threshold() {
        let b = bin();
        // n = 2, ε' = 0.5: threshold 4 ln 2 / 0.25 = 11.09, so |P| = 12 goes to the LP.
        let inst = StringInstance::parse(&b, &["000000000000", "111111111111"]).unwrap();
        let p = build_restricted(&inst, &inst.strings()[0], &PositionSet::empty(12)).unwrap();
        for mode in [RoundingMode::Auto, RoundingMode::Randomized, RoundingMode::Derandomized] {
            let cfg = RoundingConfig { mode, ..RoundingConfig::default() };
            let sol = solve_restricted(&p, &cfg).unwrap();
            assert_ne!(sol.path, RestrictedPath::Enumerated);
            // d̄ = 6, ε'|P| = 6.
            assert!(sol.cost <= 12);
            assert_eq!(sol.cost, cost_string_raw(&inst, sol.center.indices()));
        }
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = RoundingConfig { epsilon_prime: 0.0, ..RoundingConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = RoundingConfig { trials: 0, ..RoundingConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
