//! Closest Substring.
//!
//! Both algorithms enumerate tuples of windows, copy the positions where the
//! tuple agrees from its first window, and fill the rest:
//!
//! * the small-radius algorithm tries every patch in `Σ^|P|`;
//! * the sampling algorithm guesses the center on a random multiset `R` of
//!   free positions, uses the guess to pick one window per string, and then
//!   solves the induced restricted problem by LP relaxation and rounding.

use std::collections::HashSet;

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{cost_substring_raw, substring_radius_below, CenterSolution, StringInstance, SubstringInstance};
use crate::lp_round::{build_restricted, solve_restricted, RoundingConfig};
use crate::positions::PositionSet;
use crate::seed;
use crate::seq::{agreement_of_slices, hamming_on, Seq};

pub const DEFAULT_Y_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SubstringMode {
    SmallD,
    Sampling,
    #[default]
    Auto,
}

impl std::str::FromStr for SubstringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small_d" | "small-d" | "small" => Ok(Self::SmallD),
            "sampling" => Ok(Self::Sampling),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Parse(format!("unknown substring mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubstringConfig {
    pub r: usize,
    pub epsilon: f64,
    /// Rounding settings for the sampling path; its `epsilon_prime` is
    /// replaced by `epsilon` there.
    pub rounding: RoundingConfig,
    /// Cap on `|Σ|^|R|` (sampling) or `|Σ|^|P|` (small radius).
    pub y_budget: u64,
    pub mode: SubstringMode,
    pub rng_seed: u64,
    pub parallel: bool,
    pub all_anchors: bool,
}

impl Default for SubstringConfig {
    fn default() -> Self {
        Self {
            r: 2,
            epsilon: 1.0,
            rounding: RoundingConfig::default(),
            y_budget: DEFAULT_Y_BUDGET,
            mode: SubstringMode::Auto,
            rng_seed: 0,
            parallel: false,
            all_anchors: false,
        }
    }
}

impl SubstringConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::Domain(format!("r must be at least 2, got {}", self.r)));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Domain(format!("epsilon must lie in (0, 1], got {}", self.epsilon)));
        }
        if self.y_budget == 0 {
            return Err(Error::Domain("y_budget must be at least 1".into()));
        }
        self.rounding.validate()
    }

    /// `1 + 1/(2r−1)`.
    pub fn small_ratio_bound(&self) -> f64 {
        1.0 + 1.0 / (2 * self.r - 1) as f64
    }

    /// `1 + 1/(2r−1) + 3εr`.
    pub fn sampling_ratio_bound(&self) -> f64 {
        self.small_ratio_bound() + 3.0 * self.epsilon * self.r as f64
    }
}

/// Windows `(string index, offset)`; the first pick is the anchor. No string
/// appears twice, which covers the repeat rule: a repeated pick must be the
/// same window and so does not change the agreement set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowTuple {
    pub picks: Vec<(usize, usize)>,
}

impl WindowTuple {
    fn slices<'a>(&self, inst: &'a SubstringInstance) -> Vec<&'a [u8]> {
        self.picks.iter().map(|&(i, off)| inst.window_slice(i, off)).collect()
    }
}

/// All window tuples over `1..=min(r, n)` distinct strings, in order of
/// tuple size, then string subset, then offsets (lexicographic).
pub fn window_tuples(inst: &SubstringInstance, r: usize, all_anchors: bool) -> Vec<WindowTuple> {
    let mut out = Vec::new();
    for k in 1..=r.min(inst.n()) {
        for subset in (0..inst.n()).combinations(k) {
            let offsets = subset.iter().map(|&i| 0..inst.offsets(i)).multi_cartesian_product();
            for offs in offsets {
                let picks: Vec<(usize, usize)> = subset.iter().copied().zip(offs).collect();
                let anchors = if all_anchors { k } else { 1 };
                for a in 0..anchors {
                    let mut rotated = picks.clone();
                    rotated.swap(0, a);
                    out.push(WindowTuple { picks: rotated });
                }
            }
        }
    }
    out
}

/// `⌈(4/ε²)·ln(n·m)⌉`.
pub fn sample_size(epsilon: f64, n: usize, m: usize) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    if n == 0 || m == 0 {
        return Err(Error::Domain("n and m must be positive".into()));
    }
    let v = 4.0 / (epsilon * epsilon) * ((n * m) as f64).ln();
    Ok(v.ceil().max(0.0) as usize)
}

/// Smallest ε whose sample fits `|Σ|^|R| ≤ budget`, if any.
fn min_epsilon_for_budget(sigma: usize, budget: u64, n: usize, m: usize) -> Option<f64> {
    let max_r = (budget as f64).log(sigma as f64).floor();
    if max_r < 1.0 {
        return None;
    }
    let eps = (4.0 * ((n * m) as f64).ln() / max_r).sqrt();
    (eps <= 1.0).then_some(eps)
}

/// `size` positions drawn uniformly with replacement from `0..frame`.
pub fn draw_sample(frame: usize, size: usize, seed: u64) -> PositionSet {
    let mut rng = seed::rng(seed);
    let pos = (0..size).map(|_| rng.gen_range(0..frame)).collect();
    PositionSet::multiset(pos, frame).expect("positions drawn inside the frame")
}

/// For every string, the offset of the window minimizing
/// `d(y, t′|_R)·|P|/|R| + d(anchor|_Q, t′|_Q)`, compared exactly as
/// `d_R·|P| + d_Q·|R|`. Ties go to the smallest offset.
pub(crate) fn select_offsets(
    inst: &SubstringInstance,
    y: &[u8],
    r_abs: &[usize],
    p_len: usize,
    anchor: &[u8],
    q: &[usize],
) -> Vec<usize> {
    let r_len = r_abs.len();
    (0..inst.n())
        .map(|i| {
            let mut best = (usize::MAX, 0);
            for off in 0..inst.offsets(i) {
                let w = inst.window_slice(i, off);
                let d_q = hamming_on(w, anchor, q);
                let score = if r_len == 0 {
                    d_q
                } else {
                    let d_r = r_abs.iter().zip(y).filter(|&(&j, &c)| w[j] != c).count();
                    d_r * p_len + d_q * r_len
                };
                if score < best.0 {
                    best = (score, off);
                }
            }
            best.1
        })
        .collect()
}

/// Picks one window per string guided by the guess `y` of the center on `R`.
///
/// `R` indexes into the free positions `P` (the complement of `Q`), and
/// `anchor_q` is a length-`L` string whose symbols on `Q` are used.
pub fn select_windows(
    inst: &SubstringInstance,
    y: &Seq,
    r: &PositionSet,
    anchor_q: &Seq,
    q: &PositionSet,
) -> Result<Vec<Seq>> {
    let l = inst.window();
    if q.frame() != l {
        return Err(Error::FrameMismatch { frame: q.frame(), len: l });
    }
    if anchor_q.len() != l {
        return Err(Error::LengthMismatch { left: anchor_q.len(), right: l });
    }
    let p = q.complement();
    if r.frame() != p.len() {
        return Err(Error::FrameMismatch { frame: r.frame(), len: p.len() });
    }
    if y.len() != r.len() {
        return Err(Error::LengthMismatch { left: y.len(), right: r.len() });
    }
    if !y.same_alphabet(&inst.strings()[0]) || !anchor_q.same_alphabet(y) {
        return Err(Error::AlphabetMismatch);
    }
    let r_abs: Vec<usize> = r.iter().map(|k| p.positions()[k]).collect();
    let offsets = select_offsets(inst, y.indices(), &r_abs, p.len(), anchor_q.indices(), q.positions());
    Ok(offsets.iter().enumerate().map(|(i, &off)| inst.strings()[i].window(off, l)).collect())
}

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

fn pow_saturating(sigma: usize, k: usize) -> u64 {
    u32::try_from(k).ok().and_then(|k| (sigma as u64).checked_pow(k)).unwrap_or(u64::MAX)
}

/// Best candidate so far: radius and center. Candidates are offered in
/// enumeration order and only a strictly smaller radius replaces the incumbent.
struct Best {
    radius: usize,
    center: Vec<u8>,
}

impl Best {
    fn new() -> Self {
        Self { radius: usize::MAX, center: Vec::new() }
    }

    fn offer(&mut self, inst: &SubstringInstance, center: &[u8]) {
        if let Some(r) = substring_radius_below(inst, center, self.radius) {
            self.radius = r;
            self.center = center.to_vec();
        }
    }

    fn merge(&mut self, other: Best) {
        if other.radius < self.radius {
            *self = other;
        }
    }
}

fn finish(inst: &SubstringInstance, best: Best) -> CenterSolution {
    let (radius, witnesses) = cost_substring_raw(inst, &best.center);
    debug_assert_eq!(radius, best.radius);
    CenterSolution { center: Seq::from_raw(inst.alphabet(), best.center), radius, witnesses }
}

fn run_tuples<F>(tuples: &[WindowTuple], parallel: bool, eval: F) -> Result<Best>
where
    F: Fn(usize, &WindowTuple) -> Result<Best> + Sync,
{
    let results: Vec<Result<Best>> = if parallel {
        tuples.par_iter().enumerate().map(|(k, t)| eval(k, t)).collect()
    } else {
        tuples.iter().enumerate().map(|(k, t)| eval(k, t)).collect()
    };
    let mut best = Best::new();
    for r in results {
        best.merge(r?);
    }
    Ok(best)
}

/// Small-radius algorithm: every window of every string, then every window
/// tuple with every patch of its free positions.
pub fn solve_small_substring(inst: &SubstringInstance, cfg: &SubstringConfig) -> Result<CenterSolution> {
    cfg.validate()?;
    let sigma = inst.alphabet().size();

    let mut best = trivial_windows(inst, 0..inst.n());

    let tuples = window_tuples(inst, cfg.r, cfg.all_anchors);
    let tuple_best = run_tuples(&tuples, cfg.parallel, |_, tuple| {
        let slices = tuple.slices(inst);
        let q = agreement_of_slices(&slices);
        let p = q.complement();
        if pow_saturating(sigma, p.len()) > cfg.y_budget {
            return Err(Error::BudgetExceeded {
                detail: format!("|P| = {} gives {sigma}^{} patches, over budget {}", p.len(), p.len(), cfg.y_budget),
            });
        }
        let mut local = Best::new();
        let mut x = vec![0u8; p.len()];
        let mut center = slices[0].to_vec();
        loop {
            for (&j, &v) in p.positions().iter().zip(&x) {
                center[j] = v;
            }
            local.offer(inst, &center);
            if local.radius == 0 || !odometer(&mut x, sigma as u8) {
                break;
            }
        }
        Ok(local)
    })?;
    best.merge(tuple_best);
    Ok(finish(inst, best))
}

fn trivial_windows(inst: &SubstringInstance, strings: impl Iterator<Item = usize>) -> Best {
    let mut best = Best::new();
    for i in strings {
        for off in 0..inst.offsets(i) {
            best.offer(inst, inst.window_slice(i, off));
        }
    }
    best
}

/// Sampling algorithm (general radius).
pub fn solve_closest_substring(inst: &SubstringInstance, cfg: &SubstringConfig) -> Result<CenterSolution> {
    cfg.validate()?;
    let n = inst.n();
    let m = inst.strings().iter().map(Seq::len).max().unwrap_or(0);
    let l = inst.window();
    let alphabet = inst.alphabet();
    let sigma = alphabet.size();
    let sample = sample_size(cfg.epsilon, n, m)?;
    let rounding = RoundingConfig { epsilon_prime: cfg.epsilon, ..cfg.rounding };

    let mut best = trivial_windows(inst, 0..1);

    let tuples = window_tuples(inst, cfg.r, cfg.all_anchors);
    let tuple_best = run_tuples(&tuples, cfg.parallel, |k, tuple| {
        let tuple_seed = seed::derive(cfg.rng_seed, k as u64);
        let slices = tuple.slices(inst);
        let anchor = slices[0];
        let q = agreement_of_slices(&slices);
        let p = q.complement();
        let mut local = Best::new();
        if p.is_empty() {
            local.offer(inst, anchor);
            return Ok(local);
        }
        let r_abs: Vec<usize> = if sample == 0 || sample >= p.len() {
            p.positions().to_vec()
        } else {
            draw_sample(p.len(), sample, seed::derive(tuple_seed, 0)).iter().map(|j| p.positions()[j]).collect()
        };
        if pow_saturating(sigma, r_abs.len()) > cfg.y_budget {
            let hint = match min_epsilon_for_budget(sigma, cfg.y_budget, n, m) {
                Some(e) => format!("; epsilon >= {e:.4} would fit"),
                None => "; no epsilon in (0, 1] fits".into(),
            };
            return Err(Error::BudgetExceeded {
                detail: format!(
                    "|R| = {} gives {sigma}^{} guesses, over budget {}{hint}",
                    r_abs.len(),
                    r_abs.len(),
                    cfg.y_budget
                ),
            });
        }

        let anchor_seq = Seq::from_raw(alphabet, anchor.to_vec());
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut y = vec![0u8; r_abs.len()];
        let mut y_index: u64 = 0;
        loop {
            let offsets = select_offsets(inst, &y, &r_abs, p.len(), anchor, q.positions());
            if seen.insert(offsets.clone()) {
                let chosen: Vec<Seq> =
                    offsets.iter().enumerate().map(|(i, &off)| inst.strings()[i].window(off, l)).collect();
                let sub = StringInstance::new(chosen)?;
                let problem = build_restricted(&sub, &anchor_seq, &q)?;
                let cfg_y = RoundingConfig { rng_seed: seed::derive(tuple_seed, 1 + y_index), ..rounding };
                let sol = solve_restricted(&problem, &cfg_y)?;
                local.offer(inst, sol.center.indices());
                if local.radius == 0 {
                    break;
                }
            }
            y_index += 1;
            if !odometer(&mut y, sigma as u8) {
                break;
            }
        }
        Ok(local)
    })?;
    best.merge(tuple_best);
    Ok(finish(inst, best))
}

/// Dispatches on `cfg.mode`. `Auto` takes the small-radius path when the best
/// window of any input is already within `log₂ N` (N = input size), and moves
/// on to sampling if that path exceeds its budget.
pub fn solve_substring(inst: &SubstringInstance, cfg: &SubstringConfig) -> Result<CenterSolution> {
    solve_substring_with_mode(inst, cfg).map(|(sol, _)| sol)
}

/// [`solve_substring`], also returning the algorithm that produced the answer.
pub fn solve_substring_with_mode(
    inst: &SubstringInstance,
    cfg: &SubstringConfig,
) -> Result<(CenterSolution, SubstringMode)> {
    match resolve_mode(inst, cfg) {
        SubstringMode::SmallD => match solve_small_substring(inst, cfg) {
            Err(Error::BudgetExceeded { .. }) if cfg.mode == SubstringMode::Auto => {
                Ok((solve_closest_substring(inst, cfg)?, SubstringMode::Sampling))
            }
            r => Ok((r?, SubstringMode::SmallD)),
        },
        _ => Ok((solve_closest_substring(inst, cfg)?, SubstringMode::Sampling)),
    }
}

/// The concrete algorithm `cfg.mode` selects for this instance.
pub fn resolve_mode(inst: &SubstringInstance, cfg: &SubstringConfig) -> SubstringMode {
    match cfg.mode {
        SubstringMode::Auto => {
            let bound = trivial_windows(inst, 0..inst.n()).radius;
            if (bound as f64) <= (inst.input_size() as f64).log2() {
                SubstringMode::SmallD
            } else {
                SubstringMode::Sampling
            }
        }
        m => m,
    }
}
