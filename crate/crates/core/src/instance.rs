//! Problem instances, solutions, and cost evaluation.

use std::sync::Arc;

use num_rational::Ratio;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::seq::{hamming_slices, Seq};

/// `n` strings of a common length `m` over one alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct StringInstance {
    alphabet: Arc<Alphabet>,
    strings: Vec<Seq>,
    m: usize,
}

impl StringInstance {
    pub fn new(strings: Vec<Seq>) -> Result<Self> {
        let first = strings.first().ok_or(Error::EmptyInput)?;
        let m = first.len();
        if m == 0 {
            return Err(Error::Domain("strings must be non-empty".into()));
        }
        let alphabet = Arc::clone(first.alphabet());
        for s in &strings[1..] {
            if !s.same_alphabet(first) {
                return Err(Error::AlphabetMismatch);
            }
            if s.len() != m {
                return Err(Error::LengthMismatch { left: m, right: s.len() });
            }
        }
        Ok(Self { alphabet, strings, m })
    }

    pub fn parse(alphabet: &Arc<Alphabet>, strings: &[&str]) -> Result<Self> {
        Self::new(strings.iter().map(|s| Seq::parse(alphabet, s)).collect::<Result<_>>()?)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn strings(&self) -> &[Seq] {
        &self.strings
    }

    pub fn n(&self) -> usize {
        self.strings.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// `n` strings of arbitrary length plus a target window length `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstringInstance {
    alphabet: Arc<Alphabet>,
    strings: Vec<Seq>,
    window: usize,
}

impl SubstringInstance {
    pub fn new(strings: Vec<Seq>, window: usize) -> Result<Self> {
        let first = strings.first().ok_or(Error::EmptyInput)?;
        if window == 0 {
            return Err(Error::Domain("window length must be at least 1".into()));
        }
        let alphabet = Arc::clone(first.alphabet());
        for (index, s) in strings.iter().enumerate() {
            if !s.same_alphabet(first) {
                return Err(Error::AlphabetMismatch);
            }
            if s.len() < window {
                return Err(Error::WindowTooLong { window, index, len: s.len() });
            }
        }
        Ok(Self { alphabet, strings, window })
    }

    pub fn parse(alphabet: &Arc<Alphabet>, strings: &[&str], window: usize) -> Result<Self> {
        Self::new(strings.iter().map(|s| Seq::parse(alphabet, s)).collect::<Result<_>>()?, window)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn strings(&self) -> &[Seq] {
        &self.strings
    }

    pub fn n(&self) -> usize {
        self.strings.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of length-`L` windows of string `i`.
    pub fn offsets(&self, i: usize) -> usize {
        self.strings[i].len() - self.window + 1
    }

    /// Total number of symbols in the input.
    pub fn input_size(&self) -> usize {
        self.strings.iter().map(Seq::len).sum()
    }

    pub(crate) fn window_slice(&self, i: usize, offset: usize) -> &[u8] {
        &self.strings[i].indices()[offset..offset + self.window]
    }
}

impl From<&StringInstance> for SubstringInstance {
    fn from(inst: &StringInstance) -> Self {
        Self { alphabet: Arc::clone(&inst.alphabet), strings: inst.strings.clone(), window: inst.m }
    }
}

/// A center string with its radius and, per input, the 0-based offset of the
/// matched window (always 0 for Closest String).
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSolution {
    pub center: Seq,
    pub radius: usize,
    pub witnesses: Vec<usize>,
}

pub fn cost_string(inst: &StringInstance, center: &Seq) -> Result<usize> {
    if !center.same_alphabet(&inst.strings[0]) {
        return Err(Error::AlphabetMismatch);
    }
    if center.len() != inst.m {
        return Err(Error::LengthMismatch { left: center.len(), right: inst.m });
    }
    Ok(cost_string_raw(inst, center.indices()))
}

pub(crate) fn cost_string_raw(inst: &StringInstance, center: &[u8]) -> usize {
    inst.strings.iter().map(|s| hamming_slices(s.indices(), center)).max().unwrap_or(0)
}

/// Max over strings of the best-window distance, with the chosen offsets
/// (ties resolve to the smallest offset).
pub fn cost_substring(inst: &SubstringInstance, center: &Seq) -> Result<(usize, Vec<usize>)> {
    if !center.same_alphabet(&inst.strings[0]) {
        return Err(Error::AlphabetMismatch);
    }
    if center.len() != inst.window {
        return Err(Error::LengthMismatch { left: center.len(), right: inst.window });
    }
    Ok(cost_substring_raw(inst, center.indices()))
}

pub(crate) fn cost_substring_raw(inst: &SubstringInstance, center: &[u8]) -> (usize, Vec<usize>) {
    let mut radius = 0;
    let witnesses = (0..inst.n())
        .map(|i| {
            let (d, off) = best_window(inst.strings[i].indices(), center);
            radius = radius.max(d);
            off
        })
        .collect();
    (radius, witnesses)
}

/// Radius of `center` if it is below `limit`, otherwise `None`.
pub(crate) fn substring_radius_below(inst: &SubstringInstance, center: &[u8], limit: usize) -> Option<usize> {
    let l = center.len();
    let mut radius = 0;
    for s in &inst.strings {
        let s = s.indices();
        let mut best = limit;
        for off in 0..=s.len() - l {
            let mut d = 0;
            for (x, y) in s[off..off + l].iter().zip(center) {
                if x != y {
                    d += 1;
                    if d >= best {
                        break;
                    }
                }
            }
            best = best.min(d);
            if best <= radius {
                break;
            }
        }
        if best >= limit {
            return None;
        }
        radius = radius.max(best);
    }
    Some(radius)
}

/// Closest window of `s` to `center`: (distance, smallest offset).
pub(crate) fn best_window(s: &[u8], center: &[u8]) -> (usize, usize) {
    let l = center.len();
    let mut best = (usize::MAX, 0);
    for off in 0..=s.len() - l {
        let mut d = 0;
        for (x, y) in s[off..off + l].iter().zip(center) {
            if x != y {
                d += 1;
                if d >= best.0 {
                    break;
                }
            }
        }
        if d < best.0 {
            best = (d, off);
            if d == 0 {
                break;
            }
        }
    }
    best
}

/// Max pairwise distance divided by a reference radius.
pub fn rho0_diagnostic(ts: &[Seq], d_ref: usize) -> Result<Ratio<usize>> {
    if d_ref == 0 {
        return Err(Error::Domain("reference radius must be positive".into()));
    }
    let first = ts.first().ok_or(Error::EmptyInput)?;
    for t in ts {
        if !t.same_alphabet(first) {
            return Err(Error::AlphabetMismatch);
        }
        if t.len() != first.len() {
            return Err(Error::LengthMismatch { left: first.len(), right: t.len() });
        }
    }
    let mut max = 0;
    for (i, a) in ts.iter().enumerate() {
        for b in &ts[i + 1..] {
            max = max.max(hamming_slices(a.indices(), b.indices()));
        }
    }
    Ok(Ratio::new(max, d_ref))
}
