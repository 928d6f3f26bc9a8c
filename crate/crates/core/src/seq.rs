//! Immutable symbol strings and the Hamming geometry on them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::positions::PositionSet;

/// A string over an [`Alphabet`], stored as symbol indices.
#[derive(Clone)]
pub struct Seq {
    alphabet: Arc<Alphabet>,
    data: Vec<u8>,
}

impl Seq {
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let data = text.chars().map(|c| alphabet.index(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { alphabet: Arc::clone(alphabet), data })
    }

    pub fn from_indices(alphabet: &Arc<Alphabet>, data: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = data.iter().find(|&&x| x as usize >= alphabet.size()) {
            return Err(Error::SymbolIndex { index: bad as usize, size: alphabet.size() });
        }
        Ok(Self { alphabet: Arc::clone(alphabet), data })
    }

    pub(crate) fn from_raw(alphabet: &Arc<Alphabet>, data: Vec<u8>) -> Self {
        debug_assert!(data.iter().all(|&x| (x as usize) < alphabet.size()));
        Self { alphabet: Arc::clone(alphabet), data }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn indices(&self) -> &[u8] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Length-`len` substring starting at `offset`.
    pub fn window(&self, offset: usize, len: usize) -> Seq {
        Self::from_raw(&self.alphabet, self.data[offset..offset + len].to_vec())
    }

    pub fn same_alphabet(&self, other: &Seq) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }
}

impl PartialEq for Seq {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.same_alphabet(other)
    }
}

impl Eq for Seq {}

impl PartialOrd for Seq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic by the alphabet's declared symbol order.
impl Ord for Seq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.data.cmp(&other.data)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols = self.alphabet.symbols();
        for &x in &self.data {
            write!(f, "{}", symbols[x as usize])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq(\"{self}\")")
    }
}

pub(crate) fn hamming_slices(a: &[u8], b: &[u8]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Hamming distance restricted to the positions of `positions` (with multiplicity).
pub(crate) fn hamming_on(a: &[u8], b: &[u8], positions: &[usize]) -> usize {
    positions.iter().filter(|&&j| a[j] != b[j]).count()
}

fn check_pair(a: &Seq, b: &Seq) -> Result<()> {
    if !a.same_alphabet(b) {
        return Err(Error::AlphabetMismatch);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

pub fn hamming(a: &Seq, b: &Seq) -> Result<usize> {
    check_pair(a, b)?;
    Ok(hamming_slices(&a.data, &b.data))
}

/// `s|_T`: the symbols of `s` at the positions of `t`, in order.
pub fn restrict(s: &Seq, t: &PositionSet) -> Result<Seq> {
    if t.frame() != s.len() {
        return Err(Error::FrameMismatch { frame: t.frame(), len: s.len() });
    }
    Ok(Seq::from_raw(&s.alphabet, t.iter().map(|j| s.data[j]).collect()))
}

/// Positions where every input sequence carries the same symbol.
pub fn agreement_positions(ts: &[Seq]) -> Result<PositionSet> {
    let first = ts.first().ok_or(Error::EmptyInput)?;
    for t in &ts[1..] {
        check_pair(first, t)?;
    }
    let slices: Vec<&[u8]> = ts.iter().map(|t| t.indices()).collect();
    Ok(agreement_of_slices(&slices))
}

pub(crate) fn agreement_of_slices(ts: &[&[u8]]) -> PositionSet {
    let m = ts[0].len();
    let q = (0..m).filter(|&j| ts[1..].iter().all(|t| t[j] == ts[0][j])).collect();
    PositionSet::from_sorted_unchecked(q, m)
}

/// The string equal to `patch` on `p` and to `base` everywhere else.
pub fn compose(base: &Seq, patch: &Seq, p: &PositionSet) -> Result<Seq> {
    if !base.same_alphabet(patch) {
        return Err(Error::AlphabetMismatch);
    }
    if p.is_multiset() {
        return Err(Error::Domain("compose needs a plain position set".into()));
    }
    if p.frame() != base.len() {
        return Err(Error::FrameMismatch { frame: p.frame(), len: base.len() });
    }
    if patch.len() != p.len() {
        return Err(Error::SizeMismatch { patch: patch.len(), positions: p.len() });
    }
    Ok(Seq::from_raw(&base.alphabet, compose_slices(&base.data, &patch.data, p.positions())))
}

pub(crate) fn compose_slices(base: &[u8], patch: &[u8], positions: &[usize]) -> Vec<u8> {
    let mut out = base.to_vec();
    for (&j, &x) in positions.iter().zip(patch) {
        out[j] = x;
    }
    out
}
