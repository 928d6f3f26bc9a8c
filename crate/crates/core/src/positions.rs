use crate::error::{Error, Result};

/// Sorted 0-based positions within a window of length `frame`.
///
/// A plain set has strictly increasing positions; a multiset (used for the
/// random sample of positions) may repeat them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionSet {
    positions: Vec<usize>,
    multiset: bool,
    frame: usize,
}

impl PositionSet {
    /// Plain set. Input may be unsorted but must not contain duplicates.
    pub fn new(mut positions: Vec<usize>, frame: usize) -> Result<Self> {
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        Self::check_frame(&positions, frame)?;
        Ok(Self { positions, multiset: false, frame })
    }

    pub fn multiset(mut positions: Vec<usize>, frame: usize) -> Result<Self> {
        positions.sort_unstable();
        Self::check_frame(&positions, frame)?;
        Ok(Self { positions, multiset: true, frame })
    }

    pub(crate) fn from_sorted_unchecked(positions: Vec<usize>, frame: usize) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(positions.last().is_none_or(|&p| p < frame));
        Self { positions, multiset: false, frame }
    }

    pub fn empty(frame: usize) -> Self {
        Self { positions: Vec::new(), multiset: false, frame }
    }

    pub fn full(frame: usize) -> Self {
        Self { positions: (0..frame).collect(), multiset: false, frame }
    }

    fn check_frame(positions: &[usize], frame: usize) -> Result<()> {
        match positions.last() {
            Some(&p) if p >= frame => Err(Error::PositionOutOfFrame { position: p, frame }),
            _ => Ok(()),
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn frame(&self) -> usize {
        self.frame
    }

    pub fn is_multiset(&self) -> bool {
        self.multiset
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// Positions of the frame not in this set. Multiplicity is ignored.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.frame.saturating_sub(self.positions.len()));
        let mut it = self.positions.iter().peekable();
        for p in 0..self.frame {
            let mut hit = false;
            while let Some(&&q) = it.peek() {
                if q == p {
                    hit = true;
                    it.next();
                } else {
                    break;
                }
            }
            if !hit {
                out.push(p);
            }
        }
        Self::from_sorted_unchecked(out, self.frame)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }

    /// Renders positions 1-based, the convention used for all I/O.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_partitions_frame() {
        let q = PositionSet::new(vec![3, 0, 5], 7).unwrap();
        let p = q.complement();
        assert_eq!(p.positions(), &[1, 2, 4, 6]);
        assert_eq!(p.complement(), q);
        assert_eq!(PositionSet::empty(3).complement(), PositionSet::full(3));
    }

    #[test]
    fn multiset_keeps_repeats() {
        let r = PositionSet::multiset(vec![3, 1, 1], 4).unwrap();
        assert_eq!(r.positions(), &[1, 1, 3]);
        assert!(r.is_multiset());
        assert_eq!(r.complement().positions(), &[0, 2]);
    }

    #[test]
    fn frame_and_duplicates_are_checked() {
        assert_eq!(
            PositionSet::new(vec![4], 4),
            Err(Error::PositionOutOfFrame { position: 4, frame: 4 })
        );
        assert_eq!(PositionSet::new(vec![1, 1], 4), Err(Error::NotStrictlyIncreasing));
    }
}
