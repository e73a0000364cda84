//! Ownership partition of a flat index space into contiguous regions.

use crate::error::CommError;

/// A partition of `0..total_len` into one contiguous region per worker.
///
/// Regions may be empty. The even split hands out `total / n` elements per
/// worker and one extra to each of the first `total % n`, so region sizes
/// never differ by more than one.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    /// `offsets[w]..offsets[w + 1]` is worker `w`'s region; `n + 1` entries.
    offsets: Vec<usize>,
}

impl Distribution {
    /// Largest-remainder even split of `total` elements over `n` workers.
    pub fn even_blocks(total: usize, n: usize) -> Result<Self, CommError> {
        if n == 0 {
            return Err(CommError::IncompatibleDistribution {
                reason: "at least one owner required".into(),
            });
        }
        let base = total / n;
        let rem = total % n;
        let mut offsets = Vec::with_capacity(n + 1);
        let mut at = 0;
        offsets.push(at);
        for w in 0..n {
            at += base + usize::from(w < rem);
            offsets.push(at);
        }
        Ok(Distribution { offsets })
    }

    /// Explicit region lengths, one per worker.
    pub fn contiguous(lengths: &[usize]) -> Result<Self, CommError> {
        if lengths.is_empty() {
            return Err(CommError::IncompatibleDistribution {
                reason: "at least one owner required".into(),
            });
        }
        let mut offsets = Vec::with_capacity(lengths.len() + 1);
        let mut at = 0;
        offsets.push(at);
        for len in lengths {
            at += len;
            offsets.push(at);
        }
        Ok(Distribution { offsets })
    }

    pub fn n_owners(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn total_len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Flat element range owned by worker `w`.
    pub fn region(&self, w: usize) -> std::ops::Range<usize> {
        self.offsets[w]..self.offsets[w + 1]
    }

    /// Which worker owns flat element `index`.
    pub fn owner_of(&self, index: usize) -> Result<usize, CommError> {
        if index >= self.total_len() {
            return Err(CommError::IndexOutOfRange {
                index,
                len: self.total_len(),
            });
        }
        // partition_point returns the first offset strictly above `index`;
        // regions are half-open so that offset names the owner + 1.
        let w = self.offsets.partition_point(|&o| o <= index);
        Ok(w - 1)
    }
}
