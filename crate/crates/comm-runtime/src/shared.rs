//! A shared 2D array of 4-component cells with per-worker ownership.
//!
//! The array emulates a partitioned global address space at desk scale:
//! one allocation, visible to every worker, split into contiguous regions
//! with exactly one owner each. Owners mutate their region through
//! [`SharedArray2D::local_view`]; anyone may copy elements out with the
//! one-sided [`SharedArray2D::get_block`] / [`SharedArray2D::get_strided`]
//! (or peek single cells with [`SharedArray2D::global_read`]) without the
//! owner taking part.
//!
//! # Synchronization contract
//!
//! The array performs no locking of its own. Callers must separate writes
//! to a region from any overlapping access by other workers with a
//! happens-before edge — in this crate, the group barrier. The strategy
//! drivers are written exactly this way: write phases and remote-read
//! phases alternate between barriers. Violating the discipline is a data
//! race; the debug-build tests exercise every access pattern the drivers
//! use.

use crate::dist::Distribution;
use crate::error::CommError;
use std::cell::UnsafeCell;
use std::ops::{Deref, DerefMut, Range};
use std::sync::atomic::{AtomicBool, Ordering};

/// One cell: four conserved or primitive components.
pub type Cell4 = [f64; 4];

pub struct SharedArray2D {
    rows: usize,
    cols: usize,
    dist: Distribution,
    // Per-element cells so no access ever forms a reference to the whole
    // buffer; every read and write goes through one element's raw pointer.
    cells: Box<[UnsafeCell<Cell4>]>,
    view_taken: Vec<AtomicBool>,
}

// Safety: all access to `cells` goes through raw pointers below; the
// synchronization contract in the module docs makes conflicting accesses
// the caller's responsibility, exactly like any shared-memory window.
unsafe impl Sync for SharedArray2D {}

impl SharedArray2D {
    /// Array of `rows * cols` cells owned according to `dist`.
    pub fn new(
        rows: usize,
        cols: usize,
        dist: Distribution,
        fill: Cell4,
    ) -> Result<Self, CommError> {
        if dist.total_len() != rows * cols {
            return Err(CommError::IncompatibleDistribution {
                reason: format!(
                    "distribution covers {} cells, array has {}",
                    dist.total_len(),
                    rows * cols
                ),
            });
        }
        let n = dist.n_owners();
        Ok(SharedArray2D {
            rows,
            cols,
            dist,
            cells: (0..rows * cols)
                .map(|_| UnsafeCell::new(fill))
                .collect::<Vec<_>>()
                .into_boxed_slice(),
            view_taken: (0..n).map(|_| AtomicBool::new(false)).collect(),
        })
    }

    /// Row-major array whose rows are dealt to `n` workers in contiguous
    /// blocks, sizes balanced to within one row.
    pub fn with_even_row_blocks(
        rows: usize,
        cols: usize,
        n: usize,
        fill: Cell4,
    ) -> Result<Self, CommError> {
        let row_dist = Distribution::even_blocks(rows, n)?;
        let lengths: Vec<usize> = (0..n).map(|w| row_dist.region(w).len() * cols).collect();
        Self::new(rows, cols, Distribution::contiguous(&lengths)?, fill)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dist(&self) -> &Distribution {
        &self.dist
    }

    /// Flat index of `(row, col)` in row-major order.
    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.rows && col < self.cols);
        row * self.cols + col
    }

    #[inline]
    fn cell_ptr(&self, index: usize) -> *mut Cell4 {
        self.cells[index].get()
    }

    fn check_index(&self, index: usize) -> Result<(), CommError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(CommError::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// Copy one cell out, wherever it lives.
    pub fn global_read(&self, index: usize) -> Result<Cell4, CommError> {
        self.check_index(index)?;
        Ok(unsafe { std::ptr::read(self.cell_ptr(index)) })
    }

    /// Overwrite one cell. The caller is responsible for writing only cells
    /// no other worker touches concurrently.
    pub fn global_write(&self, index: usize, value: Cell4) -> Result<(), CommError> {
        self.check_index(index)?;
        unsafe { std::ptr::write(self.cell_ptr(index), value) };
        Ok(())
    }

    /// One-sided copy of a contiguous cell range. The range must lie inside
    /// a single owner's region: a transfer models one GET from one remote.
    pub fn get_block(&self, range: Range<usize>) -> Result<Vec<Cell4>, CommError> {
        if range.is_empty() {
            return Ok(Vec::new());
        }
        if range.end > self.len() {
            return Err(CommError::IndexOutOfRange {
                index: range.end - 1,
                len: self.len(),
            });
        }
        let owner = self.dist.owner_of(range.start)?;
        if range.end > self.dist.region(owner).end {
            return Err(CommError::SpansOwners {
                start: range.start,
                end: range.end,
            });
        }
        let mut out = Vec::with_capacity(range.len());
        for i in range {
            out.push(unsafe { std::ptr::read(self.cell_ptr(i)) });
        }
        Ok(out)
    }

    /// One-sided copy of `count` cells starting at `start`, `stride` cells
    /// apart (a column of a row-major block, for instance). Every element
    /// must belong to the same owner.
    pub fn get_strided(
        &self,
        start: usize,
        stride: usize,
        count: usize,
    ) -> Result<Vec<Cell4>, CommError> {
        if count == 0 {
            return Ok(Vec::new());
        }
        assert!(stride > 0, "stride must be positive");
        let last = start + stride * (count - 1);
        if last >= self.len() {
            return Err(CommError::IndexOutOfRange {
                index: last,
                len: self.len(),
            });
        }
        let owner = self.dist.owner_of(start)?;
        if last >= self.dist.region(owner).end {
            return Err(CommError::SpansOwners {
                start,
                end: last + 1,
            });
        }
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push(unsafe { std::ptr::read(self.cell_ptr(start + stride * k)) });
        }
        Ok(out)
    }

    /// Mutable access to the caller's own region. Exactly one live view per
    /// worker; a second request fails instead of aliasing.
    pub fn local_view(&self, caller: usize, owner: usize) -> Result<LocalView<'_>, CommError> {
        if caller != owner {
            return Err(CommError::NotOwner { caller, owner });
        }
        if owner >= self.dist.n_owners() {
            return Err(CommError::InvalidRank {
                rank: owner,
                n: self.dist.n_owners(),
            });
        }
        if self.view_taken[owner].swap(true, Ordering::Acquire) {
            return Err(CommError::AlreadyBorrowed { worker: owner });
        }
        let region = self.dist.region(owner);
        let ptr = if region.is_empty() {
            std::ptr::NonNull::dangling().as_ptr()
        } else {
            self.cell_ptr(region.start)
        };
        Ok(LocalView {
            ptr,
            len: region.len(),
            flag: &self.view_taken[owner],
        })
    }

    /// Copy the whole array out. Only meaningful once no worker is writing
    /// any more (typically after the group has been joined).
    pub fn to_vec(&self) -> Vec<Cell4> {
        (0..self.len())
            .map(|i| unsafe { std::ptr::read(self.cell_ptr(i)) })
            .collect()
    }
}

/// Exclusive view of one worker's region, released on drop.
#[derive(Debug)]
pub struct LocalView<'a> {
    ptr: *mut Cell4,
    len: usize,
    flag: &'a AtomicBool,
}

impl Deref for LocalView<'_> {
    type Target = [Cell4];
    fn deref(&self) -> &[Cell4] {
        unsafe { std::slice::from_raw_parts(self.ptr, self.len) }
    }
}

impl DerefMut for LocalView<'_> {
    fn deref_mut(&mut self) -> &mut [Cell4] {
        unsafe { std::slice::from_raw_parts_mut(self.ptr, self.len) }
    }
}

impl Drop for LocalView<'_> {
    fn drop(&mut self) {
        self.flag.store(false, Ordering::Release);
    }
}

// Safety: the view is an exclusive window onto plain floats.
unsafe impl Send for LocalView<'_> {}
