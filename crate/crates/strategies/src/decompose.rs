//! Carving the grid into per-worker subdomains.
//!
//! Two layouts exist: full-width row bands (one vertical stack of workers)
//! and a near-square grid of rectangular patches. Both split each direction
//! with the largest-remainder rule, so subdomain sizes never differ by more
//! than one row or column.

use std::ops::Range;

use comm_runtime::Distribution;
use euler_core::GridSpec;

use crate::error::StrategyError;

/// Subdomain shape: horizontal bands or a two-dimensional patch grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompMode {
    Rows,
    Patches,
}

/// The factor pair `(pr, pc)` of `n` with `pr <= pc` and `pr` as close to
/// `sqrt(n)` as possible — the patch-grid shape for `n` workers.
pub fn factor_pair(n: usize) -> (usize, usize) {
    let mut a = (n as f64).sqrt().floor() as usize;
    while a > 1 {
        if n.is_multiple_of(a) {
            return (a, n / a);
        }
        a -= 1;
    }
    (1, n)
}

/// Which worker owns which cells, plus the neighbor relations the halo
/// exchanges need.
///
/// Workers are ranked row-major over the patch grid: worker `w` sits at
/// patch row `w / pc`, patch column `w % pc`. Row-band layouts are the
/// `pc == 1` special case.
#[derive(Clone, Debug)]
pub struct DecompositionPlan {
    pub mode: DecompMode,
    /// Patch rows (stacked in y).
    pub pr: usize,
    /// Patch columns (side by side in x).
    pub pc: usize,
    row_bands: Vec<Range<usize>>,
    col_bands: Vec<Range<usize>>,
}

/// Split `grid` over `workers` in the given layout.
///
/// Fails with [`StrategyError::TooManyWorkers`] when some worker would own
/// zero rows or columns.
pub fn decompose(
    grid: &GridSpec,
    workers: usize,
    mode: DecompMode,
) -> Result<DecompositionPlan, StrategyError> {
    if workers == 0 {
        return Err(StrategyError::NoWorkers);
    }
    let (pr, pc) = match mode {
        DecompMode::Rows => (workers, 1),
        DecompMode::Patches => factor_pair(workers),
    };
    if pr > grid.ny || pc > grid.nx {
        return Err(StrategyError::TooManyWorkers {
            workers,
            rows: grid.ny,
            cols: grid.nx,
        });
    }
    let rows = Distribution::even_blocks(grid.ny, pr)?;
    let cols = Distribution::even_blocks(grid.nx, pc)?;
    Ok(DecompositionPlan {
        mode,
        pr,
        pc,
        row_bands: (0..pr).map(|i| rows.region(i)).collect(),
        col_bands: (0..pc).map(|i| cols.region(i)).collect(),
    })
}

impl DecompositionPlan {
    pub fn n_workers(&self) -> usize {
        self.pr * self.pc
    }

    /// `(patch_row, patch_col)` of worker `w`.
    pub fn coords(&self, w: usize) -> (usize, usize) {
        (w / self.pc, w % self.pc)
    }

    /// Global row range owned by worker `w`.
    pub fn rows_of(&self, w: usize) -> Range<usize> {
        self.row_bands[w / self.pc].clone()
    }

    /// Global column range owned by worker `w`.
    pub fn cols_of(&self, w: usize) -> Range<usize> {
        self.col_bands[w % self.pc].clone()
    }

    /// Worker supplying the halo row above `w`'s subdomain, or `None` when
    /// that row is locally resolvable: a physical y boundary, or a periodic
    /// wrap landing back on `w` itself (`pr == 1`).
    pub fn up_neighbor(&self, w: usize, y_periodic: bool) -> Option<usize> {
        let (r, _) = self.coords(w);
        if r + 1 < self.pr {
            Some(w + self.pc)
        } else if y_periodic && self.pr > 1 {
            Some(w - (self.pr - 1) * self.pc)
        } else {
            None
        }
    }

    /// Worker supplying the halo row below `w`'s subdomain (see
    /// [`DecompositionPlan::up_neighbor`] for the `None` cases).
    pub fn down_neighbor(&self, w: usize, y_periodic: bool) -> Option<usize> {
        let (r, _) = self.coords(w);
        if r > 0 {
            Some(w - self.pc)
        } else if y_periodic && self.pr > 1 {
            Some(w + (self.pr - 1) * self.pc)
        } else {
            None
        }
    }

    /// Worker supplying the halo column left of `w`. The x direction is
    /// always periodic, so this is `None` only when the wrap lands back on
    /// `w` itself (`pc == 1`) and the sweep can pad locally.
    pub fn left_neighbor(&self, w: usize) -> Option<usize> {
        if self.pc == 1 {
            return None;
        }
        let (r, c) = self.coords(w);
        Some(r * self.pc + (c + self.pc - 1) % self.pc)
    }

    /// Worker supplying the halo column right of `w` (see
    /// [`DecompositionPlan::left_neighbor`]).
    pub fn right_neighbor(&self, w: usize) -> Option<usize> {
        if self.pc == 1 {
            return None;
        }
        let (r, c) = self.coords(w);
        Some(r * self.pc + (c + 1) % self.pc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nx: usize, ny: usize) -> GridSpec {
        GridSpec::new(nx, ny).unwrap()
    }

    #[test]
    fn factor_pairs_hug_the_square_root() {
        assert_eq!(factor_pair(1), (1, 1));
        assert_eq!(factor_pair(2), (1, 2));
        assert_eq!(factor_pair(4), (2, 2));
        assert_eq!(factor_pair(6), (2, 3));
        assert_eq!(factor_pair(8), (2, 4));
        assert_eq!(factor_pair(12), (3, 4));
        assert_eq!(factor_pair(16), (4, 4));
        assert_eq!(factor_pair(7), (1, 7));
    }

    #[test]
    fn four_row_bands_of_a_tall_grid() {
        // 1024 rows x 512 columns split four ways: four bands of 256 rows.
        let plan = decompose(&grid(512, 1024), 4, DecompMode::Rows).unwrap();
        assert_eq!((plan.pr, plan.pc), (4, 1));
        for w in 0..4 {
            assert_eq!(plan.rows_of(w), w * 256..(w + 1) * 256);
            assert_eq!(plan.cols_of(w), 0..512);
        }
        // Chain neighbors, none beyond the physical y boundaries.
        assert_eq!(plan.up_neighbor(1, false), Some(2));
        assert_eq!(plan.down_neighbor(1, false), Some(0));
        assert_eq!(plan.down_neighbor(0, false), None);
        assert_eq!(plan.up_neighbor(3, false), None);
        // Periodic y closes the chain into a ring.
        assert_eq!(plan.down_neighbor(0, true), Some(3));
        assert_eq!(plan.up_neighbor(3, true), Some(0));
    }

    #[test]
    fn uneven_row_split_differs_by_at_most_one() {
        let plan = decompose(&grid(4, 10), 4, DecompMode::Rows).unwrap();
        let lens: Vec<usize> = (0..4).map(|w| plan.rows_of(w).len()).collect();
        assert_eq!(lens, vec![3, 3, 2, 2]);
        assert_eq!(plan.rows_of(2), 6..8);
    }

    #[test]
    fn too_many_workers_for_the_rows() {
        let err = decompose(&grid(8, 8), 16, DecompMode::Rows).unwrap_err();
        assert!(matches!(
            err,
            StrategyError::TooManyWorkers {
                workers: 16,
                rows: 8,
                cols: 8
            }
        ));
    }

    #[test]
    fn zero_workers_is_rejected() {
        assert!(matches!(
            decompose(&grid(8, 8), 0, DecompMode::Rows),
            Err(StrategyError::NoWorkers)
        ));
    }

    #[test]
    fn sixteen_patches_form_a_square() {
        let plan = decompose(&grid(64, 64), 16, DecompMode::Patches).unwrap();
        assert_eq!((plan.pr, plan.pc), (4, 4));
        assert_eq!(plan.coords(5), (1, 1));
        assert_eq!(plan.rows_of(5), 16..32);
        assert_eq!(plan.cols_of(5), 16..32);
        assert_eq!(plan.left_neighbor(5), Some(4));
        assert_eq!(plan.right_neighbor(5), Some(6));
        assert_eq!(plan.up_neighbor(5, false), Some(9));
        assert_eq!(plan.down_neighbor(5, false), Some(1));
        // x wraps periodically across the domain edge.
        assert_eq!(plan.left_neighbor(4), Some(7));
        assert_eq!(plan.right_neighbor(7), Some(4));
    }

    #[test]
    fn single_patch_row_resolves_vertical_halos_locally() {
        // Two workers factor as 1x2: side-by-side patches, no vertical cut.
        let plan = decompose(&grid(16, 16), 2, DecompMode::Patches).unwrap();
        assert_eq!((plan.pr, plan.pc), (1, 2));
        assert_eq!(plan.up_neighbor(0, true), None);
        assert_eq!(plan.down_neighbor(0, true), None);
        assert_eq!(plan.left_neighbor(0), Some(1));
        assert_eq!(plan.right_neighbor(0), Some(1));
    }

    #[test]
    fn patch_grid_too_fine_for_the_columns() {
        // 16 workers need 4 columns of patches; a 3-column grid cannot.
        assert!(matches!(
            decompose(&grid(3, 64), 16, DecompMode::Patches),
            Err(StrategyError::TooManyWorkers { .. })
        ));
    }
}
