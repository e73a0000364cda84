//! Names, ordering, and per-step budgets of the execution strategies.

use std::fmt;
use std::str::FromStr;

use crate::decompose::DecompMode;
use crate::error::StrategyError;

/// One of the interchangeable parallel drivers.
///
/// All strategies advance the same scheme and, with one exception, produce
/// fields bitwise identical to [`StrategyId::Sequential`]. They differ in
/// how subdomain boundary data moves between workers:
///
/// * `TwoSided*` pass explicit messages through buffered channels;
/// * `Shared*` keep the whole field in one shared array and rely on
///   barriers for visibility;
/// * `OneSided*` keep the field shared but pull halo copies with one-sided
///   block reads.
///
/// [`StrategyId::OneSidedPatchFused`] trades one halo refresh per step for
/// two barriers: its y sweep reuses halo rows fetched before the x sweep,
/// a first-order-in-`dt` approximation rather than an exact reproduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyId {
    Sequential,
    TwoSidedRow,
    TwoSidedPatch,
    SharedNaive,
    SharedPointer,
    SharedBarrier,
    OneSidedHalo,
    OneSidedPatch,
    OneSidedPatchFused,
}

/// Every strategy, in canonical (enum) order.
pub const ALL_STRATEGIES: [StrategyId; 9] = [
    StrategyId::Sequential,
    StrategyId::TwoSidedRow,
    StrategyId::TwoSidedPatch,
    StrategyId::SharedNaive,
    StrategyId::SharedPointer,
    StrategyId::SharedBarrier,
    StrategyId::OneSidedHalo,
    StrategyId::OneSidedPatch,
    StrategyId::OneSidedPatchFused,
];

impl StrategyId {
    /// Stable snake_case name, used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            StrategyId::Sequential => "sequential",
            StrategyId::TwoSidedRow => "two_sided_row",
            StrategyId::TwoSidedPatch => "two_sided_patch",
            StrategyId::SharedNaive => "shared_naive",
            StrategyId::SharedPointer => "shared_pointer",
            StrategyId::SharedBarrier => "shared_barrier",
            StrategyId::OneSidedHalo => "one_sided_halo",
            StrategyId::OneSidedPatch => "one_sided_patch",
            StrategyId::OneSidedPatchFused => "one_sided_patch_fused",
        }
    }

    /// Group barriers each worker crosses per Lie step (the run harness
    /// adds two more around the whole timed loop).
    pub fn barrier_count(self) -> usize {
        match self {
            StrategyId::Sequential | StrategyId::TwoSidedRow | StrategyId::TwoSidedPatch => 0,
            StrategyId::SharedNaive | StrategyId::SharedPointer | StrategyId::OneSidedPatch => 4,
            StrategyId::SharedBarrier
            | StrategyId::OneSidedHalo
            | StrategyId::OneSidedPatchFused => 2,
        }
    }

    /// How the grid is carved up among workers.
    pub fn decomposition(self) -> DecompMode {
        match self {
            StrategyId::Sequential
            | StrategyId::TwoSidedRow
            | StrategyId::SharedNaive
            | StrategyId::SharedPointer
            | StrategyId::SharedBarrier
            | StrategyId::OneSidedHalo => DecompMode::Rows,
            StrategyId::TwoSidedPatch
            | StrategyId::OneSidedPatch
            | StrategyId::OneSidedPatchFused => DecompMode::Patches,
        }
    }

    /// True for the variant whose y sweep runs on pre-x-sweep halo data.
    pub fn reuses_stale_halos(self) -> bool {
        self == StrategyId::OneSidedPatchFused
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyId {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_STRATEGIES
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| StrategyError::UnknownStrategy { name: s.to_owned() })
    }
}
