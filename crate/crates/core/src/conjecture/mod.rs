//! Exhaustive small-instance checkers for perfect-matching covers, edge
//! colourings and nowhere-zero flows, plus the map that carries a perfect
//! matching across a 2-cut reduction.
//!
//! Every search branches deterministically, so "no witness" answers are
//! exhaustive and repeatable.

mod coloring;
mod flow;
mod matching;

pub use coloring::{chromatic_index_at_most, is_snark};
pub use flow::{nowhere_zero_flow, FlowAssignment};
pub use matching::{
    enumerate_perfect_matchings, find_pm_cover, transfer_pm, CoverRule, PerfectMatching,
    COVER_VERTEX_LIMIT, MATCHING_LIMIT,
};
