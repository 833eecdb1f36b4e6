//! Rotation r-graphs.
//!
//! Loopless multigraph machinery for r-graphs of odd regularity: deciding the
//! r-graph property, recognising `T_i^r` spanning trees and rotational
//! automorphisms, the edge- and leaf-expansions, 2-cut reductions, and the
//! blow-up pipeline that turns any r-graph into a simple rotation r-graph
//! together with a reduction script leading back to the input. The
//! [`conjecture`] module holds exhaustive small-instance checkers for
//! perfect-matching covers, edge colourings and nowhere-zero flows.

pub mod build;
pub mod certify;
pub mod conjecture;
pub mod corpus;
mod error;
pub mod iso;
mod maxflow;
pub mod mgf;
pub mod mgraph;
pub mod shape;
pub mod surgery;

pub use build::{
    assemble, base_rotation_graph, bipartite_contraction, construct, step1_expand, Assembly,
    AssemblyPlan, Construction, HistGraph, RotationGraph,
};
pub use certify::{
    is_even_graph, is_r_graph, min_odd_cut, rizzi_split, OddCutCertificate, OddCutMethod,
};
pub use conjecture::{
    chromatic_index_at_most, enumerate_perfect_matchings, find_pm_cover, is_snark,
    nowhere_zero_flow, transfer_pm, CoverRule, FlowAssignment, PerfectMatching,
};
pub use error::{Error, Result};
pub use iso::are_isomorphic;
pub use mgf::{read_mgf, write_mgf, MgfDocument};
pub use mgraph::{EdgeId, MultiGraph, Relabel, RootedSpanningTree, VertexId};
pub use shape::{
    build_t_i_r, find_rotational_automorphism, is_automorphism, is_hist, is_rotational,
    recognize_t_i_r, t_i_r_order, verify_hist_partition, TirShape, VertexPermutation,
};
pub use surgery::{
    apply_script, edge_expansion, find_two_cuts, leaf_expansion, two_cut_reduction,
    ReductionScript, ReductionStep,
};
