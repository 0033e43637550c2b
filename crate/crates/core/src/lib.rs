//! Induced poset saturation in the Boolean lattice.
//!
//! Families of subsets of `[n]` are checked for induced copies of a small
//! poset, completed greedily to saturated families, searched exhaustively for
//! the smallest saturated size, and run through certificate-style checks of
//! the known lower bounds.

pub mod cli;
pub mod embedding;
pub mod error;
pub mod hasse;
pub mod model;
pub mod oracle;
pub mod saturation;
pub mod solver;
pub mod suite;
pub mod theorems;

pub use embedding::{count_induced_copies, find_induced_copy, EmbeddingSearch, EmbeddingWitness};
pub use error::{Error, Result};
pub use model::{
    antichain, butterfly, chain, complete_bipartite_poset, n_poset, subset_relation, validate_poset,
    GroundSet, PosetSpec, Relation, SetFamily, SubsetMask, MAX_GROUND,
};
pub use saturation::{
    butterfly_construction, greedy_saturate, is_free, is_saturated, k2k_seed, kkk_seed,
    n_construction, saturation_report, saturation_report_fail_fast, CandidateOrder,
    SaturationReport,
};
pub use solver::{
    enumerate_saturated_families, exact_sat_star, random_greedy_family,
    upper_bound_via_random_greedy, SolveResult,
};
pub use theorems::{
    assign_chevron_to_pair, assign_chevron_to_singleton, difference_pair_cover, lemma1_check,
    verify_prop4, verify_theorem2, verify_theorem3, Chevron, TheoremReport,
};
