//! Type II and complex Hadamard matrices in the adjacency algebra of a strongly regular graph.

mod build;
mod families;
mod grid;
mod solve;

pub use build::{build_w, build_w_with, conference_to_hadamard, potts, Branch, PottsMatrix};
pub use families::{classify_flat, family_params, family_solutions, AppliedTo, FamilyId, FlatFamily};
pub use grid::{grid_scan, GridReport};
pub use solve::{
    case_e_quadratic, design_lambda, filter_unimodular, solve_typeii, solve_typeii_report, Case, CaseEQuadratic,
    SolutionRecord, TypeIiSolutions,
};
