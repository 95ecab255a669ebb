//! Antipodal distance-regular covers of complete graphs of diameter three.

mod build;
mod params;
mod recognize;
mod scan;
mod solver;
mod system;

pub use build::{build_cover_w, build_cover_w_with};
pub use params::{bound_filter, bound_violations, enumerate_feasible, graph_defects, Bound, CoverDefect, CoverParams};
pub use recognize::{certify, recognize_exact, recognize_value, ExactTriple, RecognizeConfig};
pub use scan::{scan_all, scan_triple, thread_limit, ScanReport, TripleReport, TripleStatus, LIMITATION};
pub use solver::{expand_conjugates, search_cover, solve_cover, CoverSearch, SearchConfig, TorusSolution};
pub use system::{coefficients, expanded_form, system_residual};
