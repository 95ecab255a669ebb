//! The full pipeline over all feasible triples up to a bound on `n`.

use rayon::prelude::*;
use serde::Serialize;

use super::params::{bound_violations, enumerate_feasible, graph_defects, Bound, CoverDefect, CoverParams};
use super::recognize::{recognize_exact, RecognizeConfig};
use super::solver::{search_cover, SearchConfig, TorusSolution};

pub const LIMITATION: &str = "Root finding is multi-start local search; it cannot certify that no \
other roots exist. Certified solutions are exact, absence of solutions is not.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TripleStatus {
    /// Skipped because a necessary inequality fails.
    BoundEliminated { bounds: Vec<Bound> },
    /// Roots exist, but no cover with these parameters does.
    Infeasible { defects: Vec<CoverDefect> },
    NoSolution,
    Certified,
    /// Roots were found but none could be proven exactly.
    Uncertified,
    PossibleCurve,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub n: u64,
    pub r: u64,
    pub c2: u64,
    pub delta: i64,
    pub a1: i64,
    pub theta: f64,
    pub tau: f64,
    #[serde(flatten)]
    pub status: TripleStatus,
    /// Violated inequalities, also recorded when the filter is off.
    pub violated_bounds: Vec<Bound>,
    pub distinct_roots: usize,
    pub certified_roots: usize,
    pub solutions: Vec<TorusSolution>,
}

impl TripleReport {
    pub fn triple(&self) -> (u64, u64, u64) {
        (self.n, self.r, self.c2)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n_max: u64,
    pub limitation: &'static str,
    pub search: SearchConfig,
    pub recognize: RecognizeConfig,
    pub triples: Vec<TripleReport>,
}

impl ScanReport {
    pub fn certified_triples(&self) -> Vec<(u64, u64, u64)> {
        self.with_status(|s| *s == TripleStatus::Certified)
    }

    pub fn eliminated_triples(&self) -> Vec<(u64, u64, u64)> {
        self.with_status(|s| matches!(s, TripleStatus::BoundEliminated { .. }))
    }

    pub fn get(&self, t: (u64, u64, u64)) -> Option<&TripleReport> {
        self.triples.iter().find(|r| r.triple() == t)
    }

    fn with_status(&self, f: impl Fn(&TripleStatus) -> bool) -> Vec<(u64, u64, u64)> {
        self.triples.iter().filter(|r| f(&r.status)).map(TripleReport::triple).collect()
    }
}

pub fn scan_triple(p: &CoverParams, cfg: &SearchConfig, rcfg: &RecognizeConfig) -> TripleReport {
    let bounds = bound_violations(p);
    let mut report = TripleReport {
        n: p.n,
        r: p.r,
        c2: p.c2,
        delta: p.delta,
        a1: p.a1,
        theta: p.theta_f64(),
        tau: p.tau_f64(),
        status: TripleStatus::NoSolution,
        violated_bounds: bounds.clone(),
        distinct_roots: 0,
        certified_roots: 0,
        solutions: vec![],
    };
    if cfg.bound_filter && !bounds.is_empty() {
        report.status = TripleStatus::BoundEliminated { bounds };
        return report;
    }
    let search = search_cover(p, cfg);
    report.distinct_roots = search.distinct_roots;
    if search.possible_curve {
        report.status = TripleStatus::PossibleCurve;
        return report;
    }
    let mut sols = search.solutions;
    for s in &mut sols {
        s.exact = recognize_exact(p, s, rcfg);
    }
    report.certified_roots =
        sols.iter().filter(|s| s.exact.is_some()).map(|s| 1 + s.conjugate_distinct as usize).sum();
    let defects = graph_defects(p);
    report.status = if sols.is_empty() {
        TripleStatus::NoSolution
    } else if !defects.is_empty() {
        TripleStatus::Infeasible { defects }
    } else if report.certified_roots > 0 {
        TripleStatus::Certified
    } else {
        TripleStatus::Uncertified
    };
    report.solutions = sols;
    report
}

/// Runs every feasible triple with `n <= n_max`; `HADAMAT_THREADS` caps the worker count.
pub fn scan_all(n_max: u64, cfg: &SearchConfig, rcfg: &RecognizeConfig) -> ScanReport {
    let params = enumerate_feasible(n_max);
    let run = || -> Vec<TripleReport> { params.par_iter().map(|p| scan_triple(p, cfg, rcfg)).collect() };
    let mut triples = match thread_limit() {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };
    triples.sort_by_key(TripleReport::triple);
    ScanReport { n_max, limitation: LIMITATION, search: cfg.clone(), recognize: rcfg.clone(), triples }
}

pub fn thread_limit() -> Option<usize> {
    std::env::var("HADAMAT_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}
