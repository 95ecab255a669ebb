use std::fs;
use std::path::Path;

use hadamat::covers::{build_cover_w, expand_conjugates, scan_all, scan_triple, CoverParams, RecognizeConfig, SearchConfig};
use hadamat::graphs::{build_named, cover_params, is_feasible, spectrum, srg_params, Graph, GraphFamily, GraphJson, SrgParams};
use hadamat::io::{read_matrix, to_csv, write_matrix, MatrixPayload};
use hadamat::srg_hadamard::{build_w, classify_flat, filter_unimodular, solve_typeii};
use hadamat::verify::{is_complex_hadamard, is_type_ii, VerificationReport};
use hadamat::{Complex, Error};
use serde_json::{json, Value};

use crate::{CoverScanArgs, CoverSolveArgs, ExportArgs, ExportFormat, GraphBuildArgs, ModeArg, SearchArgs, SrgClassifyArgs, SrgSolveArgs, VerifyArgs};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const INFEASIBLE: u8 = 2;
pub const MALFORMED: u8 = 3;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

type CmdResult = Result<u8, CliError>;

fn fail(code: u8, message: impl Into<String>) -> CliError {
    CliError { code, message: message.into() }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_) => MALFORMED,
            _ => INFEASIBLE,
        };
        fail(code, e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Writes `body` to `out`, or to stdout; `summary` goes to whichever stream is free.
fn emit(out: Option<&Path>, body: &str, summary: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(p) => {
            write_text(p, body)?;
            if let Some(s) = summary {
                println!("{s}");
            }
        }
        None => {
            print!("{body}");
            if let Some(s) = summary {
                eprintln!("{s}");
            }
        }
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let j: GraphJson = serde_json::from_str(&read_text(path)?).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))?;
    Graph::from_json(&j).map_err(|e| fail(MALFORMED, e.to_string()))
}

fn family_spec(a: &GraphBuildArgs) -> Result<String, CliError> {
    let name = a.family.trim().to_ascii_lowercase();
    if name.contains('(') {
        return Ok(name);
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| fail(INFEASIBLE, format!("family {name} needs --{flag}")));
    Ok(match name.as_str() {
        "paley" => format!("paley({})", a.q.ok_or_else(|| fail(INFEASIBLE, "family paley needs --q"))?),
        "lattice" | "triangular" | "cycle" => format!("{name}({})", need(a.n, "n")?),
        "mk" => format!("mk({},{})", need(a.m, "m")?, need(a.s, "s")?),
        _ => name,
    })
}

pub fn graph_build(a: &GraphBuildArgs) -> CmdResult {
    let family: GraphFamily = family_spec(a)?.parse()?;
    let g = build_named(&family)?;
    let summary = if let Ok(p) = srg_params(&g) {
        format!("{family}: strongly regular {p}")
    } else if let Ok(c) = cover_params(&g) {
        let (n, r, c2) = c.triple();
        format!("{family}: antipodal cover ({n},{r},{c2})")
    } else {
        format!("{family}: {} vertices, {} edges", g.order(), g.edges().len())
    };
    emit(a.out.as_deref(), &pretty(&g.to_json()), Some(&summary))?;
    Ok(PASS)
}

pub fn srg_classify(a: &SrgClassifyArgs) -> CmdResult {
    let p = SrgParams::parse(&a.params)?;
    let f = is_feasible(&p);
    let spec = spectrum(&p).ok().map(|s| {
        let (t, u) = s.theta_tau_f64();
        json!({
            "theta": s.theta.to_string(),
            "tau": s.tau.to_string(),
            "theta_f64": t,
            "tau_f64": u,
            "m_theta": s.m_theta.to_string(),
            "m_tau": s.m_tau.to_string(),
        })
    });
    let family = if f.feasible { classify_flat(&p) } else { None };
    let out = json!({
        "params": p,
        "feasible": f.feasible,
        "reasons": f.reasons,
        "primitive": p.is_primitive(),
        "conference": p.is_conference(),
        "spectrum": spec,
        "family": family.map(|fam| json!({
            "id": fam.id,
            "theta": fam.theta.to_string(),
            "applied_to": fam.applied_to,
        })),
    });
    print!("{}", pretty(&out));
    Ok(if f.feasible { PASS } else { INFEASIBLE })
}

fn c64_json(c: Complex<f64>) -> Value {
    json!({ "re": c.re, "im": c.im })
}

pub fn srg_solve(a: &SrgSolveArgs) -> CmdResult {
    let p = SrgParams::parse(&a.params)?;
    let f = is_feasible(&p);
    if !f.feasible {
        return Err(fail(INFEASIBLE, format!("{p} is infeasible: {:?}", f.reasons)));
    }
    let mut records = solve_typeii(&p)?;
    if a.hadamard_only {
        records = filter_unimodular(&records);
    }
    let mut code = PASS;
    if a.build_w {
        let g = read_graph(a.graph.as_deref().expect("clap requires --graph"))?;
        fs::create_dir_all(&a.w_dir).map_err(|e| fail(MALFORMED, format!("{}: {e}", a.w_dir.display())))?;
        for (i, rec) in records.iter_mut().enumerate() {
            let w = build_w(&g, rec)?;
            let report = if rec.unimodular { is_complex_hadamard(&w, 0.0) } else { is_type_ii(&w, 0.0)? };
            rec.hadamard_verified = Some(report.passed);
            if !report.passed {
                code = FAIL;
            }
            let payload = if a.float { MatrixPayload::Float(w.to_c64()) } else { MatrixPayload::Exact(w) };
            write_text(&a.w_dir.join(format!("w_{i}.json")), &write_matrix(&payload)?)?;
        }
    }
    let body = if a.float {
        let list: Vec<Value> = records
            .iter()
            .map(|r| {
                json!({
                    "params": r.params,
                    "case": r.case,
                    "x": c64_json(r.x.embed_complex()),
                    "y": c64_json(r.y.embed_complex()),
                    "unimodular": r.unimodular,
                    "hadamard_verified": r.hadamard_verified,
                })
            })
            .collect();
        pretty(&list)
    } else {
        pretty(&records)
    };
    emit(a.out.as_deref(), &body, Some(&format!("{p}: {} solutions", records.len())))?;
    Ok(code)
}

fn configs(s: &SearchArgs) -> (SearchConfig, RecognizeConfig) {
    let cfg = SearchConfig {
        seeds: s.seeds,
        grid: s.grid,
        tol_accept: s.tol,
        bound_filter: !s.no_bound_filter,
        ..SearchConfig::default()
    };
    let rcfg = RecognizeConfig { max_radicand: s.max_radicand, ..RecognizeConfig::default() };
    (cfg, rcfg)
}

pub fn cover_solve(a: &CoverSolveArgs) -> CmdResult {
    let p = CoverParams::parse(&a.params)?;
    let (cfg, rcfg) = configs(&a.search);
    let report = scan_triple(&p, &cfg, &rcfg);
    let mut code = PASS;
    let mut built = vec![];
    if let Some(gp) = &a.graph {
        let g = read_graph(gp)?;
        fs::create_dir_all(&a.w_dir).map_err(|e| fail(MALFORMED, format!("{}: {e}", a.w_dir.display())))?;
        for (i, s) in expand_conjugates(&report.solutions).iter().enumerate() {
            let Some(t) = &s.exact else { continue };
            let w = build_cover_w(&g, &p, t)?;
            let passed = is_complex_hadamard(&w, 0.0).passed;
            if !passed {
                code = FAIL;
            }
            let name = format!("w_{i}.json");
            write_text(&a.w_dir.join(&name), &write_matrix(&MatrixPayload::Exact(w))?)?;
            built.push(json!({ "file": name, "hadamard_verified": passed }));
        }
    }
    let (n, r, c2) = p.triple();
    let body = pretty(&json!({ "report": report, "matrices": built }));
    let summary = format!("({n},{r},{c2}): {:?}, {} roots, {} certified", report.status, report.distinct_roots, report.certified_roots);
    emit(a.out.as_deref(), &body, Some(&summary))?;
    Ok(code)
}

pub fn cover_scan(a: &CoverScanArgs) -> CmdResult {
    if a.nmax < 3 {
        return Err(fail(INFEASIBLE, "--nmax must be at least 3"));
    }
    let (cfg, rcfg) = configs(&a.search);
    let report = scan_all(a.nmax, &cfg, &rcfg);
    let certified: Vec<String> = report.certified_triples().iter().map(|(n, r, c)| format!("({n},{r},{c})")).collect();
    let summary = format!("certified: {}", certified.join(" "));
    emit(a.out.as_deref(), &pretty(&report), Some(&summary))?;
    Ok(PASS)
}

fn load_matrix(path: &Path) -> Result<MatrixPayload, CliError> {
    Ok(read_matrix(&read_text(path)?)?)
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let m = load_matrix(&a.input)?;
    let (hadamard, type_ii): (VerificationReport, Result<VerificationReport, Error>) = match (&m, a.mode) {
        (MatrixPayload::Exact(w), None | Some(ModeArg::Exact)) => (is_complex_hadamard(w, a.tol), is_type_ii(w, a.tol)),
        (MatrixPayload::Float(_), Some(ModeArg::Exact)) => {
            return Err(fail(MALFORMED, "exact mode needs a file with exact entries"));
        }
        (_, _) => {
            let w = m.to_c64();
            (is_complex_hadamard(&w, a.tol), is_type_ii(&w, a.tol))
        }
    };
    let type_ii = match type_ii {
        Ok(r) => serde_json::to_value(r).expect("serializable"),
        Err(e) => json!({ "passed": false, "error": e.to_string() }),
    };
    let passed = hadamard.passed;
    let out = json!({
        "size": m.size(),
        "provenance": m.provenance(),
        "passed": passed,
        "complex_hadamard": hadamard,
        "type_ii": type_ii,
    });
    print!("{}", pretty(&out));
    Ok(if passed { PASS } else { FAIL })
}

pub fn export(a: &ExportArgs) -> CmdResult {
    let m = load_matrix(&a.input)?;
    let body = match a.format {
        ExportFormat::Csv => to_csv(&m),
    };
    emit(a.out.as_deref(), &body, None)?;
    Ok(PASS)
}
