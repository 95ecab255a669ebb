//! One PASS/FAIL line per acceptance criterion, with wall time against its budget.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hadamat::algebra::{int, rat, TowerDescriptor, TowerElement};
use hadamat::covers::{
    build_cover_w, expand_conjugates, expanded_form, recognize_exact, solve_cover, system_residual, CoverParams,
    RecognizeConfig, SearchConfig, TorusSolution,
};
use hadamat::graphs::{build_named, feasible_primitive, seidel_matrix, Graph, GraphFamily, SrgParams};
use hadamat::srg_hadamard::{
    build_w, build_w_with, classify_flat, conference_to_hadamard, family_params, family_solutions, filter_unimodular,
    potts, solve_typeii, Branch, FamilyId,
};
use hadamat::verify::{fingerprint, is_complex_hadamard, is_type_ii};
use hadamat::{ComplexMatrix, ExactMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn hadamat(args: &[&str], threads: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hadamat"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("HADAMAT_THREADS", t);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json(s: &str) -> Result<Value, String> {
    serde_json::from_str(s).map_err(|e| format!("bad JSON ({e})"))
}

fn named(s: &str) -> Graph {
    build_named(&s.parse::<GraphFamily>().unwrap()).unwrap()
}

/// `(a + b·i√d) / s`.
fn gaussian(d: i64, a: i64, b: i64, s: i64) -> TowerElement {
    TowerDescriptor::new(int(0), [int(d), int(0)]).unwrap().element_raw([rat(a, s), int(0), rat(b, s), int(0)])
}

fn criterion_1() -> Outcome {
    let ids = [FamilyId::I, FamilyId::Ii, FamilyId::Iii, FamilyId::Iv, FamilyId::V];
    let mut checked = 0;
    let mut degenerate = 0;
    for id in ids {
        for theta in 1..=5 {
            let Some(p) = family_params(id, theta) else { continue };
            let ps = format!("{},{},{},{}", p.v, p.k, p.a, p.c);
            let (code, out) = hadamat(&["srg", "classify", "--params", &ps], None);
            let cls = json(&out)?;
            if code != 0 || p.v <= 4 || cls["primitive"] != true {
                degenerate += 1;
                continue;
            }
            ensure!(!cls["family"].is_null(), "{ps} ({id:?}, θ={theta}) not classified");
            let (code, out) = hadamat(&["srg", "solve", "--params", &ps, "--hadamard-only"], None);
            let recs = json(&out)?;
            let recs = recs.as_array().ok_or("solve output is not a list")?;
            ensure!(code == 0 && !recs.is_empty(), "{ps} ({id:?}, θ={theta}) has no unimodular solution");
            ensure!(recs.iter().all(|r| r["unimodular"] == true), "{ps}: non-unimodular record kept");
            checked += 1;
        }
    }
    let off: Vec<SrgParams> = feasible_primitive(250).into_iter().filter(|p| ![-2, -1, 0].contains(&p.s())).take(200).collect();
    ensure!(off.len() == 200, "only {} off-family parameter sets", off.len());
    for p in &off {
        let ps = format!("{},{},{},{}", p.v, p.k, p.a, p.c);
        let (_, out) = hadamat(&["srg", "classify", "--params", &ps], None);
        ensure!(json(&out)?["family"].is_null(), "{ps} classified into a family");
        let (code, out) = hadamat(&["srg", "solve", "--params", &ps, "--hadamard-only"], None);
        ensure!(code == 0, "{ps}: exit {code}");
        ensure!(json(&out)?.as_array().is_some_and(|a| a.is_empty()), "{ps} has unimodular solutions");
    }
    Ok(format!("{checked} family sets nonempty ({degenerate} degenerate skipped), 200 off-family sets empty"))
}

fn exact_hadamard(g: &Graph, x: &TowerElement, y: &TowerElement) -> bool {
    let w = build_w_with(g, x, y);
    w.entries().iter().all(TowerElement::is_unimodular) && is_complex_hadamard(&w, 0.0).passed
}

fn criterion_2() -> Outcome {
    let t6 = named("triangular(6)");
    let pet = named("petersen");
    let one = TowerElement::one();
    let mut n = 0;
    for s in [1, -1] {
        ensure!(exact_hadamard(&t6, &(-1).into(), &gaussian(11, 5, s, 6)), "triangular(6), x=-1");
        ensure!(exact_hadamard(&t6, &gaussian(15, -7, s, 8), &one), "triangular(6), y=1");
        let i = gaussian(1, 0, s, 1);
        ensure!(exact_hadamard(&pet, &i, &-&i), "petersen, x=±i");
        let x = gaussian(15, -1, s, 4);
        ensure!(exact_hadamard(&pet, &x, &x.checked_inv().unwrap()), "petersen, y=1/x");
        n += 4;
    }
    let l4 = named("lattice(4)");
    let p = SrgParams::new(16, 6, 2, 2).unwrap();
    let real: Vec<_> = filter_unimodular(&solve_typeii(&p).map_err(|e| e.to_string())?)
        .into_iter()
        .filter(|r| r.x.is_real() && r.y.is_real())
        .collect();
    ensure!(!real.is_empty(), "lattice(4) has no real solution");
    for r in &real {
        let w = build_w(&l4, r).map_err(|e| e.to_string())?;
        let pm1 = w.entries().iter().all(|e| e.is_one() || (-e).is_one());
        ensure!(pm1 && is_complex_hadamard(&w, 0.0).passed, "lattice(4) real W is not a real Hadamard matrix");
        n += 1;
    }
    Ok(format!("{n} matrices pass exact WW* = nI ({} real of order 16)", real.len()))
}

fn wwstar_error(w: &ComplexMatrix) -> f64 {
    let n = w.size();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let s: Complex64 = (0..n).map(|x| w.get(a, x) * w.get(b, x).conj()).sum();
            let t = if a == b { s - n as f64 } else { s };
            worst = worst.max(t.norm());
        }
    }
    worst
}

fn criterion_3() -> Outcome {
    let mut notes = vec![];
    for (name, v) in [("paley(5)", 5u64), ("paley(13)", 13)] {
        let g = named(name);
        let p = SrgParams::new(v, (v - 1) / 2, (v - 5) / 4, (v - 1) / 4).unwrap();
        let fam = classify_flat(&p).ok_or(format!("{name} not classified"))?;
        ensure!(fam.id == FamilyId::Iv, "{name} classified as {:?}", fam.id);
        let sols = family_solutions(&fam);
        ensure!(!sols.is_empty(), "{name}: no closed-form solutions");
        let mut exact = 0;
        for s in &sols {
            let wf = build_w_with(&g, &s.x.embed_complex(), &s.y.embed_complex());
            let err = wwstar_error(&wf);
            ensure!(err.is_finite() && err < 1e-9, "{name}: |WW* - vI| = {err:e}");
            if let Ok(w) = build_w(&g, s) {
                ensure!(is_complex_hadamard(&w, 0.0).passed, "{name}: exact verification failed");
                exact += 1;
            }
        }
        notes.push(format!("{name}: {} float, {exact} exact", sols.len()));
    }
    Ok(notes.join("; "))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-8
}

fn criterion_4() -> Outcome {
    let (code, out) = hadamat(&["cover", "scan", "--nmax", "16"], Some("4"));
    ensure!(code == 0, "scan exited {code}");
    let rep = json(&out)?;
    let triples = rep["triples"].as_array().ok_or("no triples")?;
    let mut certified = BTreeSet::new();
    let mut sols: Vec<((u64, u64, u64), Vec<TorusSolution>)> = vec![];
    for t in triples {
        let key = (t["n"].as_u64().unwrap(), t["r"].as_u64().unwrap(), t["c2"].as_u64().unwrap());
        if t["status"] == "certified" {
            certified.insert(key);
            let s: Vec<TorusSolution> = serde_json::from_value(t["solutions"].clone()).map_err(|e| e.to_string())?;
            sols.push((key, s));
        }
    }
    let expect: BTreeSet<_> = [(3, 2, 1), (4, 2, 2), (5, 3, 1)].into_iter().collect();
    ensure!(certified == expect, "certified {certified:?}");

    let one = TowerElement::one();
    let mut listed: Vec<((u64, u64, u64), [TowerElement; 3])> = vec![];
    for s in [1, -1] {
        for sz in [1, -1] {
            let t = TowerDescriptor::new(int(3), [int(1), int(0)]).unwrap();
            let y = t.element_raw([rat(-1, 2), int(0), int(0), rat(s, 2)]);
            let z = t.element_raw([int(0), int(0), int(sz), int(0)]);
            listed.push(((3, 2, 1), [&y * &z, y, z]));
        }
        let x = gaussian(1, 0, s, 1);
        listed.push(((4, 2, 2), [x.clone(), (-1).into(), -&x]));
        listed.push(((5, 3, 1), [one.clone(), gaussian(15, -7, s, 8), one.clone()]));
        let x = gaussian(11, 5, s, 6);
        listed.push(((5, 3, 1), [x.clone(), (-1).into(), x]));
        let x = gaussian(15, -1, s, 4);
        listed.push(((5, 3, 1), [x.clone(), x.checked_inv().unwrap(), one.clone()]));
    }
    for (key, want) in &listed {
        let wf = want.clone().map(|e| e.embed_complex());
        let pool = &sols.iter().find(|(k, _)| k == key).unwrap().1;
        let hit = expand_conjugates(pool).into_iter().find(|s| close(s.x, wf[0]) && close(s.y, wf[1]) && close(s.z, wf[2]));
        let hit = hit.ok_or(format!("{key:?}: no root within 1e-8 of {wf:?}"))?;
        let e = hit.exact.ok_or(format!("{key:?}: matching root is uncertified"))?;
        ensure!([e.x, e.y, e.z] == *want, "{key:?}: certificate differs from the listed value");
    }
    Ok(format!("certified {{(3,2,1), (4,2,2), (5,3,1)}}; {} listed roots matched exactly", listed.len()))
}

fn criterion_5() -> Outcome {
    let s = seidel_matrix(&named("petersen"));
    for b in [Branch::Plus, Branch::Minus] {
        let w = conference_to_hadamard(&s, 1, b).map_err(|e| e.to_string())?;
        ensure!(w.size() == 10 && is_complex_hadamard(&w, 0.0).passed, "{b:?} branch fails");
    }
    Ok("both branches pass exact verification at order 10".into())
}

fn cover_w(name: &str, t: (u64, u64, u64)) -> Vec<ExactMatrix> {
    let g = named(name);
    let p = CoverParams::new(t.0, t.1, t.2).unwrap();
    expand_conjugates(&solve_cover(&p, &SearchConfig::default()))
        .iter()
        .filter_map(|s| recognize_exact(&p, s, &RecognizeConfig::default()))
        .map(|e| build_cover_w(&g, &p, &e).unwrap())
        .collect()
}

fn criterion_6() -> Outcome {
    let c6 = cover_w("cycle(6)", (3, 2, 1));
    let cube = cover_w("cube", (4, 2, 2));
    ensure!(!c6.is_empty() && !cube.is_empty(), "no cover matrices");
    let t = Instant::now();
    let omega = gaussian(3, 1, 1, 2);
    let f6 = fingerprint(&ExactMatrix::from_fn(6, |j, k| omega.pow(((j * k) % 6) as u32)));
    let i = gaussian(1, 0, 1, 1);
    let one = TowerElement::one().lift_to(i.tower()).unwrap();
    let k = ExactMatrix::from_fn(2, |a, b| if a == b { one.clone() } else { i.clone() });
    let k3 = fingerprint(&k.kron(&k).kron(&k));
    for w in &c6 {
        ensure!(fingerprint(w).consistent_with(&f6, 1e-9), "C6 cover differs from F6");
    }
    for w in &cube {
        ensure!(fingerprint(w).consistent_with(&k3, 1e-9), "cube cover differs from the Kronecker cube");
    }
    Ok(format!("{} C6 and {} cube matrices consistent; fingerprints in {:.2}s", c6.len(), cube.len(), t.elapsed().as_secs_f64()))
}

fn random_element(rng: &mut ChaCha8Rng, tower: &hadamat::Tower) -> TowerElement {
    let mut q = || rat(rng.gen_range(-50..=50), rng.gen_range(1..=20));
    tower.element_raw([q(), q(), q(), q()])
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tower = TowerDescriptor::new(int(5), [int(3), int(1)]).map_err(|e| e.to_string())?;
    for _ in 0..10_000 {
        let (a, b, c) = (random_element(&mut rng, &tower), random_element(&mut rng, &tower), random_element(&mut rng, &tower));
        ensure!(&(&a + &b) * &c == &(&a * &c) + &(&b * &c), "distributivity");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "associativity");
        ensure!(&a * &b == &b * &a, "commutativity");
        if !a.is_zero() {
            ensure!((&a * &a.checked_inv().unwrap()).is_one(), "inverse");
        }
    }

    let mut produced: Vec<ExactMatrix> = vec![];
    for name in ["petersen", "triangular(6)", "lattice(4)", "paley(9)", "triangular(7)"] {
        let g = named(name);
        let p = hadamat::graphs::srg_params(&g).unwrap();
        for r in solve_typeii(&p).unwrap() {
            produced.push(build_w(&g, &r).unwrap());
        }
    }
    produced.extend(cover_w("line_graph(petersen)", (5, 3, 1)));
    produced.extend(cover_w("cycle(6)", (3, 2, 1)));
    produced.extend(potts(4).unwrap().into_iter().map(|m| m.scaled));
    let mut unimodular = 0;
    for w in &produced {
        if w.entries().iter().all(TowerElement::is_unimodular) {
            unimodular += 1;
            ensure!(is_type_ii(w, 0.0).unwrap().passed == is_complex_hadamard(w, 0.0).passed, "type II / Hadamard disagree");
        }
    }

    let params = hadamat::covers::enumerate_feasible(16);
    for k in 0..10_000 {
        let p = &params[k % params.len()];
        let [x, y, z] = [0; 3].map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
        let d = system_residual(p, x, y, z);
        let e = expanded_form(p, x, y, z);
        let nr = (p.n * p.r) as f64;
        ensure!((0..3).all(|i| (e[i] - d[i] - nr).abs() < 1e-10), "expansion identity at {:?}", p.triple());
    }

    let n = 7;
    let base = ComplexMatrix::from_fn(n, |_, _| Complex64::from_polar(1.0, rng.gen_range(0.0..6.3)));
    let fp = fingerprint(&base);
    for _ in 0..10_000 {
        let mut pr: Vec<usize> = (0..n).collect();
        let mut pc: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut pr[..], &mut rng);
        rand::seq::SliceRandom::shuffle(&mut pc[..], &mut rng);
        let d: Vec<Complex64> = (0..2 * n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..6.3))).collect();
        let m = base.permuted(&pr, &pc);
        let m = ComplexMatrix::from_fn(n, |a, b| d[a] * m.get(a, b) * d[n + b]);
        ensure!(fingerprint(&m).consistent_with(&fp, 1e-9), "fingerprint moved under a monomial transform");
    }
    Ok(format!("field axioms, {unimodular} unimodular matrices, expansion identity, fingerprint invariance"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 7] = [
        ("1 five-family reproduction", criterion_1, Duration::from_secs(10)),
        ("2 exact Hadamard certificates", criterion_2, Duration::from_secs(5)),
        ("3 conference graphs", criterion_3, Duration::from_secs(5)),
        ("4 cover scan n <= 16", criterion_4, Duration::from_secs(300)),
        ("5 regular conference matrix", criterion_5, Duration::from_secs(1)),
        ("6 fingerprint consistency", criterion_6, Duration::from_secs(10)),
        ("7 property suites", criterion_7, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let res = run();
        let dt = t.elapsed();
        let (status, detail) = match res {
            Ok(d) if dt <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {name}: {detail} [{:.2}s / {}s]", dt.as_secs_f64(), budget.as_secs());
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
