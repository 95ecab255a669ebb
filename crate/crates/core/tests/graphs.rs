use hadamat::algebra::{int, Rational};
use hadamat::graphs::{
    build_named, cover_params, distance_matrices, is_feasible, seidel_matrix, spectrum, srg_params, FeasibilityReason, Graph,
    GraphFamily, SrgParams,
};
use hadamat::{Error, IntMatrix};
use nalgebra::DMatrix;

fn named(s: &str) -> Graph {
    build_named(&s.parse::<GraphFamily>().unwrap()).unwrap()
}

fn params(v: u64, k: u64, a: u64, c: u64) -> SrgParams {
    SrgParams::new(v, k, a, c).unwrap()
}

/// Sorted eigenvalues of the adjacency matrix, computed numerically.
fn numeric_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.order();
    let m = DMatrix::from_fn(n, n, |i, j| g.adjacent(i, j) as u8 as f64);
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

fn count_near(ev: &[f64], x: f64) -> usize {
    ev.iter().filter(|e| (*e - x).abs() < 1e-8).count()
}

const SRGS: [&str; 13] = [
    "petersen",
    "complement(petersen)",
    "paley(5)",
    "paley(9)",
    "paley(13)",
    "paley(17)",
    "paley(25)",
    "lattice(3)",
    "lattice(4)",
    "lattice(5)",
    "triangular(5)",
    "triangular(6)",
    "triangular(7)",
];

#[test]
fn named_constructions() {
    assert_eq!(srg_params(&named("lattice(4)")).unwrap(), params(16, 6, 2, 2));
    assert_eq!(srg_params(&named("triangular(6)")).unwrap(), params(15, 8, 4, 4));
    assert_eq!(srg_params(&named("petersen")).unwrap(), params(10, 3, 0, 1));
    assert_eq!(srg_params(&named("paley(13)")).unwrap(), params(13, 6, 2, 3));
    assert_eq!(named("line_graph(petersen)").order(), 15);
    assert!(matches!(srg_params(&named("cycle(6)")), Err(Error::NotStronglyRegular { .. })));
    assert!(matches!(build_named(&GraphFamily::Paley(11)), Err(Error::InvalidConstruction(_))));
    assert!(matches!(build_named(&GraphFamily::Paley(21)), Err(Error::InvalidConstruction(_))));
    assert!(matches!(build_named(&GraphFamily::Lattice(1)), Err(Error::InvalidConstruction(_))));
}

#[test]
fn paley_graphs_are_conference_graphs() {
    for q in [5u64, 9, 13, 17, 25, 29, 37, 41, 49] {
        let p = srg_params(&build_named(&GraphFamily::Paley(q)).unwrap()).unwrap();
        assert_eq!(p, params(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4), "paley({q})");
        assert!(p.is_conference());
    }
}

#[test]
fn spectra_against_numeric_eigenvalues() {
    let sp = spectrum(&params(10, 3, 0, 1)).unwrap();
    assert_eq!((sp.theta.clone(), sp.tau.clone()), (1.into(), (-2).into()));
    assert_eq!((sp.m_theta.clone(), sp.m_tau.clone()), (int(5), int(4)));

    let sp = spectrum(&params(5, 2, 0, 1)).unwrap();
    assert!(sp.conference);
    let (t, u) = sp.theta_tau_f64();
    assert!((t - (-1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
    assert!((u - (-1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);

    let sp = spectrum(&params(15, 8, 4, 4)).unwrap();
    assert_eq!((sp.theta, sp.tau), (2.into(), (-2).into()));

    for name in SRGS.iter().chain(["cycle(5)"].iter()) {
        let g = named(name);
        let p = srg_params(&g).unwrap();
        let sp = spectrum(&p).unwrap();
        let ev = numeric_eigenvalues(&g);
        let (t, u) = sp.theta_tau_f64();
        assert!((ev[0] - p.k as f64).abs() < 1e-8, "{name}");
        let mt: f64 = sp.m_theta.to_string().parse().unwrap();
        let mu: f64 = sp.m_tau.to_string().parse().unwrap();
        assert_eq!(count_near(&ev, t) as f64, mt, "{name}");
        assert_eq!(count_near(&ev, u) as f64, mu, "{name}");
    }
}

#[test]
fn feasibility_examples() {
    assert!(is_feasible(&params(10, 3, 0, 1)).feasible);
    assert!(is_feasible(&params(15, 8, 4, 4)).feasible);
    let f = is_feasible(&params(8, 3, 0, 1));
    assert!(!f.feasible);
    assert!(f.reasons.contains(&FeasibilityReason::MultiplicityNotIntegral), "{:?}", f.reasons);
}

fn squared(m: &IntMatrix) -> IntMatrix {
    m.int_mul(m)
}

#[test]
fn seidel_matrices() {
    let s = seidel_matrix(&named("petersen"));
    assert_eq!(squared(&s), IntMatrix::from_fn(10, |i, j| if i == j { 9 } else { 0 }));
    assert_eq!(s.row_sums(), vec![3; 10]);
    let sc = seidel_matrix(&named("complement(petersen)"));
    for i in 0..10 {
        for j in 0..10 {
            assert_eq!(*sc.get(i, j), -*s.get(i, j));
        }
    }
    let c6 = seidel_matrix(&named("cycle(6)"));
    assert!(c6.entries().iter().all(|e| [-1, 0, 1].contains(e)));
    let sq = squared(&c6);
    assert!((0..6).any(|i| (0..6).any(|j| i != j && *sq.get(i, j) != 0)));
}

#[test]
fn distance_matrices_of_covers() {
    for (name, order, r) in [("cycle(6)", 6, 2), ("cube", 8, 2), ("line_graph(petersen)", 15, 3)] {
        let [a1, a2, a3] = distance_matrices(&named(name)).unwrap();
        for i in 0..order {
            for j in 0..order {
                let s = a1.get(i, j) + a2.get(i, j) + a3.get(i, j);
                assert_eq!(s, (i != j) as i64);
            }
        }
        assert_eq!(a3.row_sums(), vec![r - 1; order], "{name}");
    }
    assert!(matches!(distance_matrices(&named("petersen")), Err(Error::WrongDiameter(Some(2)))));
    assert!(matches!(distance_matrices(&named("cycle(9)")), Err(Error::WrongDiameter(Some(4)))));
}

#[test]
fn cover_parameters() {
    let cases = [("cycle(6)", (3, 2, 1)), ("cube", (4, 2, 2)), ("line_graph(petersen)", (5, 3, 1))];
    for (name, t) in cases {
        let g = named(name);
        let p = cover_params(&g).unwrap();
        assert_eq!(p.triple(), t, "{name}");
        let (n, r, _) = t;
        assert!((0..g.order()).all(|v| g.degree(v) == n as usize - 1));
        let [_, _, a3] = distance_matrices(&g).unwrap();
        let mut seen = vec![false; g.order()];
        let mut classes = 0;
        for v in 0..g.order() {
            if seen[v] {
                continue;
            }
            classes += 1;
            let class: Vec<usize> = (0..g.order()).filter(|&w| w == v || *a3.get(v, w) == 1).collect();
            assert_eq!(class.len(), r as usize);
            for w in class {
                seen[w] = true;
            }
        }
        assert_eq!(classes, n as usize);
    }
    // K_{5,5} minus a perfect matching is a (5,2,3) cover
    let k55 = Graph::from_fn(10, |a, b| (a < 5) != (b < 5) && a % 5 != b % 5);
    assert_eq!(cover_params(&k55).unwrap().triple(), (5, 2, 3));
    // a path has diameter 3 but no antipodal classes
    let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(matches!(cover_params(&path), Err(Error::NotAntipodal(_))));
    assert!(matches!(cover_params(&named("cycle(7)")), Err(Error::NotAntipodal(_))));
}

#[test]
fn srg_identities() {
    for name in SRGS {
        let g = named(name);
        let p = srg_params(&g).unwrap();
        let n = g.order();
        let a = g.adjacency_matrix();
        let (s, k, c) = (p.a as i64 - p.c as i64, p.k as i64, p.c as i64);
        // A^2 - (a-c)A - (k-c)I = cJ
        let a2 = a.int_mul(&a);
        for i in 0..n {
            for j in 0..n {
                let lhs = a2.get(i, j) - s * a.get(i, j) - (k - c) * (i == j) as i64;
                assert_eq!(lhs, c, "{name} at ({i},{j})");
            }
        }
        if p.is_primitive() {
            assert_eq!(srg_params(&g.complement()).unwrap(), p.complement().unwrap(), "{name}");
        }
        let sp = spectrum(&p).unwrap();
        let one = Rational::from_integer(1.into());
        assert_eq!(&one + &sp.m_theta + &sp.m_tau, int(p.v as i64));
        let tr = hadamat::TowerElement::from_i64(k)
            + &sp.theta * &hadamat::TowerElement::rational(sp.m_theta.clone())
            + &sp.tau * &hadamat::TowerElement::rational(sp.m_tau.clone());
        assert!(tr.is_zero(), "{name}");
        assert_eq!(&sp.theta + &sp.tau, p.s().into());
        assert_eq!(&sp.theta * &sp.tau, p.p().into());
    }
}

#[test]
fn graph_json_round_trip() {
    let g = named("paley(13)");
    let text = serde_json::to_string(&g.to_json()).unwrap();
    let back = Graph::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.edges(), g.edges());
    assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    assert!(Graph::from_edges(3, [(1, 1)]).is_err());
}
