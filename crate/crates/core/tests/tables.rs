//! Signature tables against golden files and an independent determinant formula.

use std::fs;
use std::path::Path;

use chtg::cosearch::{search, SearchConfig};
use chtg::exact::{AComplex, Angle, Cyclo, DEFAULT_PREC};
use chtg::reports::{det_h, signature_csv, signature_scan, CandidateId};
use chtg::trigroup::{build_from_rho, build_symmetric};

fn golden(name: &str) -> Vec<(CandidateId, u32, String)> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/v1").join(name);
    fs::read_to_string(&path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].to_string())
        })
        .collect()
}

fn check_golden(name: &str) {
    let rows = golden(name);
    assert!(!rows.is_empty());
    for (c, p, want) in rows {
        let got = signature_scan(c, p, p).unwrap().rows[0].verdict;
        assert_eq!(got, want, "{name}: {c} at p={p}");
    }
}

#[test]
fn diagonal_family() {
    check_golden("diagonal.txt");
}

#[test]
fn s_rows() {
    check_golden("s_rows.txt");
}

#[test]
fn three_five_rows() {
    check_golden("three_five.txt");
}

/// `det H` from `ρ`, `σ = τ` and `x = π/p` alone, in plain f64.
fn det_oracle(rho: (f64, f64), sigma: f64, p: u32) -> f64 {
    let x = std::f64::consts::PI / p as f64;
    let s = x.sin();
    let norm = rho.0 * rho.0 + rho.1 * rho.1;
    8.0 * s.powi(3) - 2.0 * s * (norm + 2.0 * sigma * sigma) - 2.0 * sigma * sigma * (rho.1 * x.cos() - rho.0 * s)
}

#[test]
fn determinant_matches_oracle() {
    let ids = ["(3,3)", "(3,3)*", "(3,4)", "(3,5)", "(3,5)*", "(4,3)", "(5,4)", "(8,6)", "(6,6)", "(9,9)*"];
    for id in ids {
        let c: CandidateId = id.parse().unwrap();
        for p in 2..=16 {
            let g = build_symmetric(p, c.n, c.m, c.im_sign(), DEFAULT_PREC).unwrap();
            let rho = g.params.rho.exact().unwrap().to_f64();
            let sigma = g.params.sigma.exact().unwrap().to_f64().0;
            let want = det_oracle(rho, sigma, p);
            let (re, im) = det_h(c, p).unwrap().to_f64();
            assert!((re - want).abs() < 1e-12 && im.abs() < 1e-12, "{id} p={p}: {re} vs {want}");
        }
    }
}

#[test]
fn oracle_closed_forms() {
    // Sporadic rows with the determinant written in x = π/p.
    for p in 2..=20 {
        let x = std::f64::consts::PI / p as f64;
        let s = x.sin();
        let three_four = 8.0 * s.powi(3) - 7.0 * s - 7f64.sqrt() * x.cos();
        let eight_six = -2.0 * x.cos() * (1.0 + 2.0 * (2.0 * x).sin());
        for (id, want) in [("(3,4)", three_four), ("(8,6)", eight_six)] {
            let got = det_h(id.parse().unwrap(), p).unwrap().to_f64().0;
            assert!((got - want).abs() < 1e-12, "{id} p={p}: {got} vs {want}");
        }
    }
}

#[test]
fn s_row_from_rho() {
    let s = -Cyclo::root(1, 6);
    let rho = &Cyclo::one() + &s;
    let conj: CandidateId = "(3,3)*".parse().unwrap();
    for p in 2..=12 {
        let g = build_from_rho(p, rho.clone(), Cyclo::one(), DEFAULT_PREC).unwrap();
        assert_eq!(g.det_h_exact().unwrap(), det_h(conj, p).unwrap(), "p={p}");
    }
}

#[test]
fn csv_is_stable() {
    let c: CandidateId = "(5,4)".parse().unwrap();
    let a = signature_csv(&[signature_scan(c, 2, 6).unwrap()]);
    let b = signature_csv(&[signature_scan(c, 2, 6).unwrap()]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 6);
    assert!(a.lines().nth(1).unwrap().ends_with(",(3,0)"));
}

fn cos(t: Angle) -> AComplex {
    let z = AComplex::expi(t, DEFAULT_PREC);
    AComplex::real(z.re.clone(), DEFAULT_PREC)
}

#[test]
fn search_candidates_reverify_numerically() {
    let out = search(&SearchConfig { den_max: 30, m_max: 8, n_max: 8, ..SearchConfig::default() }, None).unwrap();
    assert!(!out.candidates.is_empty());
    for c in &out.candidates {
        let (a, b) = (c.a, c.b);
        let minor = cos(Angle::two_pi_over(c.n as i64)).sub(&cos(a)).sub(&cos(b)).sub(&cos(a.add(b)));
        let main = [
            cos(Angle::two_pi_over(c.n as i64)),
            cos(a.sub(b)),
            cos(Angle::combo(1, a, 2, b)),
            cos(Angle::combo(2, a, 1, b)),
            AComplex::one(DEFAULT_PREC),
        ]
        .iter()
        .fold(cos(Angle::two_pi_over(c.m as i64)), |acc, t| acc.sub(t));
        assert!(minor.abs_f64() < 1e-40 && main.abs_f64() < 1e-40, "({},{}) at {a:?},{b:?}", c.n, c.m);
    }
}
