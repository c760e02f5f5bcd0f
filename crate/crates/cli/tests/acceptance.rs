//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::io;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use iquantum::catalog;
use iquantum::gradedqsp::build_s;
use iquantum::iqg::{
    braid_frobenius_check, centrality_check, frobenius_generator_check, small_iqg_dim_check, IQuantum, RankTwoCase,
};
use iquantum::qcoeff::verify_unity_identities;
use iquantum::twistedpoly::clock_shift_rep;
use iquantum_cli::{run, Command, RunConfig, Suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// `(fixture, dim 𝔨, rank 𝔨)` for the compact part of each real form.
const CLASSICAL: &[(&str, usize, usize)] = &[
    ("split_a1", 1, 1),       // so(2)
    ("split_a2", 3, 1),       // so(3)
    ("split_b2", 4, 2),       // so(3) + so(2)
    ("quasisplit_a2", 4, 2),  // s(u(2) + u(1))
    ("quasisplit_a3", 7, 3),  // s(u(2) + u(2))
    ("diagonal_a1xa1", 3, 1), // su(2)
    ("a3_black2", 9, 3),      // s(u(3) + u(1))
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("{what} took {:?}, limit {limit:?}", t.elapsed()))
}

fn valid_levels(name: &str) -> Vec<u32> {
    let d = catalog::load(name).unwrap();
    [3u32, 5, 7].into_iter().filter(|l| d.datum().symmetrizers().iter().all(|e| *e % *l as i64 != 0)).collect()
}

/// Rank over ℚ by fraction-free elimination.
fn rational_rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                let pivot = m[rank].clone();
                m[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x = a * *x - b * y);
                let g = m[r].iter().fold(0i128, |g, x| num_gcd(g, *x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn suite(suite: Suite, ells: &[u32]) -> Result<iquantum_cli::Outcome, String> {
    let cfg = RunConfig::new(Command::Verify(suite)).ells(ells);
    run(&cfg, &mut io::sink()).map_err(|e| e.to_string())
}

fn unity() -> Outcome {
    let t = Instant::now();
    for ell in [3, 5, 7] {
        let r = verify_unity_identities(ell).map_err(|e| e.to_string())?;
        ensure(r.checks.len() == 3 && r.pass(), || format!("ell={ell}: {:?}", r.checks))?;
    }
    let cli = suite(Suite::Unity, &[3, 5, 7])?;
    ensure(cli.summary.pass && cli.summary.checks == 3, || format!("{:?}", cli.summary))?;
    within(t, Duration::from_secs(1), "unity")?;
    Ok("3 identities at l = 3, 5, 7".into())
}

fn kernel() -> Outcome {
    let mut cases = 0;
    for name in catalog::CORE {
        let p = build_s(&catalog::load(name).unwrap(), None);
        for ell in valid_levels(name) {
            let t = Instant::now();
            let c = p.verify_kernel_lemma(ell as i128).map_err(|e| e.to_string())?;
            let n0 = catalog::load(name).unwrap().invariants().n0 as u32;
            ensure(c.pass && c.image_size == (ell as u128).pow(2 * n0), || format!("{name} l={ell}: {:?}", c.failures))?;
            within(t, Duration::from_secs(5), name)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} diagram/level cases"))
}

fn graded_degree() -> Outcome {
    let t = Instant::now();
    for &(name, dim_k, rank_k) in CLASSICAL {
        let d = catalog::load(name).unwrap();
        let theta = d.theta_matrix().to_rows();
        let one_plus: Vec<Vec<i128>> = theta
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| x + i128::from(i == j)).collect())
            .collect();
        let formula = d.roots().positive_roots().len() + d.w_black().len() + rational_rank(one_plus);
        ensure(formula == dim_k, || format!("{name}: dim k from lengths is {formula}, table says {dim_k}"))?;
        let n0 = ((dim_k - rank_k) / 2) as u32;
        let p = build_s(&d, None);
        for ell in valid_levels(name) {
            let got = p.graded_degree(ell as i128).map_err(|e| e.to_string())?.degree;
            ensure(got == (ell as u128).pow(n0), || format!("{name} l={ell}: degree {got}, want l^{n0}"))?;
        }
    }
    within(t, Duration::from_secs(5), "graded degree")?;
    Ok(format!("{} catalog cases", CLASSICAL.len()))
}

fn graded_center() -> Outcome {
    let t = Instant::now();
    let mut monomials = 0;
    for name in catalog::CORE {
        let r = build_s(&catalog::load(name).unwrap(), None).graded_center_generators(3).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{name}: non-central {:?}", r.non_central))?;
        monomials += r.monomials.len();
    }
    within(t, Duration::from_secs(10), "graded center")?;
    Ok(format!("{monomials} central monomials"))
}

fn clock_shift() -> Outcome {
    let t = Instant::now();
    let mut dims = Vec::new();
    for name in catalog::CORE {
        let d = catalog::load(name).unwrap();
        let n0 = d.invariants().n0 as u32;
        let rep = clock_shift_rep(&build_s(&d, None).form(), 3, None).map_err(|e| e.to_string())?;
        let r = rep.verify();
        ensure(rep.dim() == 3usize.pow(n0), || format!("{name}: dimension {}", rep.dim()))?;
        ensure(r.pass && r.span_dim == 9usize.pow(n0), || format!("{name}: {r:?}"))?;
        dims.push(rep.dim().to_string());
    }
    within(t, Duration::from_secs(30), "clock-shift")?;
    Ok(format!("dimensions {}", dims.join(", ")))
}

fn rewriting() -> Outcome {
    let t = Instant::now();
    let out = suite(Suite::Rewrite, &[])?;
    for r in &out.records {
        ensure(r.pass, || format!("{} {}: {}", r.check, r.case, r.report))?;
        if r.check == "braid_symmetries" && r.case != "A1" {
            ensure(r.report["braid_checked"].as_u64().unwrap_or(0) > 0, || format!("{}: no braid words", r.case))?;
        }
        if r.check == "confluence" {
            ensure(r.report["bound"] == 12 && r.report["complete"] == true, || format!("{}: {}", r.case, r.report))?;
        }
    }
    ensure(out.records.len() == 8, || format!("{} records", out.records.len()))?;
    within(t, Duration::from_secs(120), "rewriting")?;
    Ok("A1, A2, B2, A3 up to 12 letters".into())
}

fn frobenius() -> Outcome {
    let t = Instant::now();
    let a1 = IQuantum::new(&catalog::load("split_a1").unwrap()).map_err(|e| e.to_string())?;
    for (ell, k) in [(3, 1), (3, 2), (5, 1)] {
        frobenius_generator_check(&a1, 0, ell, k).map_err(|e| format!("split_a1 l={ell} k={k}: {e}"))?;
    }
    for name in ["diagonal_a1xa1", "quasisplit_a2"] {
        let iq = IQuantum::new(&catalog::load(name).unwrap()).map_err(|e| e.to_string())?;
        for i in iq.diagram().white_nodes() {
            frobenius_generator_check(&iq, i, 3, 1).map_err(|e| format!("{name} node {}: {e}", i + 1))?;
        }
    }
    within(t, Duration::from_secs(120), "frobenius")?;
    Ok("split A1 (3,1) (3,2) (5,1), diagonal A1xA1 and quasi-split A2 at l=3".into())
}

fn centrality() -> Outcome {
    let t = Instant::now();
    let mut detail = Vec::new();
    for name in ["quasisplit_a2", "diagonal_a1xa1"] {
        let iq = IQuantum::new(&catalog::load(name).unwrap()).map_err(|e| e.to_string())?;
        let r = centrality_check(&iq, 3).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{name}: {:?}", r.diff))?;
        detail.push(format!("{name} {}", r.detail.unwrap_or_default()));
    }
    within(t, Duration::from_secs(300), "centrality")?;
    Ok(detail.join(", "))
}

fn braid() -> Outcome {
    let mut detail = Vec::new();
    for case in RankTwoCase::ALL {
        let t = Instant::now();
        let r = braid_frobenius_check(case, 3).map_err(|e| e.to_string())?;
        ensure(r.pass && r.product_rule, || format!("{}: {:?}", case.id(), r.diff))?;
        within(t, Duration::from_secs(600), case.id())?;
        detail.push(format!("{} {} ms", case.id(), r.millis));
    }
    Ok(detail.join(", "))
}

fn small() -> Outcome {
    let t = Instant::now();
    for (name, want) in [("split_a1", 3), ("diagonal_a1xa1", 27)] {
        let r = small_iqg_dim_check(&catalog::load(name).unwrap(), 3).map_err(|e| e.to_string())?;
        ensure(r.pass && r.dim == want && r.pbw_independent, || format!("{name}: {r:?}"))?;
    }
    within(t, Duration::from_secs(60), "small iquantum group")?;
    Ok("dimensions 3 and 27".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("root-of-unity identities", unity),
        ("kernel lemma", kernel),
        ("graded degree", graded_degree),
        ("graded center", graded_center),
        ("clock-shift representations", clock_shift),
        ("rewriting engine", rewriting),
        ("frobenius generators", frobenius),
        ("centrality", centrality),
        ("braid/frobenius compatibility", braid),
        ("small iquantum group", small),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({ms} ms): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
