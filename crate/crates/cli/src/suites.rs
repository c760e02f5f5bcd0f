//! Expansion of a run configuration into independent checks. All validation happens here, before
//! any check runs, so that a bad level or diagram is a configuration error and never a failure.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use iquantum::catalog;
use iquantum::gradedqsp::{build_s, GradedError, GradedPresentation};
use iquantum::iqg::{
    braid_frobenius_check, centrality_check, check_level, frobenius_report, product_rule_check, small_iqg_dim_check,
    DividedCase, IQuantum, RankTwoCase,
};
use iquantum::qcoeff::verify_unity_identities;
use iquantum::rootdata::{CartanDatum, WeylWord};
use iquantum::satake::{AdaptedWord, SatakeDiagram, SatakeInvariants};
use iquantum::uq::{braid_suite, confluence_suite, UqAlgebra, DEFAULT_BOUND, MAX_RANK};

use crate::config::{Command, RunConfig, Suite};
use crate::report::Record;
use crate::CliError;

pub type Task = Box<dyn Fn() -> Record + Send + Sync>;

const FROBENIUS_CASES: &[&str] = &["split_a1", "diagonal_a1xa1", "quasisplit_a2", "split_a2", "split_b2"];
const SMALL_CASES: &[&str] = &["split_a1", "diagonal_a1xa1"];
const REWRITE_TYPES: &[&str] = &["A1", "A2", "B2", "A3"];

pub fn plan(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    if cfg.jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    let word_allowed = matches!(cfg.command, Command::Invariants | Command::Verify(Suite::Kernel));
    if cfg.word.is_some() && !word_allowed {
        return Err(CliError::Config("--word only applies to `invariants` and `verify kernel`".into()));
    }
    match cfg.command {
        Command::Invariants => invariants(cfg),
        Command::Verify(Suite::Unity) => unity(cfg),
        Command::Verify(Suite::Kernel) => kernel(cfg),
        Command::Verify(Suite::Frobenius) => frobenius(cfg),
        Command::Verify(Suite::Braid) => braid(cfg),
        Command::Verify(Suite::Smalldim) => smalldim(cfg),
        Command::Verify(Suite::Rewrite) => rewrite(cfg),
    }
}

fn levels(cfg: &RunConfig, default: &[u32]) -> Vec<u32> {
    let mut v = if cfg.ells.is_empty() { default.to_vec() } else { cfg.ells.clone() };
    v.sort_unstable();
    v.dedup();
    v
}

/// A diagram file, or a fixture name when no such file exists.
pub fn load_diagram(src: &str) -> Result<SatakeDiagram, CliError> {
    let path = Path::new(src);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: src.into(), source: e })?;
        let d = SatakeDiagram::from_json(&text)?;
        return Ok(match d.name() {
            Some(_) => d,
            None => {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("diagram").to_string();
                d.with_name(&stem)
            }
        });
    }
    if catalog::source(src).is_some() {
        return Ok(catalog::load(src)?);
    }
    Err(CliError::Config(format!("no diagram file or fixture named `{src}`")))
}

fn diagrams(cfg: &RunConfig, default: &[&str]) -> Result<Vec<SatakeDiagram>, CliError> {
    match &cfg.diagram {
        Some(src) => Ok(vec![load_diagram(src)?]),
        None => default.iter().map(|n| Ok(catalog::load(n)?)).collect(),
    }
}

fn case_name(d: &SatakeDiagram) -> String {
    d.name().unwrap_or("diagram").to_string()
}

fn presentation(cfg: &RunConfig, d: &SatakeDiagram) -> Result<GradedPresentation, CliError> {
    let word = match &cfg.word {
        None => None,
        Some(w) => {
            let w = WeylWord::parse(w).map_err(|e| CliError::Config(format!("bad --word: {e}")))?;
            Some(d.adapted_word_from(&w)?)
        }
    };
    Ok(build_s(d, word.as_ref()))
}

fn graded_levels(p: &GradedPresentation, ells: &[u32]) -> Result<(), CliError> {
    for &ell in ells {
        p.check_level(ell as i128).map_err(|e| CliError::Level { ell, reason: e.to_string() })?;
    }
    Ok(())
}

fn iqg_levels(datum: &CartanDatum, ells: &[u32]) -> Result<(), CliError> {
    for &ell in ells {
        check_level(datum, ell).map_err(|e| CliError::Level { ell, reason: e.to_string() })?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DegreeRow {
    ell: u32,
    degree: u128,
    expected: u128,
    pass: bool,
    /// `ℓ` raised to each branching exponent.
    branching: [u128; 2],
}

#[derive(Serialize)]
struct InvariantReport {
    invariants: SatakeInvariants,
    word: AdaptedWord,
    s: Vec<Vec<i128>>,
    degrees: Vec<DegreeRow>,
}

fn invariant_report(p: &GradedPresentation, ells: &[u32]) -> Result<(bool, InvariantReport), GradedError> {
    let inv = p.diagram().invariants();
    let degrees = ells
        .iter()
        .map(|&ell| {
            let c = p.graded_degree(ell as i128)?;
            let [a, b] = inv.branching_exponents;
            let branching = [(ell as u128).pow(a as u32), (ell as u128).pow(b as u32)];
            Ok(DegreeRow { ell, degree: c.degree, expected: c.expected, pass: c.pass, branching })
        })
        .collect::<Result<Vec<_>, GradedError>>()?;
    let pass = degrees.iter().all(|r| r.pass);
    Ok((pass, InvariantReport { invariants: inv, word: p.word.clone(), s: p.s.to_rows(), degrees }))
}

fn invariants(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3, 5, 7]);
    let all: Vec<&str> = catalog::names().collect();
    let mut tasks: Vec<Task> = Vec::new();
    for d in diagrams(cfg, &all)? {
        let p = presentation(cfg, &d)?;
        graded_levels(&p, &ells)?;
        let (case, ells) = (case_name(&d), ells.clone());
        tasks.push(Box::new(move || {
            let t = Instant::now();
            Record::from_result("invariants", &case, None, t, invariant_report(&p, &ells))
        }));
    }
    Ok(tasks)
}

fn unity(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3, 5, 7]);
    if let Some(&ell) = ells.iter().find(|&&l| l < 3 || l % 2 == 0) {
        return Err(CliError::Level { ell, reason: format!("level {ell} must be odd and at least 3") });
    }
    Ok(ells
        .into_iter()
        .map(|ell| -> Task {
            Box::new(move || {
                let t = Instant::now();
                let r = verify_unity_identities(ell).map(|r| (r.pass(), r));
                Record::from_result("unity", "root-of-unity identities", Some(ell), t, r)
            })
        })
        .collect())
}

fn kernel(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3, 5, 7]);
    let all: Vec<&str> = catalog::names().collect();
    let mut tasks: Vec<Task> = Vec::new();
    for d in diagrams(cfg, &all)? {
        let p = Arc::new(presentation(cfg, &d)?);
        graded_levels(&p, &ells)?;
        for &ell in &ells {
            let (p, case) = (Arc::clone(&p), case_name(&d));
            tasks.push(Box::new(move || {
                let t = Instant::now();
                let r = p.verify_kernel_lemma(ell as i128).map(|c| (c.pass, c));
                Record::from_result("kernel", &case, Some(ell), t, r)
            }));
        }
    }
    Ok(tasks)
}

fn frobenius(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3]);
    let mut tasks: Vec<Task> = Vec::new();
    for d in diagrams(cfg, FROBENIUS_CASES)? {
        iqg_levels(d.datum(), &ells)?;
        if d.rank() > MAX_RANK {
            return Err(CliError::Config(format!("rank {} exceeds the engine limit {MAX_RANK}", d.rank())));
        }
        let iq = Arc::new(IQuantum::new(&d).map_err(|e| CliError::Config(e.to_string()))?);
        let powers: &[u32] = if d.rank() == 1 { &[1, 2] } else { &[1] };
        for &ell in &ells {
            for i in d.white_nodes() {
                for &k in powers {
                    let iq = Arc::clone(&iq);
                    tasks.push(Box::new(move || {
                        let t = Instant::now();
                        let r = frobenius_report(&iq, i, ell, k).map(|r| (r.pass, r));
                        Record::from_result("frobenius", &format!("{} node {} k={k}", iq.label(), i + 1), Some(ell), t, r)
                    }));
                }
            }
            if d.rank() <= 2 {
                let iq = Arc::clone(&iq);
                tasks.push(Box::new(move || {
                    let t = Instant::now();
                    let r = centrality_check(&iq, ell).map(|r| (r.pass, r));
                    Record::from_result("centrality", &iq.label(), Some(ell), t, r)
                }));
            }
            if d.rank() == 1 && matches!(iq.divided_case(0), Ok(DividedCase::Fixed)) {
                let iq = Arc::clone(&iq);
                tasks.push(Box::new(move || {
                    let t = Instant::now();
                    let r = product_rule_check(&iq, 0, ell, true).map(|r| (r.pass, r));
                    Record::from_result("product_rule", &iq.label(), Some(ell), t, r)
                }));
            }
        }
    }
    Ok(tasks)
}

fn braid(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3]);
    let cases: Vec<RankTwoCase> = match &cfg.diagram {
        None => RankTwoCase::ALL.to_vec(),
        Some(src) => {
            let name = case_name(&load_diagram(src)?);
            let hit: Vec<RankTwoCase> = RankTwoCase::ALL.into_iter().filter(|c| c.fixture() == name).collect();
            if hit.is_empty() {
                return Err(CliError::Config(format!("no braid case is set up on `{name}`")));
            }
            hit
        }
    };
    let mut tasks: Vec<Task> = Vec::new();
    for c in cases {
        iqg_levels(catalog::load(c.fixture())?.datum(), &ells)?;
        for &ell in &ells {
            tasks.push(Box::new(move || {
                let t = Instant::now();
                let r = braid_frobenius_check(c, ell).map(|r| (r.pass && r.product_rule, r));
                Record::from_result("braid", &format!("{} ({})", c.id(), c.fixture()), Some(ell), t, r)
            }));
        }
    }
    Ok(tasks)
}

fn smalldim(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let ells = levels(cfg, &[3]);
    let mut tasks: Vec<Task> = Vec::new();
    for d in diagrams(cfg, SMALL_CASES)? {
        iqg_levels(d.datum(), &ells)?;
        if d.roots().positive_roots().len() != d.rank() {
            return Err(CliError::Config(format!("{}: the identity fibre needs every positive root simple", case_name(&d))));
        }
        let d = Arc::new(d);
        for &ell in &ells {
            let d = Arc::clone(&d);
            tasks.push(Box::new(move || {
                let t = Instant::now();
                let r = small_iqg_dim_check(&d, ell).map(|r| (r.pass, r));
                Record::from_result("smalldim", &case_name(&d), Some(ell), t, r)
            }));
        }
    }
    Ok(tasks)
}

fn rewrite(cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let data: Vec<(String, CartanDatum)> = match &cfg.diagram {
        Some(src) => {
            let d = load_diagram(src)?;
            vec![(case_name(&d), d.datum().clone())]
        }
        None => REWRITE_TYPES.iter().map(|t| Ok((t.to_string(), CartanDatum::from_type(t)?))).collect::<Result<_, CliError>>()?,
    };
    let ells = levels(cfg, &[]);
    if let Some(&ell) = ells.iter().find(|&&l| l < 3 || l % 2 == 0) {
        return Err(CliError::Level { ell, reason: format!("level {ell} must be odd and at least 3") });
    }
    let mut tasks: Vec<Task> = Vec::new();
    for (case, datum) in data {
        let alg = Arc::new(UqAlgebra::new(&datum, DEFAULT_BOUND).map_err(|e| CliError::Config(e.to_string()))?);
        let (a, c) = (Arc::clone(&alg), case.clone());
        tasks.push(Box::new(move || {
            let t = Instant::now();
            Record::from_result("confluence", &c, None, t, confluence_suite(&a, DEFAULT_BOUND).map(|r| (r.pass, r)))
        }));
        let (a, c) = (Arc::clone(&alg), case.clone());
        tasks.push(Box::new(move || {
            let t = Instant::now();
            Record::from_result("braid_symmetries", &c, None, t, braid_suite(&a).map(|r| (r.pass, r)))
        }));
        for &ell in &ells {
            let (a, c) = (Arc::clone(&alg), case.clone());
            tasks.push(Box::new(move || {
                let t = Instant::now();
                let r = a.at_root(ell).and_then(|s| confluence_suite(&s, DEFAULT_BOUND)).map(|r| (r.pass, r));
                Record::from_result("confluence", &c, Some(ell), t, r)
            }));
        }
    }
    Ok(tasks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_sorted_and_deduplicated() {
        let cfg = RunConfig::new(Command::Verify(Suite::Unity)).ells(&[7, 3, 7]);
        assert_eq!(levels(&cfg, &[5]), vec![3, 7]);
        assert_eq!(levels(&RunConfig::new(Command::Invariants), &[5]), vec![5]);
    }

    #[test]
    fn validation_precedes_dispatch() {
        let even = RunConfig::new(Command::Verify(Suite::Frobenius)).ells(&[3, 6]);
        assert!(matches!(plan(&even), Err(CliError::Level { ell: 6, .. })));
        let idle = RunConfig::new(Command::Verify(Suite::Braid)).jobs(0);
        assert!(matches!(plan(&idle), Err(CliError::Config(_))));
        assert_eq!(plan(&RunConfig::new(Command::Verify(Suite::Braid))).unwrap().len(), 3);
    }
}
