use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SatakeError;
use crate::rootdata::{longest_word, CartanDatum, Root, RootSystem, Weight, WeylWord};

/// A failed Satake axiom or sign condition; node indices are 1-based in messages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NotInvolution,
    CartanNotInvariant { i: usize, j: usize },
    BlackNotStable { j: usize },
    BlackNotOpposite { j: usize },
    NonIntegralPairing { j: usize, twice: i64 },
    BadSign { i: usize },
    SignProduct { i: usize },
    SignEquality { i: usize },
    SignConvention { i: usize },
    SignOnBlack { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInvolution => write!(f, "tau is not an involution of the index set"),
            Violation::CartanNotInvariant { i, j } => {
                write!(f, "a_{{{i},{j}}} differs from a_{{tau {i}, tau {j}}}")
            }
            Violation::BlackNotStable { j } => write!(f, "tau moves black node {j} to a white node"),
            Violation::BlackNotOpposite { j } => {
                write!(f, "w_black(alpha_{j}) is not -alpha_{{tau {j}}}")
            }
            Violation::NonIntegralPairing { j, twice } => {
                write!(f, "alpha_{j}(rho_black^vee) = {twice}/2 is not an integer")
            }
            Violation::BadSign { i } => write!(f, "sign at node {i} must be +1 or -1"),
            Violation::SignProduct { i } => {
                write!(f, "c_{i} c_{{tau {i}}} disagrees with (-1)^(2 alpha_{i}(rho_black^vee))")
            }
            Violation::SignEquality { i } => write!(f, "c_{i} must equal c_{{tau {i}}}"),
            Violation::SignConvention { i } => write!(f, "c_{i} must be -1 by convention"),
            Violation::SignOnBlack { i } => write!(f, "sign supplied for black node {i}"),
        }
    }
}

/// JSON input: `{"type": "A3", "black": [2], "tau": {"1": 3, "3": 1}, "signs": {"1": -1, "3": 1}}`.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub black: Vec<usize>,
    #[serde(default)]
    pub tau: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<BTreeMap<String, i64>>,
}

fn node_key(k: &str, n: usize) -> Result<usize, SatakeError> {
    match k.trim().parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(SatakeError::Malformed(format!("bad node label `{k}`"))),
    }
}

impl DiagramSpec {
    pub fn datum(&self) -> Result<CartanDatum, SatakeError> {
        match (&self.cartan_type, &self.cartan) {
            (Some(t), None) => Ok(CartanDatum::from_type(t)?),
            (None, Some(m)) => Ok(CartanDatum::from_matrix(m.clone())?),
            _ => Err(SatakeError::Malformed("give exactly one of `type` or `cartan`".into())),
        }
    }

    /// 0-based black nodes, involution and optional signs.
    #[allow(clippy::type_complexity)]
    pub fn parts(&self, n: usize) -> Result<(Vec<usize>, Vec<usize>, Option<BTreeMap<usize, i64>>), SatakeError> {
        let mut black = Vec::new();
        for b in &self.black {
            if !(1..=n).contains(b) {
                return Err(SatakeError::Malformed(format!("black node {b} out of range")));
            }
            black.push(b - 1);
        }
        let mut tau: Vec<usize> = (0..n).collect();
        for (k, v) in &self.tau {
            let i = node_key(k, n)?;
            if !(1..=n).contains(v) {
                return Err(SatakeError::Malformed(format!("tau image {v} out of range")));
            }
            tau[i] = v - 1;
        }
        let signs = match &self.signs {
            None => None,
            Some(m) => Some(
                m.iter()
                    .map(|(k, v)| node_key(k, n).map(|i| (i, *v)))
                    .collect::<Result<BTreeMap<_, _>, _>>()?,
            ),
        };
        Ok((black, tau, signs))
    }

    pub fn build(&self) -> Result<SatakeDiagram, SatakeError> {
        let datum = self.datum()?;
        let (black, tau, signs) = self.parts(datum.rank())?;
        let mut d = SatakeDiagram::new(datum, &black, tau, signs)?;
        d.name = self.name.clone();
        Ok(d)
    }
}

/// A validated Satake diagram `(I = I∘ ⊔ I•, τ)` with signs `c_i`.
#[derive(Clone, Debug)]
pub struct SatakeDiagram {
    roots: RootSystem,
    black: Vec<bool>,
    tau: Vec<usize>,
    signs: Vec<i64>,
    w_black: WeylWord,
    name: Option<String>,
}

/// Twice `α_j(ρ•^∨)`, summed over the positive roots of the black subsystem.
fn twice_rho_black(roots: &RootSystem, black: &[bool], j: usize) -> i64 {
    let d = roots.datum();
    let n = d.rank();
    let aj = Root::simple(n, j);
    roots
        .positive_roots()
        .iter()
        .filter(|g| g.0.iter().enumerate().all(|(k, c)| *c == 0 || black[k]))
        .map(|g| {
            let num = 2 * g.inner(d, &aj);
            let den = g.inner(d, g);
            debug_assert_eq!(num % den, 0);
            num / den
        })
        .sum()
}

/// Checks the four Satake axioms and, if given, the sign conditions.
pub fn validate_satake(
    datum: &CartanDatum,
    black_nodes: &[usize],
    tau: &[usize],
    signs: Option<&BTreeMap<usize, i64>>,
) -> Result<Vec<Violation>, SatakeError> {
    let n = datum.rank();
    if tau.len() != n || black_nodes.iter().any(|b| *b >= n) {
        return Err(SatakeError::Malformed("node data does not match the rank".into()));
    }
    let mut out = Vec::new();
    if tau.iter().any(|t| *t >= n) || (0..n).any(|i| tau[tau[i]] != i) {
        out.push(Violation::NotInvolution);
        return Ok(out);
    }
    let mut black = vec![false; n];
    for b in black_nodes {
        black[*b] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if datum.a(i, j) != datum.a(tau[i], tau[j]) {
                out.push(Violation::CartanNotInvariant { i: i + 1, j: j + 1 });
            }
        }
    }
    for j in 0..n {
        if black[j] && !black[tau[j]] {
            out.push(Violation::BlackNotStable { j: j + 1 });
        }
    }
    let roots = RootSystem::new(datum.clone());
    let black_list: Vec<usize> = (0..n).filter(|k| black[*k]).collect();
    let wb = longest_word(datum, &black_list);
    for j in black_list.iter().copied() {
        if wb.act_root(datum, &Root::simple(n, j)) != Root::simple(n, tau[j]).neg() {
            out.push(Violation::BlackNotOpposite { j: j + 1 });
        }
    }
    for j in 0..n {
        if !black[j] && tau[j] == j {
            let t = twice_rho_black(&roots, &black, j);
            if t % 2 != 0 {
                out.push(Violation::NonIntegralPairing { j: j + 1, twice: t });
            }
        }
    }
    if let Some(s) = signs {
        for (&i, &c) in s {
            if i >= n {
                return Err(SatakeError::Malformed(format!("sign for node {} out of range", i + 1)));
            }
            if black[i] {
                out.push(Violation::SignOnBlack { i: i + 1 });
            } else if c != 1 && c != -1 {
                out.push(Violation::BadSign { i: i + 1 });
            }
        }
        if out.is_empty() {
            let sign = |i: usize| s.get(&i).copied().unwrap_or(-1);
            out.extend(sign_violations(datum, &roots, &black, tau, &wb, sign));
        }
    }
    Ok(out)
}

fn sign_violations(
    datum: &CartanDatum,
    roots: &RootSystem,
    black: &[bool],
    tau: &[usize],
    wb: &WeylWord,
    sign: impl Fn(usize) -> i64,
) -> Vec<Violation> {
    let n = datum.rank();
    let mut out = Vec::new();
    for i in (0..n).filter(|i| !black[*i]) {
        let parity = twice_rho_black(roots, black, i).rem_euclid(2);
        let want = if parity == 0 { 1 } else { -1 };
        if sign(i) * sign(tau[i]) != want {
            out.push(Violation::SignProduct { i: i + 1 });
        }
        let ai = Root::simple(n, i);
        let theta_ai = wb.act_root(datum, &Root::simple(n, tau[i])).neg();
        if ai.inner(datum, &theta_ai) == 0 && sign(i) != sign(tau[i]) {
            out.push(Violation::SignEquality { i: i + 1 });
        }
        let fixed = wb.act_root(datum, &ai) == ai;
        if (tau[i] == i || fixed) && sign(i) != -1 {
            out.push(Violation::SignConvention { i: i + 1 });
        }
    }
    out
}

impl SatakeDiagram {
    /// Validates; signs default to `-1` everywhere when that is admissible.
    pub fn new(
        datum: CartanDatum,
        black_nodes: &[usize],
        tau: Vec<usize>,
        signs: Option<BTreeMap<usize, i64>>,
    ) -> Result<Self, SatakeError> {
        let violations = validate_satake(&datum, black_nodes, &tau, signs.as_ref())?;
        if !violations.is_empty() {
            return Err(SatakeError::Invalid(violations));
        }
        let n = datum.rank();
        let mut black = vec![false; n];
        for b in black_nodes {
            black[*b] = true;
        }
        let black_list: Vec<usize> = (0..n).filter(|k| black[*k]).collect();
        let w_black = longest_word(&datum, &black_list);
        let roots = RootSystem::new(datum);
        let signs: Vec<i64> = (0..n)
            .map(|i| match (&signs, black[i]) {
                (_, true) => 0,
                (Some(s), false) => s.get(&i).copied().unwrap_or(-1),
                (None, false) => -1,
            })
            .collect();
        let defaults = sign_violations(roots.datum(), &roots, &black, &tau, &w_black, |i| signs[i]);
        if !defaults.is_empty() {
            return Err(SatakeError::SignsRequired(defaults));
        }
        Ok(SatakeDiagram { roots, black, tau, signs, w_black, name: None })
    }

    pub fn from_json(src: &str) -> Result<Self, SatakeError> {
        let spec: DiagramSpec =
            serde_json::from_str(src).map_err(|e| SatakeError::Malformed(e.to_string()))?;
        spec.build()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn datum(&self) -> &CartanDatum {
        self.roots.datum()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.black.len()
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.black[i]
    }

    pub fn black_nodes(&self) -> Vec<usize> {
        (0..self.rank()).filter(|i| self.black[*i]).collect()
    }

    pub fn white_nodes(&self) -> Vec<usize> {
        (0..self.rank()).filter(|i| !self.black[*i]).collect()
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_map(&self) -> &[usize] {
        &self.tau
    }

    /// `c_i` for white nodes, `0` for black ones.
    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i]
    }

    pub fn w_black(&self) -> &WeylWord {
        &self.w_black
    }

    pub fn is_quasi_split(&self) -> bool {
        self.black.iter().all(|b| !b)
    }

    /// Twice `α_j(ρ•^∨)`.
    pub fn twice_rho_black(&self, j: usize) -> i64 {
        twice_rho_black(&self.roots, &self.black, j)
    }

    /// `τμ`, permuting fundamental-weight coordinates.
    pub fn tau_weight(&self, mu: &Weight) -> Weight {
        let mut c = mu.coords().to_vec();
        for i in 0..self.rank() {
            c[self.tau[i]] = mu.coords()[i];
        }
        Weight::from_halves(c)
    }

    pub fn tau_root(&self, beta: &Root) -> Root {
        let mut c = beta.0.clone();
        for i in 0..self.rank() {
            c[self.tau[i]] = beta.0[i];
        }
        Root(c)
    }

    /// `θ(μ) = −w•(τμ)`.
    pub fn theta(&self, mu: &Weight) -> Weight {
        self.w_black.act(self.datum(), &self.tau_weight(mu)).neg()
    }

    pub fn theta_root(&self, beta: &Root) -> Root {
        self.w_black.act_root(self.datum(), &self.tau_root(beta)).neg()
    }

    /// `Σ_{i ∈ I∘} a_i` for `β = Σ a_i α_i`.
    pub fn rel_height(&self, beta: &Root) -> i64 {
        beta.0.iter().enumerate().filter(|(i, _)| !self.black[*i]).map(|(_, a)| a).sum()
    }

    /// One representative (the smallest) of each τ-orbit in `I∘`.
    pub fn white_orbit_reps(&self) -> Vec<usize> {
        self.white_nodes().into_iter().filter(|i| self.tau[*i] >= *i).collect()
    }
}
