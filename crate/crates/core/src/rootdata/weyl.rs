use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cartan::CartanDatum;
use super::weight::Weight;
use super::RootError;

/// A root in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| *x >= 0) && self.0.iter().any(|x| *x > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `⟨α_i^∨, β⟩`.
    pub fn coroot(&self, d: &CartanDatum, i: usize) -> i64 {
        self.0.iter().enumerate().map(|(j, b)| d.a(i, j) * b).sum()
    }

    pub fn reflect(&self, d: &CartanDatum, i: usize) -> Root {
        let c = self.coroot(d, i);
        let mut v = self.0.clone();
        v[i] -= c;
        Root(v)
    }

    /// `(β, γ)`.
    pub fn inner(&self, d: &CartanDatum, o: &Root) -> i64 {
        let n = d.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.0[i] * o.0[j] * d.sym(i, j))
            .sum()
    }

    pub fn to_weight(&self, d: &CartanDatum) -> Weight {
        Weight::from_root(d, &self.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A word `s_{i_1} ⋯ s_{i_k}` in the simple reflections, 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, o: &WeylWord) -> WeylWord {
        WeylWord(self.0.iter().chain(&o.0).copied().collect())
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn validate(&self, d: &CartanDatum) -> Result<(), RootError> {
        self.0.iter().try_for_each(|i| d.check_index(*i))
    }

    /// Rightmost letter acts first.
    pub fn act(&self, d: &CartanDatum, mu: &Weight) -> Weight {
        self.0.iter().rev().fold(mu.clone(), |acc, i| acc.reflect(d, *i))
    }

    pub fn act_root(&self, d: &CartanDatum, beta: &Root) -> Root {
        self.0.iter().rev().fold(beta.clone(), |acc, i| acc.reflect(d, *i))
    }

    pub fn element(&self, d: &CartanDatum) -> WeylElement {
        WeylElement(self.act(d, &Weight::rho(d.rank())))
    }

    pub fn is_reduced(&self, d: &CartanDatum) -> bool {
        self.element(d).length(d) == self.len()
    }

    /// 1-based, comma separated.
    pub fn parse(src: &str) -> Result<WeylWord, RootError> {
        let src = src.trim();
        if src.is_empty() {
            return Ok(WeylWord::default());
        }
        src.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(RootError::Malformed(format!("bad word letter `{t}`"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(WeylWord)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Weyl group element, represented by its image of `ρ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement(Weight);

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement(Weight::rho(rank))
    }

    pub fn rho_image(&self) -> &Weight {
        &self.0
    }

    /// Reduced word by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self, d: &CartanDatum) -> WeylWord {
        let mut mu = self.0.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..d.rank()).find(|&i| mu.coroot(i).twice() < 0) {
            word.push(i);
            mu = mu.reflect(d, i);
        }
        WeylWord(word)
    }

    pub fn length(&self, d: &CartanDatum) -> usize {
        self.reduced_word(d).len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.coords().iter().all(|h| h.twice() == 2)
    }

    pub fn act(&self, d: &CartanDatum, mu: &Weight) -> Weight {
        self.reduced_word(d).act(d, mu)
    }

    pub fn act_root(&self, d: &CartanDatum, beta: &Root) -> Root {
        self.reduced_word(d).act_root(d, beta)
    }

    /// `self · o`.
    pub fn compose(&self, d: &CartanDatum, o: &WeylElement) -> WeylElement {
        WeylElement(self.act(d, &o.0))
    }

    pub fn inverse(&self, d: &CartanDatum) -> WeylElement {
        self.reduced_word(d).reversed().element(d)
    }
}

/// Positive roots, the longest element and related data of a finite root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: CartanDatum,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    longest: WeylWord,
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Self {
        let n = datum.rank();
        let mut positive: Vec<Root> = Vec::new();
        let mut index = HashMap::new();
        let mut queue: VecDeque<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        while let Some(b) = queue.pop_front() {
            if index.contains_key(&b) {
                continue;
            }
            index.insert(b.clone(), positive.len());
            positive.push(b.clone());
            for i in 0..n {
                let r = b.reflect(&datum, i);
                if r.is_positive() && !index.contains_key(&r) {
                    queue.push_back(r);
                }
            }
        }
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let index = positive.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let longest = longest_word(&datum, &(0..n).collect::<Vec<_>>());
        RootSystem { datum, positive, index, longest }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    pub fn w0(&self) -> &WeylWord {
        &self.longest
    }

    /// The diagram automorphism with `w₀(α_i) = −α_{τ₀ i}`.
    pub fn tau0(&self) -> Vec<usize> {
        let n = self.datum.rank();
        (0..n)
            .map(|i| {
                let img = self.longest.act_root(&self.datum, &Root::simple(n, i)).neg();
                img.0.iter().position(|x| *x == 1).expect("w0 permutes simple roots up to sign")
            })
            .collect()
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive
            .iter()
            .filter(|b| !w.act_root(&self.datum, b).is_positive())
            .count()
    }

    /// `β_k = s_{i_1}⋯s_{i_{k-1}}(α_{i_k})` for a reduced word of `w₀`.
    pub fn convex_order(&self, word: &WeylWord) -> Result<Vec<Root>, RootError> {
        word.validate(&self.datum)?;
        let n = self.datum.rank();
        let mut out = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let prefix = WeylWord(word.0[..k].to_vec());
            let beta = prefix.act_root(&self.datum, &Root::simple(n, word.0[k]));
            if !beta.is_positive() {
                return Err(RootError::NotReduced(word.to_string()));
            }
            out.push(beta);
        }
        if out.len() != self.num_positive() {
            return Err(RootError::NotLongest { got: out.len(), want: self.num_positive() });
        }
        Ok(out)
    }

    /// The roots `β_k` of an arbitrary reduced word (not necessarily for `w₀`).
    pub fn inversion_roots(&self, word: &WeylWord) -> Result<Vec<Root>, RootError> {
        word.validate(&self.datum)?;
        let n = self.datum.rank();
        (0..word.len())
            .map(|k| {
                let beta = WeylWord(word.0[..k].to_vec()).act_root(&self.datum, &Root::simple(n, word.0[k]));
                if beta.is_positive() {
                    Ok(beta)
                } else {
                    Err(RootError::NotReduced(word.to_string()))
                }
            })
            .collect()
    }
}

/// Reduced word for the longest element of the parabolic subgroup `W_J`.
pub fn longest_word(d: &CartanDatum, subset: &[usize]) -> WeylWord {
    let mut mu = Weight::rho(d.rank());
    while let Some(&j) = subset.iter().filter(|&&j| mu.coroot(j).twice() > 0).min() {
        mu = mu.reflect(d, j);
    }
    WeylElement(mu).reduced_word(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: &str) -> RootSystem {
        RootSystem::new(CartanDatum::from_type(t).unwrap())
    }

    #[test]
    fn counts() {
        assert_eq!(sys("A2").num_positive(), 3);
        assert_eq!(sys("B2").num_positive(), 4);
        assert_eq!(sys("A3").num_positive(), 6);
        assert_eq!(sys("A3").w0().len(), 6);
        assert_eq!(sys("G2").num_positive(), 6);
        assert_eq!(sys("F4").num_positive(), 24);
        assert_eq!(sys("E6").num_positive(), 36);
    }

    #[test]
    fn a2_convex_order() {
        let s = sys("A2");
        let order = s.convex_order(&WeylWord(vec![0, 1, 0])).unwrap();
        assert_eq!(order, vec![Root(vec![1, 0]), Root(vec![1, 1]), Root(vec![0, 1])]);
        assert!(matches!(s.convex_order(&WeylWord(vec![0, 0, 1])), Err(RootError::NotReduced(_))));
        assert!(matches!(s.convex_order(&WeylWord(vec![0, 1])), Err(RootError::NotLongest { .. })));
    }

    #[test]
    fn parabolic_longest() {
        let d = CartanDatum::from_type("A3").unwrap();
        assert_eq!(longest_word(&d, &[1]), WeylWord(vec![1]));
        assert_eq!(longest_word(&d, &[0, 1, 2]).len(), 6);
        assert_eq!(longest_word(&d, &[]).len(), 0);
    }

    #[test]
    fn w0_of_alpha1_in_a2() {
        let s = sys("A2");
        let img = s.w0().act_root(s.datum(), &Root::simple(2, 0));
        assert_eq!(img, Root(vec![0, -1]));
        assert_eq!(s.tau0(), vec![1, 0]);
        assert_eq!(sys("B2").tau0(), vec![0, 1]);
    }
}
