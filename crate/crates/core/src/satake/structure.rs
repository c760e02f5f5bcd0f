use serde::Serialize;

use super::diagram::SatakeDiagram;
use super::SatakeError;
use crate::lattice::{hermite_rows, integer_kernel, IntMatrix};
use crate::rootdata::{longest_word, Root, Weight, WeylElement, WeylWord};

/// Reduced word for `w₀` split as (word for `𝒘₀`)·(word for `w•`), with its root orders.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AdaptedWord {
    pub relative: WeylWord,
    pub black: WeylWord,
    /// The letters `j'` with `α_{j'} = −w₀(α_{τj})`, applied to the black word.
    pub primed: WeylWord,
    pub betas: Vec<Root>,
    pub gammas: Vec<Root>,
}

impl AdaptedWord {
    pub fn full(&self) -> WeylWord {
        self.relative.concat(&self.black)
    }

    /// `β_1, …, β_N` with `β_{L+t} = γ_t`.
    pub fn all_roots(&self) -> Vec<Root> {
        self.betas.iter().chain(&self.gammas).cloned().collect()
    }

    pub fn l(&self) -> usize {
        self.relative.len()
    }

    pub fn m(&self) -> usize {
        self.black.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeReflection {
    pub node: usize,
    pub word: WeylWord,
    pub length: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeStructure {
    pub reflections: Vec<RelativeReflection>,
    pub relative_rank: usize,
    pub relative_longest: WeylWord,
    pub l: usize,
    pub m: usize,
    pub adapted: AdaptedWord,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SatakeInvariants {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub rank_g: usize,
    pub dim_g: usize,
    pub dim_k: usize,
    pub rank_k: usize,
    pub n0: usize,
    pub rank_p_theta: usize,
    pub real_rank: usize,
    pub covering_degree: u64,
    pub max_class_dim: usize,
    pub max_leaf_dim: usize,
    pub branching_exponents: [usize; 2],
}

impl SatakeDiagram {
    fn element(&self, w: &WeylWord) -> WeylElement {
        w.element(self.datum())
    }

    /// `𝒘₀ = w₀ w•⁻¹`.
    pub fn relative_longest(&self) -> WeylElement {
        let d = self.datum();
        self.element(self.roots().w0()).compose(d, &self.w_black().element(d).inverse(d))
    }

    /// The letter `j'` with `α_{j'} = −w₀(α_{τj})`.
    pub fn prime(&self, j: usize) -> usize {
        let n = self.rank();
        let img = self.roots().w0().act_root(self.datum(), &Root::simple(n, self.tau(j))).neg();
        img.0.iter().position(|x| *x == 1).expect("w0 permutes simple roots up to sign")
    }

    /// Adapted word built from smallest-descent reduced words.
    pub fn adapted_word(&self) -> AdaptedWord {
        let rel = self.relative_longest().reduced_word(self.datum());
        self.adapted_from(rel, self.w_black().clone()).expect("canonical words are adapted")
    }

    /// Adapted word from a user word for `w₀` whose last `M` letters form a word for `w•`.
    pub fn adapted_word_from(&self, word: &WeylWord) -> Result<AdaptedWord, SatakeError> {
        let m = self.w_black().len();
        let n = self.roots().num_positive();
        if word.len() != n {
            return Err(SatakeError::BadWord(format!("{word} must have length {n}")));
        }
        let rel = WeylWord(word.0[..n - m].to_vec());
        let black = WeylWord(word.0[n - m..].to_vec());
        self.adapted_from(rel, black)
    }

    fn adapted_from(&self, rel: WeylWord, black: WeylWord) -> Result<AdaptedWord, SatakeError> {
        let d = self.datum();
        rel.validate(d)?;
        black.validate(d)?;
        if black.element(d) != self.w_black().element(d) || !black.is_reduced(d) {
            return Err(SatakeError::BadWord(format!("{black} is not a reduced word for w_black")));
        }
        if rel.element(d) != self.relative_longest() || !rel.is_reduced(d) {
            return Err(SatakeError::BadWord(format!("{rel} is not a reduced word for the relative longest element")));
        }
        let full = rel.concat(&black);
        let order = self.roots().convex_order(&full)?;
        let primed = WeylWord(black.0.iter().map(|j| self.prime(*j)).collect());
        let gammas = self.roots().inversion_roots(&primed)?;
        let l = rel.len();
        debug_assert_eq!(&order[l..], &gammas[..]);
        Ok(AdaptedWord { betas: order[..l].to_vec(), gammas, relative: rel, black, primed })
    }

    /// `bs_i = w_{•,i} w•⁻¹` for one node per τ-orbit of `I∘`.
    pub fn relative_structure(&self) -> RelativeStructure {
        let d = self.datum();
        let wb_inv = self.w_black().element(d).inverse(d);
        let reflections = self
            .white_orbit_reps()
            .into_iter()
            .map(|i| {
                let mut sub = self.black_nodes();
                sub.push(i);
                sub.push(self.tau(i));
                sub.sort_unstable();
                sub.dedup();
                let wi = longest_word(d, &sub).element(d);
                let word = wi.compose(d, &wb_inv).reduced_word(d);
                RelativeReflection { node: i, length: word.len(), word }
            })
            .collect::<Vec<_>>();
        let adapted = self.adapted_word();
        RelativeStructure {
            relative_rank: reflections.len(),
            reflections,
            relative_longest: adapted.relative.clone(),
            l: adapted.l(),
            m: adapted.m(),
            adapted,
        }
    }

    /// Matrix of `θ` on fundamental-weight coordinates (columns are images of `ω_i`).
    pub fn theta_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let cols: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let img = self.theta(&Weight::fundamental(n, i));
                img.to_ints().expect("θ preserves P").iter().map(|x| *x as i128).collect()
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// A ℤ-basis of `P^θ` in Hermite normal form, as weights.
    pub fn p_theta_basis(&self) -> Vec<Weight> {
        let n = self.rank();
        let mut m = self.theta_matrix();
        for i in 0..n {
            m[(i, i)] -= 1;
        }
        hermite_rows(&integer_kernel(&m).transpose())
            .to_rows()
            .into_iter()
            .map(|c| Weight::from_ints(&c.iter().map(|x| *x as i64).collect::<Vec<_>>()))
            .collect()
    }

    /// Whether `θ(μ) = μ + w₀μ − w•μ`.
    pub fn in_p_imath(&self, mu: &Weight) -> bool {
        let d = self.datum();
        let w0mu = self.roots().w0().act(d, mu);
        let wbmu = self.w_black().act(d, mu);
        mu.is_integral() && self.theta(mu) == mu.add(&w0mu).sub(&wbmu)
    }

    /// `ν_k = ω_{i_k} + ω_{τ₀τ i_k}` (or `ω_{i_k}`), one per `ττ₀`-orbit.
    pub fn p_imath_basis(&self) -> Vec<Weight> {
        let n = self.rank();
        let tau0 = self.roots().tau0();
        let mut out = Vec::new();
        for i in 0..n {
            let j = tau0[self.tau(i)];
            if j < i {
                continue;
            }
            let mut nu = Weight::fundamental(n, i);
            if j != i {
                nu = nu.add(&Weight::fundamental(n, j));
            }
            debug_assert!(self.in_p_imath(&nu));
            out.push(nu);
        }
        out
    }

    pub fn invariants(&self) -> SatakeInvariants {
        let n_pos = self.roots().num_positive();
        let m = self.w_black().len();
        let r = self.p_theta_basis().len();
        let rank_g = self.rank();
        let dim_g = 2 * n_pos + rank_g;
        let dim_k = n_pos + m + r;
        let rank_k = self.p_imath_basis().len();
        assert!(dim_k >= rank_k && (dim_k - rank_k).is_multiple_of(2), "N0 must be a non-negative integer");
        let n0 = (dim_k - rank_k) / 2;
        SatakeInvariants {
            n: n_pos,
            m,
            l: n_pos - m,
            rank_g,
            dim_g,
            dim_k,
            rank_k,
            n0,
            rank_p_theta: r,
            real_rank: self.white_orbit_reps().len(),
            covering_degree: 1u64 << self.black_nodes().len(),
            max_class_dim: dim_g - rank_k,
            max_leaf_dim: dim_k - rank_k,
            branching_exponents: [n_pos - n0, n_pos - n0 + rank_g - rank_k],
        }
    }
}
