use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use serde::Serialize;

use super::modp::Reduction;
use super::{check_ell, SkewForm, TwistedError};
use crate::lattice::{gcd, skew_normal};
use crate::qcoeff::CyclotomicScalar;

/// A matrix with exactly one nonzero entry per column: column `j` is `diag[j] · e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    diag: Vec<CyclotomicScalar>,
}

impl MonomialMatrix {
    pub fn identity(ell: u32, dim: usize) -> Self {
        MonomialMatrix { perm: (0..dim).collect(), diag: vec![CyclotomicScalar::one(ell); dim] }
    }

    pub fn scalar(c: CyclotomicScalar, dim: usize) -> Self {
        MonomialMatrix { perm: (0..dim).collect(), diag: vec![c; dim] }
    }

    /// `diag(v^{0}, v^{step}, v^{2 step}, …)` with `v = ṽ²`.
    pub fn clock(ell: u32, dim: usize, step: i64) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            diag: (0..dim).map(|k| CyclotomicScalar::root_pow(ell, 2 * step * k as i64)).collect(),
        }
    }

    /// `e_k ↦ e_{k+1 mod dim}`.
    pub fn shift(ell: u32, dim: usize) -> Self {
        MonomialMatrix { perm: (0..dim).map(|k| (k + 1) % dim).collect(), diag: vec![CyclotomicScalar::one(ell); dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn diag(&self) -> &[CyclotomicScalar] {
        &self.diag
    }

    pub fn mul(&self, o: &MonomialMatrix) -> MonomialMatrix {
        let (perm, diag) = (0..o.dim())
            .map(|j| {
                let mid = o.perm[j];
                (self.perm[mid], self.diag[mid].mul(&o.diag[j]))
            })
            .unzip();
        MonomialMatrix { perm, diag }
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> MonomialMatrix {
        MonomialMatrix { perm: self.perm.clone(), diag: self.diag.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn inverse(&self) -> Option<MonomialMatrix> {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut diag = vec![CyclotomicScalar::zero(1); n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            diag[self.perm[j]] = self.diag[j].inv().ok()?;
        }
        Some(MonomialMatrix { perm, diag })
    }

    pub fn pow(&self, e: i64) -> Option<MonomialMatrix> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let ell = self.diag.first().map(|c| c.ell()).unwrap_or(3);
        Some((0..e.unsigned_abs()).fold(MonomialMatrix::identity(ell, self.dim()), |acc, _| acc.mul(&base)))
    }

    pub fn kron(&self, o: &MonomialMatrix) -> MonomialMatrix {
        let db = o.dim();
        let mut perm = Vec::with_capacity(self.dim() * db);
        let mut diag = Vec::with_capacity(self.dim() * db);
        for i in 0..self.dim() {
            for k in 0..db {
                perm.push(self.perm[i] * db + o.perm[k]);
                diag.push(self.diag[i].mul(&o.diag[k]));
            }
        }
        MonomialMatrix { perm, diag }
    }

    pub fn to_dense(&self) -> Vec<Vec<CyclotomicScalar>> {
        let n = self.dim();
        let ell = self.diag.first().map(|c| c.ell()).unwrap_or(3);
        let mut m = vec![vec![CyclotomicScalar::zero(ell); n]; n];
        for j in 0..n {
            m[self.perm[j]][j] = self.diag[j].clone();
        }
        m
    }

    /// Dense rows whose entries are residue coefficient vectors.
    pub fn to_coefficient_rows(&self) -> Vec<Vec<Vec<String>>> {
        self.to_dense()
            .iter()
            .map(|row| row.iter().map(|c| c.coeffs().iter().map(|x| x.to_string()).collect()).collect())
            .collect()
    }

    /// Representative of the line `ℚ(ζ)·self`, scaled so the first column entry is 1.
    fn normalized(&self) -> MonomialMatrix {
        match self.diag.first().and_then(|c| c.inv().ok()) {
            Some(c) => self.scale(&c),
            None => self.clone(),
        }
    }

    fn key(&self) -> (Vec<usize>, Vec<Vec<BigRational>>) {
        (self.perm.clone(), self.diag.iter().map(|c| c.coeffs().to_vec()).collect())
    }
}

/// Explicit representation of a twisted polynomial algebra at `q = v`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub ell: u32,
    pub form: SkewForm,
    pub matrices: Vec<MonomialMatrix>,
    /// Scalars by which the radical coordinates of the skew normal form act.
    pub character: Vec<CyclotomicScalar>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RepReport {
    pub dim: usize,
    pub failed_relations: Vec<(usize, usize)>,
    pub span_dim: usize,
    pub expected_span_dim: usize,
    pub pass: bool,
}

/// Tensor product of clock/shift pairs in the skew normal basis of `H`.
pub fn clock_shift_rep(
    form: &SkewForm,
    ell: u32,
    character: Option<&[CyclotomicScalar]>,
) -> Result<MatrixRep, TwistedError> {
    check_ell(ell as i128)?;
    let n = form.dim();
    let sn = skew_normal(form.matrix());
    let radical = sn.zero_dims();
    let character: Vec<CyclotomicScalar> = match character {
        Some(c) if c.len() != radical => return Err(TwistedError::CharacterLength { got: c.len(), want: radical }),
        Some(c) => c.to_vec(),
        None => vec![CyclotomicScalar::one(ell); radical],
    };
    if let Some(k) = character.iter().position(|c| c.is_zero()) {
        return Err(TwistedError::ZeroCharacter(k));
    }
    let sizes: Vec<usize> = sn.blocks.iter().map(|d| (ell as i128 / gcd(*d, ell as i128)) as usize).collect();
    let dim: usize = sizes.iter().product();
    // Identity factors on the left and right of block `t`.
    let embed = |t: usize, m: MonomialMatrix| {
        let left: usize = sizes[..t].iter().product();
        let right: usize = sizes[t + 1..].iter().product();
        MonomialMatrix::identity(ell, left).kron(&m).kron(&MonomialMatrix::identity(ell, right))
    };
    let mut normal: Vec<MonomialMatrix> = Vec::with_capacity(n);
    for (t, d) in sn.blocks.iter().enumerate() {
        normal.push(embed(t, MonomialMatrix::clock(ell, sizes[t], *d as i64)));
        normal.push(embed(t, MonomialMatrix::shift(ell, sizes[t])));
    }
    normal.extend(character.iter().map(|c| MonomialMatrix::scalar(c.clone(), dim)));
    let matrices = (0..n)
        .map(|i| {
            (0..n).fold(MonomialMatrix::identity(ell, dim), |acc, k| {
                let e = sn.inverse[(k, i)] as i64;
                acc.mul(&normal[k].pow(e).expect("normal-form generators are invertible"))
            })
        })
        .collect();
    Ok(MatrixRep { ell, form: form.clone(), matrices, character })
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.matrices.first().map(|m| m.dim()).unwrap_or(1)
    }

    /// Pairs `(i, j)` with `x_i x_j ≠ v^{h_ij} x_j x_i`.
    pub fn failed_relations(&self) -> Vec<(usize, usize)> {
        let n = self.matrices.len();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.matrices[i].mul(&self.matrices[j]);
                let c = CyclotomicScalar::root_pow(self.ell, 2 * self.form.h(i, j) as i64);
                let rhs = self.matrices[j].mul(&self.matrices[i]).scale(&c);
                if lhs != rhs {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Dimension of the matrix algebra generated by the `x_i`.
    pub fn span_dim(&self) -> usize {
        let dim = self.dim();
        if Reduction::new(self.ell).span_dim(&self.matrices, dim) == Some(dim * dim) {
            return dim * dim;
        }
        self.span_dim_exact()
    }

    /// Same as [`span_dim`](Self::span_dim), computed entirely over the cyclotomic field.
    pub fn span_dim_exact(&self) -> usize {
        let dim = self.dim();
        let ell = self.ell;
        let mut seen = BTreeSet::new();
        let mut by_perm: BTreeMap<Vec<usize>, Vec<Vec<CyclotomicScalar>>> = BTreeMap::new();
        let mut queue = VecDeque::from([MonomialMatrix::identity(ell, dim)]);
        seen.insert(queue[0].key());
        while let Some(g) = queue.pop_front() {
            for x in &self.matrices {
                let h = g.mul(x).normalized();
                if seen.insert(h.key()) {
                    queue.push_back(h);
                }
            }
            by_perm.entry(g.perm.clone()).or_default().push(g.diag);
            if seen.len() > 4 * dim * dim + 16 {
                break;
            }
        }
        by_perm.into_values().map(rank).sum()
    }

    pub fn verify(&self) -> RepReport {
        let dim = self.dim();
        let failed_relations = self.failed_relations();
        let span_dim = self.span_dim();
        let pass = failed_relations.is_empty() && span_dim == dim * dim;
        RepReport { dim, failed_relations, span_dim, expected_span_dim: dim * dim, pass }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ell": self.ell,
            "dim": self.dim(),
            "matrices": self.matrices.iter().map(|m| m.to_coefficient_rows()).collect::<Vec<_>>(),
            "character": self.character.iter().map(|c| c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn rank(mut rows: Vec<Vec<CyclotomicScalar>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let pivot: Vec<CyclotomicScalar> = rows[r].iter().map(|x| x.mul(&inv)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x = x.sub(&p.mul(&f));
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}
