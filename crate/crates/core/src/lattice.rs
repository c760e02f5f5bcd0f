//! Integer matrices: Smith normal form, kernels, and the symplectic normal form of skew forms.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

#[inline]
fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer matrix overflow")
}

#[inline]
fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer matrix overflow")
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<i128>>", into = "Vec<Vec<i128>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl From<Vec<Vec<i128>>> for IntMatrix {
    fn from(rows: Vec<Vec<i128>>) -> Self {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i128>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (r, c): (usize, usize)) -> &i128 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i128 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_columns<C: AsRef<[i128]>>(rows: usize, cols: &[C]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.as_ref().iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i128] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i128> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i128>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    m[(i, j)] = cadd(m[(i, j)], cmul(a, o[(k, j)]));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (a, b)| cadd(acc, cmul(*a, *b))))
            .collect()
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)];
            }
            for c in 0..o.cols {
                m[(r, self.cols + c)] = o[(r, c)];
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += m · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, m: i128) {
        if m == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = cadd(self[(dst, c)], cmul(m, self[(src, c)]));
            self[(dst, c)] = v;
        }
    }

    /// `col[dst] += m · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, m: i128) {
        if m == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = cadd(self[(r, dst)], cmul(m, self[(r, src)]));
            self[(r, dst)] = v;
        }
    }

    fn neg_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    fn neg_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self[(r, c)] = -self[(r, c)];
        }
    }
}

/// `left · a · right = diag(invariants)` with unimodular `left`, `right`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Diagonal entries, length `min(rows, cols)`; nonzero ones divide their successors.
    pub invariants: Vec<i128>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.iter().filter(|d| **d != 0).count()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let k = m.min(n);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d[(i, j)];
                    if x != 0 && best.map(|(bi, bj)| x.abs() < d[(bi, bj)].abs()).unwrap_or(true) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);
            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(p);
                d.add_row(i, t, -q);
                left.add_row(i, t, -q);
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(p);
                d.add_col(j, t, -q);
                right.add_col(j, t, -q);
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
            match bad {
                Some(i) => {
                    d.add_row(t, i, 1);
                    left.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.neg_row(t);
            left.neg_row(t);
        }
    }
    let invariants = (0..k).map(|t| d[(t, t)]).collect();
    Smith { left, right, invariants }
}

/// Lattice `{x ∈ ℤⁿ : a·x ≡ 0 mod ℓ}`, as the columns of a square matrix.
pub fn kernel_mod(a: &IntMatrix, ell: i128) -> IntMatrix {
    let s = smith(a);
    let n = a.cols;
    let mut basis = s.right.clone();
    for k in 0..n {
        let dk = s.invariants.get(k).copied().unwrap_or(0);
        let step = ell / gcd(dk, ell);
        for r in 0..n {
            basis[(r, k)] = cmul(basis[(r, k)], step);
        }
    }
    basis
}

/// `|image of a: ℤⁿ → (ℤ/ℓ)^m|`.
pub fn image_size_mod(a: &IntMatrix, ell: i128) -> u128 {
    smith(a)
        .invariants
        .iter()
        .map(|d| (ell / gcd(*d, ell)) as u128)
        .fold(1u128, |acc, x| acc.checked_mul(x).expect("image size overflow"))
}

/// Saturated integer kernel, as columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let r = s.rank();
    let cols: Vec<Vec<i128>> = (r..a.cols).map(|k| s.right.column(k)).collect();
    IntMatrix::from_columns(a.cols, &cols)
}

pub fn rank(a: &IntMatrix) -> usize {
    smith(a).rank()
}

/// Index of the column span of `g` in ℤ^rows, or `None` if it has smaller rank.
pub fn lattice_index(g: &IntMatrix) -> Option<u128> {
    let s = smith(g);
    if s.rank() < g.rows {
        return None;
    }
    Some(
        s.invariants
            .iter()
            .filter(|d| **d != 0)
            .fold(1u128, |acc, d| acc.checked_mul(*d as u128).expect("index overflow")),
    )
}

/// Row Hermite normal form: echelon rows with positive pivots and reduced entries above them.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let Some(p) = (r..m.rows).filter(|&i| m[(i, c)] != 0).min_by_key(|&i| m[(i, c)].abs()) else {
                break;
            };
            m.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                let f = m[(i, c)].div_euclid(m[(r, c)]);
                m.add_row(i, r, -f);
                done &= m[(i, c)] == 0;
            }
            if done {
                break;
            }
        }
        if m[(r, c)] == 0 {
            continue;
        }
        if m[(r, c)] < 0 {
            m.neg_row(r);
        }
        for i in 0..r {
            let f = m[(i, c)].div_euclid(m[(r, c)]);
            m.add_row(i, r, -f);
        }
        r += 1;
    }
    let rows: Vec<Vec<i128>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    IntMatrix::from_columns(m.cols, &rows).transpose()
}

/// An integer solution of `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i128]) -> Option<Vec<i128>> {
    let s = smith(a);
    let ub = s.left.mul_vec(b);
    let mut y = vec![0i128; a.cols];
    for (r, val) in ub.iter().enumerate() {
        let dk = s.invariants.get(r).copied().unwrap_or(0);
        if dk == 0 {
            if *val != 0 {
                return None;
            }
        } else {
            if val % dk != 0 {
                return None;
            }
            y[r] = val / dk;
        }
    }
    Some(s.right.mul_vec(&y))
}

/// `basisᵀ · h · basis = ⊕ [[0, d], [-d, 0]] ⊕ 0` with unimodular `basis`.
#[derive(Clone, Debug)]
pub struct SkewNormal {
    pub basis: IntMatrix,
    pub inverse: IntMatrix,
    pub blocks: Vec<i128>,
}

impl SkewNormal {
    pub fn zero_dims(&self) -> usize {
        self.basis.cols - 2 * self.blocks.len()
    }
}

pub fn skew_normal(h: &IntMatrix) -> SkewNormal {
    assert!(h.is_skew(), "form must be skew-symmetric");
    let n = h.rows;
    let mut g = h.clone();
    let mut p = IntMatrix::identity(n);
    let mut pinv = IntMatrix::identity(n);
    // e_k ↦ e_k + m e_j
    let shear = |g: &mut IntMatrix, p: &mut IntMatrix, pinv: &mut IntMatrix, k: usize, j: usize, m: i128| {
        g.add_col(k, j, m);
        g.add_row(k, j, m);
        p.add_col(k, j, m);
        pinv.add_row(j, k, -m);
    };
    let swap = |g: &mut IntMatrix, p: &mut IntMatrix, pinv: &mut IntMatrix, a: usize, b: usize| {
        g.swap_cols(a, b);
        g.swap_rows(a, b);
        p.swap_cols(a, b);
        pinv.swap_rows(a, b);
    };
    let mut blocks = Vec::new();
    let mut t = 0;
    while t + 1 < n {
        let mut found = false;
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let x = g[(i, j)];
                    if x != 0 && best.map(|(bi, bj)| x.abs() < g[(bi, bj)].abs()).unwrap_or(true) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else { break };
            found = true;
            swap(&mut g, &mut p, &mut pinv, t, i);
            let j = if j == t { i } else { j };
            swap(&mut g, &mut p, &mut pinv, t + 1, j);
            if g[(t, t + 1)] < 0 {
                g.neg_col(t + 1);
                g.neg_row(t + 1);
                p.neg_col(t + 1);
                pinv.neg_row(t + 1);
            }
            let d = g[(t, t + 1)];
            let mut clean = true;
            for k in t + 2..n {
                let m1 = g[(t, k)].div_euclid(d);
                shear(&mut g, &mut p, &mut pinv, k, t + 1, -m1);
                let m2 = g[(t + 1, k)].div_euclid(d);
                shear(&mut g, &mut p, &mut pinv, k, t, m2);
                clean &= g[(t, k)] == 0 && g[(t + 1, k)] == 0;
            }
            if clean {
                blocks.push(d);
                break;
            }
        }
        if !found {
            break;
        }
        t += 2;
    }
    SkewNormal { basis: p, inverse: pinv, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hermite_is_canonical() {
        let a = m(&[&[0, -2, 4], &[0, 1, 1], &[3, 0, 0]]);
        let h = hermite_rows(&a);
        assert_eq!(h.to_rows(), vec![vec![3, 0, 0], vec![0, 1, 1], vec![0, 0, 6]]);
        let b = m(&[&[3, 1, 1], &[0, -1, -1], &[0, 0, 6]]);
        assert_eq!(hermite_rows(&b), h);
    }

    #[test]
    fn smith_reconstructs() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.invariants, vec![2, 6, 12]);
        let d = s.left.mul(&a).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], if i == j { s.invariants[i] } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_mod_three() {
        let h = m(&[&[0, 1], &[-1, 0]]);
        let k = kernel_mod(&h, 3);
        assert_eq!(lattice_index(&k), Some(9));
        assert_eq!(image_size_mod(&h, 5), 25);
        let h3 = m(&[&[0, 3], &[-3, 0]]);
        assert_eq!(image_size_mod(&h3, 9), 9);
    }

    #[test]
    fn kernel_over_integers() {
        let h = m(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let k = integer_kernel(&h);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![0, 0, 1]);
    }

    #[test]
    fn solve_simple() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]), None);
    }

    #[test]
    fn skew_form_normalizes() {
        let h = m(&[&[0, 2, -1, 3], &[-2, 0, 4, 1], &[1, -4, 0, 2], &[-3, -1, -2, 0]]);
        let s = skew_normal(&h);
        let g = s.basis.transpose().mul(&h).mul(&s.basis);
        assert_eq!(s.basis.mul(&s.inverse), IntMatrix::identity(4));
        let mut want = IntMatrix::zeros(4, 4);
        for (k, d) in s.blocks.iter().enumerate() {
            want[(2 * k, 2 * k + 1)] = *d;
            want[(2 * k + 1, 2 * k)] = -*d;
        }
        assert_eq!(g, want);
        let det: i128 = s.blocks.iter().map(|d| d * d).product();
        assert_eq!(det, 17 * 17);
    }
}
