use serde::{Deserialize, Serialize};

use super::RootError;

/// Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩` with symmetrizers `ε_i`, so that `(α_i, α_j) = ε_i a_ij`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "CartanSpec", into = "CartanSpec")]
pub struct CartanDatum {
    matrix: Vec<Vec<i64>>,
    eps: Vec<i64>,
    label: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanSpec {
    Named(String),
    Explicit { matrix: Vec<Vec<i64>> },
}

impl TryFrom<CartanSpec> for CartanDatum {
    type Error = RootError;
    fn try_from(s: CartanSpec) -> Result<Self, RootError> {
        match s {
            CartanSpec::Named(n) => CartanDatum::from_type(&n),
            CartanSpec::Explicit { matrix } => CartanDatum::from_matrix(matrix),
        }
    }
}

impl From<CartanDatum> for CartanSpec {
    fn from(c: CartanDatum) -> Self {
        match c.label {
            Some(l) => CartanSpec::Named(l),
            None => CartanSpec::Explicit { matrix: c.matrix },
        }
    }
}

fn simple_component(kind: char, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), RootError> {
    let bad = || RootError::UnknownType(format!("{kind}{n}"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, len: usize| {
        for i in 0..len.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    let eps = match (kind, n) {
        ('A', n) if n >= 1 => {
            chain(&mut a, n);
            vec![1; n]
        }
        ('B', n) if n >= 2 => {
            chain(&mut a, n);
            a[n - 1][n - 2] = -2;
            let mut e = vec![2; n];
            e[n - 1] = 1;
            e
        }
        ('C', n) if n >= 2 => {
            chain(&mut a, n);
            a[n - 2][n - 1] = -2;
            let mut e = vec![1; n];
            e[n - 1] = 2;
            e
        }
        ('D', n) if n >= 4 => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            vec![1; n]
        }
        ('E', n) if (6..=8).contains(&n) => {
            let edges = [(0, 2), (2, 3), (3, 4), (1, 3), (4, 5), (5, 6), (6, 7)];
            for &(i, j) in edges.iter().filter(|(i, j)| *i < n && *j < n) {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            vec![1; n]
        }
        ('F', 4) => {
            chain(&mut a, 4);
            a[2][1] = -2;
            vec![2, 2, 1, 1]
        }
        ('G', 2) => {
            a[0][1] = -3;
            a[1][0] = -1;
            vec![1, 3]
        }
        _ => return Err(bad()),
    };
    Ok((a, eps))
}

impl CartanDatum {
    /// `"A3"`, `"B2"`, or products such as `"A1xA1"`.
    pub fn from_type(name: &str) -> Result<Self, RootError> {
        let mut blocks = Vec::new();
        for part in name.split(['x', '×', '*']).map(str::trim) {
            let mut chars = part.chars();
            let kind = chars.next().ok_or_else(|| RootError::UnknownType(name.to_string()))?;
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| RootError::UnknownType(name.to_string()))?;
            blocks.push(simple_component(kind.to_ascii_uppercase(), n)?);
        }
        let size: usize = blocks.iter().map(|b| b.1.len()).sum();
        let mut matrix = vec![vec![0; size]; size];
        let mut eps = Vec::with_capacity(size);
        let mut off = 0;
        for (a, e) in blocks {
            for (i, row) in a.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    matrix[off + i][off + j] = *x;
                }
            }
            off += e.len();
            eps.extend(e);
        }
        let mut d = Self::checked(matrix, eps)?;
        d.label = Some(name.to_string());
        Ok(d)
    }

    /// Symmetrizers are derived; the matrix must be symmetrizable and of finite type.
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<Self, RootError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(RootError::Malformed("Cartan matrix must be square".into()));
        }
        let eps = symmetrizers(&matrix)?;
        Self::checked(matrix, eps)
    }

    fn checked(matrix: Vec<Vec<i64>>, eps: Vec<i64>) -> Result<Self, RootError> {
        let n = matrix.len();
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(RootError::Malformed(format!("a_{{{i}{i}}} must be 2")));
            }
            for j in 0..n {
                if i != j && (matrix[i][j] > 0 || (matrix[i][j] == 0) != (matrix[j][i] == 0)) {
                    return Err(RootError::Malformed(format!("bad off-diagonal entry at ({i}, {j})")));
                }
                if eps[i] * matrix[i][j] != eps[j] * matrix[j][i] {
                    return Err(RootError::Malformed("matrix is not symmetrizable".into()));
                }
            }
        }
        let sym: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| (eps[i] * matrix[i][j]) as i128).collect())
            .collect();
        for k in 1..=n {
            if leading_minor(&sym, k) <= 0 {
                return Err(RootError::NotFiniteType);
            }
        }
        Ok(CartanDatum { matrix, eps, label: None })
    }

    pub fn rank(&self) -> usize {
        self.eps.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.eps
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `(α_i, α_j)`.
    pub fn sym(&self, i: usize, j: usize) -> i64 {
        self.eps[i] * self.matrix[i][j]
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(RootError::BadIndex(i))
        }
    }
}

fn symmetrizers(a: &[Vec<i64>]) -> Result<Vec<i64>, RootError> {
    use num_integer::Integer;
    use num_rational::Ratio;
    let n = a.len();
    let mut eps: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if eps[start].is_some() {
            continue;
        }
        eps[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(RootError::Malformed("matrix is not symmetrizable".into()));
                }
                let ej = eps[i].unwrap() * Ratio::new(a[i][j], a[j][i]);
                match eps[j] {
                    None => {
                        eps[j] = Some(ej);
                        stack.push(j);
                    }
                    Some(e) if e != ej => {
                        return Err(RootError::Malformed("matrix is not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let eps: Vec<Ratio<i64>> = eps.into_iter().map(Option::unwrap).collect();
    let l = eps.iter().fold(1i64, |acc, e| acc.lcm(e.denom()));
    let ints: Vec<i64> = eps.iter().map(|e| (e * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    Ok(ints.iter().map(|x| x / g).collect())
}

/// Fraction-free determinant of the leading `k×k` block.
fn leading_minor(m: &[Vec<i128>], k: usize) -> i128 {
    let mut a: Vec<Vec<i128>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            match (p + 1..k).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
        }
        prev = a[p][p];
    }
    sign * a[k - 1][k - 1]
}
