//! Column-sparse matrices over F_p and the `1 - P` form for permutation
//! matrices `P`, with a leading-index sparse elimination for ranks.

use super::field::Fp;
use super::matrix::PrimeMatrix;
use crate::error::{Error, Result};

pub type SparseVec = Vec<(usize, u32)>;

/// Compressed-column matrix; each column is sorted by row index with no zeros stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

/// `x + f * y` for sorted sparse vectors, dropping cancelled entries.
fn axpy(field: Fp, x: &[(usize, u32)], f: u32, y: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = field.mul(f, y[j].1);
            if v != 0 {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(x[i].1, field.mul(f, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the span of sparse vectors in F_p^rows.
///
/// Each incoming vector is reduced against stored pivots keyed by their
/// leading (smallest) row index; fill-in stays inside the support closure
/// of the vectors involved, which for `1 - P` is a single orbit of `P`.
pub fn sparse_rank(field: Fp, rows: usize, vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut pivots: Vec<Option<SparseVec>> = vec![None; rows];
    let mut rank = 0;
    for mut v in vectors {
        while let Some(&(lead, val)) = v.first() {
            match &pivots[lead] {
                Some(piv) => v = axpy(field, &v, field.neg(val), piv),
                None => {
                    let inv = field.inv(val);
                    for e in v.iter_mut() {
                        e.1 = field.mul(e.1, inv);
                    }
                    pivots[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

impl SparseMatrix {
    pub fn from_columns(field: Fp, rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseMatrix { field, rows, cols: columns.len(), columns }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        Self::from_columns(field, n, (0..n).map(|j| vec![(j, 1)]).collect())
    }

    pub fn from_dense(m: &PrimeMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| (0..m.rows()).filter_map(|i| Some((i, m.get(i, j))).filter(|e| e.1 != 0)).collect())
            .collect();
        Self::from_columns(m.field(), m.rows(), columns)
    }

    pub fn to_dense(&self) -> PrimeMatrix {
        let mut m = PrimeMatrix::zeros(self.field, self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("sparse product".into()));
        }
        let f = self.field;
        let mut acc = vec![0u32; self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = f.add(acc[i], f.mul(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: SparseVec = touched.iter().filter(|&&i| acc[i] != 0).map(|&i| (i, acc[i])).collect();
            for &i in &touched {
                acc[i] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        Ok(SparseMatrix { field: f, rows: self.rows, cols: other.cols, columns })
    }

    pub fn pow(&self, k: usize) -> Result<SparseMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        sparse_rank(self.field, self.rows, self.columns.iter().cloned())
    }
}

/// The operator `1 - P` where `P e_j = e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMinusPerm {
    field: Fp,
    perm: Vec<usize>,
}

impl IdMinusPerm {
    pub fn new(field: Fp, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput("index array is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(IdMinusPerm { field, perm })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `v - P v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (j, &i) in self.perm.iter().enumerate() {
            out[i] = self.field.sub(out[i], v[j]);
        }
        out
    }

    /// `(1 - P)^k v`.
    pub fn apply_pow(&self, k: usize, v: &[u32]) -> Vec<u32> {
        (0..k).fold(v.to_vec(), |acc, _| self.apply(&acc))
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let f = self.field;
        let columns = self
            .perm
            .iter()
            .enumerate()
            .map(|(j, &i)| match i.cmp(&j) {
                std::cmp::Ordering::Equal => Vec::new(),
                std::cmp::Ordering::Less => vec![(i, f.neg(1)), (j, 1)],
                std::cmp::Ordering::Greater => vec![(j, 1), (i, f.neg(1))],
            })
            .collect();
        SparseMatrix::from_columns(f, self.dim(), columns)
    }

    pub fn to_dense(&self) -> PrimeMatrix {
        let n = self.dim();
        PrimeMatrix::identity(self.field, n)
            .sub(&PrimeMatrix::permutation(self.field, &self.perm))
            .expect("same shape")
    }

    pub fn power(&self, k: usize) -> SparseMatrix {
        self.to_sparse().pow(k).expect("square")
    }

    /// Rank of `(1 - P)^k` by sparse elimination.
    pub fn rank_of_power(&self, k: usize) -> usize {
        self.power(k).rank()
    }

    pub fn rank(&self) -> usize {
        self.to_sparse().rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_form_expands_to_dense() {
        let f = Fp::new(3).unwrap();
        let op = IdMinusPerm::new(f, vec![1, 2, 0, 3]).unwrap();
        let dense = op.to_dense();
        assert_eq!(op.to_sparse().to_dense(), dense);
        assert_eq!(op.rank(), dense.rank());
        assert_eq!(op.rank(), 2);
        let v = vec![1, 2, 0, 1];
        assert_eq!(op.apply(&v), dense.mul_vec(&v));
    }

    #[test]
    fn powers_match_dense_powers() {
        let f = Fp::new(5).unwrap();
        let op = IdMinusPerm::new(f, vec![1, 2, 3, 4, 0, 5, 7, 6]).unwrap();
        for k in 0..6 {
            assert_eq!(op.power(k).to_dense(), op.to_dense().pow(k).unwrap());
            assert_eq!(op.rank_of_power(k), op.to_dense().pow(k).unwrap().rank());
        }
    }

    #[test]
    fn rejects_non_permutations() {
        let f = Fp::new(2).unwrap();
        assert!(IdMinusPerm::new(f, vec![0, 0]).is_err());
    }
}
