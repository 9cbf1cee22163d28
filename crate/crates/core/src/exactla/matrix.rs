use std::fmt;

use super::field::Fp;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for PrimeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PrimeMatrix(p={}, {}x{})", self.field.p(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: PrimeMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.reduced.field;
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::with_capacity(cols - self.pivots.len());
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; cols];
            v[free] = 1;
            for (t, &c) in self.pivots.iter().enumerate() {
                v[c] = f.neg(self.reduced.get(t, free));
            }
            out.push(v);
        }
        out
    }
}

#[inline]
fn row_pair(data: &mut [u32], cols: usize, src: usize, dst: usize) -> (&[u32], &mut [u32]) {
    debug_assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = data.split_at_mut(dst * cols);
        (&lo[src * cols..src * cols + cols], &mut hi[..cols])
    } else {
        let (lo, hi) = data.split_at_mut(src * cols);
        (&hi[..cols], &mut lo[dst * cols..dst * cols + cols])
    }
}

/// In-place reduced row echelon form of a row-major buffer. Returns pivot columns.
///
/// Row updates only touch the nonzero entries of the pivot row when it is
/// sparse, which keeps elimination on permutation-like operators near O(n^2).
pub(crate) fn rref_in_place(field: Fp, data: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
    let p = field.p();
    let mut pivots = Vec::new();
    let mut nz: Vec<usize> = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for k in c..cols {
                data.swap(found * cols + k, r * cols + k);
            }
        }
        let lead = data[r * cols + c];
        if lead != 1 {
            let inv = field.inv(lead);
            for x in &mut data[r * cols + c..r * cols + cols] {
                *x = (*x * inv) % p;
            }
        }
        nz.clear();
        nz.extend((c..cols).filter(|&k| data[r * cols + k] != 0));
        let sparse = nz.len() * 4 < cols - c;
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            let (src, dst) = row_pair(data, cols, r, i);
            if sparse {
                for &k in &nz {
                    dst[k] = (dst[k] + f * src[k]) % p;
                }
            } else {
                for k in c..cols {
                    dst[k] = (dst[k] + f * src[k]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl PrimeMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        PrimeMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from integer rows, reducing every entry mod p.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(PrimeMatrix { field, rows: rows.len(), cols, data })
    }

    /// Builds from a row-major buffer of residues already in `[0, p)`.
    pub fn from_flat(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "buffer of length {} for {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.p()) {
            return Err(Error::InvalidInput(format!("entry {} not reduced mod {}", bad, field.p())));
        }
        Ok(PrimeMatrix { field, rows, cols, data })
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        PrimeMatrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(field: Fp, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        debug_assert!(value < self.field.p());
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn same_field(&self, other: &PrimeMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.modulus(), other.modulus()));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &PrimeMatrix) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.modulus() as u64;
        let n = other.cols;
        let mut out = Self::zeros(self.field, self.rows, n);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u64;
                }
            }
            for (o, &x) in out.data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        let p = self.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(&a, _)| a != 0)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    fn zip_with(&self, other: &PrimeMatrix, op: impl Fn(u32, u32) -> u32) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(PrimeMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &PrimeMatrix) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &PrimeMatrix) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let c = c % f.p();
        PrimeMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product in the lexicographic basis `e_i ⊗ f_j -> i * dim(f) + j`.
    pub fn kron(&self, other: &PrimeMatrix) -> Result<Self> {
        self.same_field(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(self.field, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    let base = (i1 * other.rows + i2) * cols + j1 * other.cols;
                    for j2 in 0..other.cols {
                        out.data[base + j2] = self.field.mul(a, other.get(i2, j2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &PrimeMatrix) -> Result<Self> {
        self.same_field(other)?;
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Sub-block of rows `r0..r0+h`, columns `c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut out = Self::zeros(self.field, h, w);
        for i in 0..h {
            out.data[i * w..(i + 1) * w].copy_from_slice(&self.row(r0 + i)[c0..c0 + w]);
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &PrimeMatrix) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat with different row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(PrimeMatrix { field: self.field, rows: self.rows, cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = rref_in_place(self.field, &mut reduced.data, self.rows, self.cols);
        Rref { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hcat(&Self::identity(self.field, n)).ok()?;
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    /// Right kernel `{x : self * x = 0}` as a subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.cols, self.rref().kernel_vectors())
    }

    /// Column space as a subspace of F_p^rows.
    pub fn image(&self) -> Subspace {
        Subspace::from_flat(self.field, self.rows, self.transpose().data, self.cols)
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_flat(self.field, self.cols, self.data.clone(), self.rows)
    }

    /// Canonical particular solution of `self * X = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &PrimeMatrix) -> Result<Option<Self>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("right-hand side row count".into()));
        }
        let aug = self.hcat(rhs)?;
        let r = aug.rref();
        if r.pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, self.cols, rhs.cols);
        for (t, &c) in r.pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(c, k, r.reduced.get(t, self.cols + k));
            }
        }
        Ok(Some(x))
    }
}

/// Applies `m^{⊗power}` to a vector of length `cols^power`, one tensor
/// factor at a time. Index digits are base `cols` with the first factor
/// most significant, matching [`PrimeMatrix::kron`].
pub fn tensor_power_apply(m: &PrimeMatrix, power: usize, v: &[u32]) -> Vec<u32> {
    let (rows, cols) = (m.rows(), m.cols());
    assert_eq!(v.len(), cols.pow(power as u32), "vector length is not cols^power");
    let p = m.modulus() as u64;
    let mut cur: Vec<u32> = v.to_vec();
    let mut left = 1usize;
    for t in 0..power {
        let right = cols.pow((power - t - 1) as u32);
        let mut next = vec![0u64; left * rows * right];
        for a in 0..left {
            for k in 0..cols {
                let src = &cur[(a * cols + k) * right..(a * cols + k + 1) * right];
                if src.iter().all(|&x| x == 0) {
                    continue;
                }
                for i in 0..rows {
                    let mik = m.get(i, k) as u64;
                    if mik == 0 {
                        continue;
                    }
                    let dst = &mut next[(a * rows + i) * right..(a * rows + i + 1) * right];
                    for (d, &x) in dst.iter_mut().zip(src) {
                        *d += mik * x as u64;
                    }
                }
            }
        }
        cur = next.into_iter().map(|x| (x % p) as u32).collect();
        left *= rows;
    }
    cur
}
