//! Vector spaces with a nilpotent operator `D`, `D^n = 0`, and the
//! subquotient functors built from kernels and images of powers of `D`.

mod extension;
mod jordan;
mod lattice;

use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{induced_on_subquotient, Fp, PrimeMatrix, SubQuotient, Subspace};

pub use extension::{extension_space, ShortExactSeq, SplitReport};
pub use jordan::{partitions, JordanType};
pub use lattice::{CoordinateSubquotient, JordanFrame, Lattice, SubquotientSpec};

/// A module over `F_p[D]/D^n`.
#[derive(Debug, Clone)]
pub struct NilModule {
    n: usize,
    powers: Vec<PrimeMatrix>,
    kernels: Vec<OnceLock<Subspace>>,
    images: Vec<OnceLock<Subspace>>,
}

impl PartialEq for NilModule {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d() == other.d()
    }
}

impl Eq for NilModule {}

/// Dimensions in the sequence `0 -> L_{i-s,n-s} -> E_{i,s} -> E_{i,s-1} -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceCheck {
    pub i: usize,
    pub s: usize,
    pub dim_l: usize,
    pub dim_e: usize,
    pub dim_e_prev: usize,
    /// Rank of the map `E_{i,s} -> E_{i,s-1}` induced by `D`.
    pub map_rank: usize,
}

impl SequenceCheck {
    pub fn is_exact(&self) -> bool {
        self.map_rank == self.dim_e_prev && self.dim_e == self.dim_l + self.dim_e_prev
    }
}

impl NilModule {
    pub fn new(d: PrimeMatrix, n: usize) -> Result<Self> {
        if !d.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square, got {}x{}",
                d.rows(),
                d.cols()
            )));
        }
        if n == 0 {
            return Err(Error::InvalidInput("nilpotency order must be positive".into()));
        }
        let mut powers = vec![PrimeMatrix::identity(d.field(), d.rows())];
        for _ in 0..n {
            let next = powers.last().unwrap().mul(&d)?;
            powers.push(next);
        }
        if !powers[n].is_zero() {
            return Err(Error::NotNilpotent { order: n });
        }
        Ok(NilModule {
            n,
            powers,
            kernels: (0..=n).map(|_| OnceLock::new()).collect(),
            images: (0..=n).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Direct sum of Jordan blocks with `D e_k = e_{k+1}` inside each block.
    pub fn from_jordan_type(field: Fp, jordan: &JordanType, n: usize) -> Result<Self> {
        if jordan.max_part() > n {
            return Err(Error::NotNilpotent { order: n });
        }
        let dim = jordan.dim();
        let mut d = PrimeMatrix::zeros(field, dim, dim);
        let mut offset = 0;
        for &len in jordan.parts() {
            for k in 0..len - 1 {
                d.set(offset + k + 1, offset + k, 1);
            }
            offset += len;
        }
        Self::new(d, n)
    }

    pub fn jordan_block(field: Fp, m: usize, n: usize) -> Result<Self> {
        Self::from_jordan_type(field, &JordanType::new(vec![m]), n)
    }

    pub fn zero_operator(field: Fp, dim: usize, n: usize) -> Result<Self> {
        Self::new(PrimeMatrix::zeros(field, dim, dim), n)
    }

    /// `A D A^{-1}` for an invertible `A`.
    pub fn conjugate(&self, a: &PrimeMatrix) -> Result<Self> {
        let inv = a
            .inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        Self::new(a.mul(self.d())?.mul(&inv)?, self.n)
    }

    /// Random module with Jordan parts at most `n` and dimension at most
    /// `max_dim`, presented in a random basis.
    pub fn random<R: Rng + ?Sized>(field: Fp, n: usize, max_dim: usize, rng: &mut R) -> Result<Self> {
        let dim = rng.gen_range(0..=max_dim);
        Self::random_of_dim(field, n, dim, rng)
    }

    /// Random module of the given dimension in a random basis.
    pub fn random_of_dim<R: Rng + ?Sized>(field: Fp, n: usize, dim: usize, rng: &mut R) -> Result<Self> {
        let mut parts = Vec::new();
        let mut left = dim;
        while left > 0 {
            let part = rng.gen_range(1..=left.min(n));
            parts.push(part);
            left -= part;
        }
        let base = Self::from_jordan_type(field, &JordanType::new(parts), n)?;
        base.conjugate(&random_invertible(field, dim, rng))
    }

    pub fn direct_sum(&self, other: &NilModule) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidInput(format!(
                "nilpotency orders differ: {} and {}",
                self.n, other.n
            )));
        }
        Self::new(self.d().direct_sum(other.d())?, self.n)
    }

    pub fn field(&self) -> Fp {
        self.d().field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d().rows()
    }

    pub fn d(&self) -> &PrimeMatrix {
        &self.powers[1]
    }

    /// `D^k`; zero for `k >= n`.
    pub fn power(&self, k: usize) -> &PrimeMatrix {
        &self.powers[k.min(self.n)]
    }

    /// `rank(D^j)` for `j = 0..=n`.
    pub fn rank_sequence(&self) -> Vec<usize> {
        (0..=self.n).map(|j| self.image_of_power(j).dim()).collect()
    }

    pub fn jordan_type(&self) -> JordanType {
        JordanType::from_ranks(&self.rank_sequence()).expect("rank sequence of a nilpotent operator")
    }

    pub fn kernel_of_power(&self, a: usize) -> &Subspace {
        let a = a.min(self.n);
        self.kernels[a].get_or_init(|| self.powers[a].kernel())
    }

    pub fn image_of_power(&self, b: usize) -> &Subspace {
        let b = b.min(self.n);
        self.images[b].get_or_init(|| self.powers[b].image())
    }

    pub fn subspace(&self, expr: &Lattice) -> Result<Subspace> {
        match expr {
            Lattice::Ker(a) => Ok(self.kernel_of_power(*a).clone()),
            Lattice::Im(b) => Ok(self.image_of_power(*b).clone()),
            Lattice::Meet(x, y) => match (x.as_ref(), y.as_ref()) {
                // Ker D^a ∩ Im D^b = D^b(Ker D^{a+b})
                (Lattice::Ker(a), Lattice::Im(b)) | (Lattice::Im(b), Lattice::Ker(a)) => {
                    if *b >= self.n {
                        return Ok(Subspace::zero(self.field(), self.dim()));
                    }
                    self.kernel_of_power(a + b).image_under(self.power(*b))
                }
                _ => self.subspace(x)?.intersect(&self.subspace(y)?),
            },
            Lattice::Join(x, y) => self.subspace(x)?.sum(&self.subspace(y)?),
        }
    }

    pub fn subquotient(&self, spec: &SubquotientSpec) -> Result<SubQuotient> {
        SubQuotient::new(self.subspace(&spec.num)?, self.subspace(&spec.den)?)
    }

    pub fn functor_b(&self, i: usize) -> Result<SubQuotient> {
        self.subquotient(&SubquotientSpec::b(self.n, i)?)
    }

    pub fn functor_e(&self, i: usize) -> Result<SubQuotient> {
        self.subquotient(&SubquotientSpec::e(self.n, i)?)
    }

    pub fn functor_l(&self, i: usize, j: usize) -> Result<SubQuotient> {
        self.subquotient(&SubquotientSpec::l(self.n, i, j)?)
    }

    pub fn functor_e_is(&self, i: usize, s: usize) -> Result<SubQuotient> {
        self.subquotient(&SubquotientSpec::e_is(self.n, i, s)?)
    }

    /// Computes the three terms of `0 -> L_{i-s,n-s} -> E_{i,s} -> E_{i,s-1} -> 0`
    /// and the rank of the map induced by `D`.
    pub fn lemma_sequence(&self, i: usize, s: usize) -> Result<SequenceCheck> {
        if s == 0 || s > i || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: s,
                range: format!("1 <= s <= i = {i} <= {}", self.n.saturating_sub(1)),
            });
        }
        let e = self.functor_e_is(i, s)?;
        let e_prev = self.functor_e_is(i, s - 1)?;
        let l = self.functor_l(i - s, self.n - s)?;
        let map = induced_on_subquotient(self.d(), &e, &e_prev)?;
        Ok(SequenceCheck {
            i,
            s,
            dim_l: l.dim(),
            dim_e: e.dim(),
            dim_e_prev: e_prev.dim(),
            map_rank: map.rank(),
        })
    }
}


/// `v_i` with entries `min(i, j, n - i, n - j)` for `j = 1..n-1`.
pub fn multiplicity_vector(n: usize, i: usize) -> Result<Vec<usize>> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            range: format!("1..={}", n.saturating_sub(1)),
        });
    }
    Ok((1..n).map(|j| i.min(j).min(n - i).min(n - j)).collect())
}

/// Uniformly random invertible matrix (rejection sampling).
pub fn random_invertible<R: Rng + ?Sized>(field: Fp, dim: usize, rng: &mut R) -> PrimeMatrix {
    let p = field.p();
    loop {
        let data = (0..dim * dim).map(|_| rng.gen_range(0..p)).collect();
        let m = PrimeMatrix::from_flat(field, dim, dim, data).expect("sized buffer");
        if m.rank() == dim {
            return m;
        }
    }
}
