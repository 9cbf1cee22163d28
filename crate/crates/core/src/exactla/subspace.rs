use super::field::Fp;
use super::matrix::{rref_in_place, PrimeMatrix};
use crate::error::{Error, Result};

/// A subspace of F_p^n stored by its reduced row echelon basis.
///
/// The echelon basis is unique, so two `Subspace` values are equal exactly
/// when they describe the same subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Self::from_flat(field, ambient, PrimeMatrix::identity(field, ambient).data().to_vec(), ambient)
    }

    /// Span of `count` row vectors packed into `data`.
    pub fn from_flat(field: Fp, ambient: usize, mut data: Vec<u32>, count: usize) -> Self {
        debug_assert_eq!(data.len(), ambient * count);
        let pivots = rref_in_place(field, &mut data, count, ambient);
        data.truncate(pivots.len() * ambient);
        Subspace { field, ambient, basis: data, pivots }
    }

    pub fn from_vectors(field: Fp, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let count = vectors.len();
        let data: Vec<u32> = vectors.into_iter().flatten().collect();
        Self::from_flat(field, ambient, data, count)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, i: usize) -> &[u32] {
        &self.basis[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.basis_vector(i).to_vec()).collect()
    }

    /// Basis as the rows of a `dim x ambient` matrix.
    pub fn basis_matrix(&self) -> PrimeMatrix {
        PrimeMatrix::from_flat(self.field, self.dim(), self.ambient, self.basis.clone())
            .expect("echelon basis is reduced")
    }

    /// Subtracts the component along this subspace in place; returns the
    /// coefficients that were removed.
    pub fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        let p = self.field.p();
        let mut coeffs = Vec::with_capacity(self.dim());
        for (t, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            coeffs.push(a);
            if a == 0 {
                continue;
            }
            let f = p - a;
            for (x, &b) in v.iter_mut().zip(self.basis_vector(t)) {
                if b != 0 {
                    *x = (*x + f * b) % p;
                }
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        let coeffs = self.reduce(&mut w);
        w.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis_vector(i)))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut data = self.basis.clone();
        data.extend_from_slice(&other.basis);
        Ok(Self::from_flat(self.field, self.ambient, data, self.dim() + other.dim()))
    }

    /// Intersection, computed by reducing the smaller basis modulo the larger
    /// subspace and finding the combinations whose residues vanish.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let k = small.dim();
        let n = self.ambient;
        if k == 0 || big.dim() == 0 {
            return Ok(Self::zero(self.field, n));
        }
        if big.dim() == n {
            return Ok(small.clone());
        }
        let width = n + k;
        let mut data = vec![0u32; k * width];
        for j in 0..k {
            let mut r = small.basis_vector(j).to_vec();
            big.reduce(&mut r);
            data[j * width..j * width + n].copy_from_slice(&r);
            data[j * width + n + j] = 1;
        }
        let pivots = rref_in_place(self.field, &mut data, k, width);
        let p = self.field.p();
        let mut vectors = Vec::new();
        for (t, &c) in pivots.iter().enumerate() {
            if c < n {
                continue;
            }
            let coeffs = &data[t * width + n..(t + 1) * width];
            let mut v = vec![0u32; n];
            for (j, &a) in coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (x, &b) in v.iter_mut().zip(small.basis_vector(j)) {
                    *x = (*x + a * b) % p;
                }
            }
            vectors.push(v);
        }
        Ok(Self::from_vectors(self.field, n, vectors))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &PrimeMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map does not act on the ambient space".into()));
        }
        let vectors = (0..self.dim()).map(|i| m.mul_vec(self.basis_vector(i))).collect();
        Ok(Self::from_vectors(self.field, m.rows(), vectors))
    }
}

/// A quotient `num / den` with `den ⊆ num`, presented through the canonical
/// complement: the echelon basis of `num` reduced modulo `den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubQuotient {
    num: Subspace,
    den: Subspace,
    complement: Subspace,
}

impl SubQuotient {
    pub fn new(num: Subspace, den: Subspace) -> Result<Self> {
        num.check_compatible(&den)?;
        if !num.contains_subspace(&den) {
            return Err(Error::Containment("denominator is not contained in numerator".into()));
        }
        let residues = (0..num.dim())
            .map(|i| {
                let mut v = num.basis_vector(i).to_vec();
                den.reduce(&mut v);
                v
            })
            .collect();
        let complement = Subspace::from_vectors(num.field, num.ambient, residues);
        debug_assert_eq!(complement.dim() + den.dim(), num.dim());
        Ok(SubQuotient { num, den, complement })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.num.ambient
    }

    pub fn numerator(&self) -> &Subspace {
        &self.num
    }

    pub fn denominator(&self) -> &Subspace {
        &self.den
    }

    /// Canonical representatives of a basis of the quotient.
    pub fn representatives(&self) -> Vec<Vec<u32>> {
        self.complement.basis_vectors()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn class_coords(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.num.ambient {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        if !self.num.contains(v) {
            return Err(Error::NotInvariant("vector lies outside the numerator".into()));
        }
        let mut w = v.to_vec();
        self.den.reduce(&mut w);
        Ok(self.complement.pivots.iter().map(|&c| w[c]).collect())
    }
}

/// Matrix of the map `src -> dst` induced by `m` on subquotients.
///
/// Fails when `m` does not carry the numerator (or denominator) of `src`
/// into the numerator (or denominator) of `dst`.
pub fn induced_on_subquotient(m: &PrimeMatrix, src: &SubQuotient, dst: &SubQuotient) -> Result<PrimeMatrix> {
    if m.cols() != src.ambient_dim() || m.rows() != dst.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between ambient spaces of dimension {} and {}",
            m.rows(),
            m.cols(),
            src.ambient_dim(),
            dst.ambient_dim()
        )));
    }
    for i in 0..src.den.dim() {
        if !dst.den.contains(&m.mul_vec(src.den.basis_vector(i))) {
            return Err(Error::NotInvariant("denominator is not mapped into the target denominator".into()));
        }
    }
    let mut columns = Vec::with_capacity(src.dim());
    for i in 0..src.num.dim() {
        let image = m.mul_vec(src.num.basis_vector(i));
        if !dst.num.contains(&image) {
            return Err(Error::NotInvariant("numerator is not mapped into the target numerator".into()));
        }
    }
    for rep in src.representatives() {
        columns.push(dst.class_coords(&m.mul_vec(&rep))?);
    }
    Ok(PrimeMatrix::from_columns(m.field(), dst.dim(), &columns))
}
