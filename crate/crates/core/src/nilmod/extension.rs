use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{PrimeMatrix, Subspace};

use super::{JordanType, NilModule};

/// `0 -> X -> Y -> Z -> 0` in the category of `F_p[D]/D^n`-modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSeq {
    pub x: NilModule,
    pub y: NilModule,
    pub z: NilModule,
    pub inj: PrimeMatrix,
    pub surj: PrimeMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    /// `(i, [dim E_i X, dim E_i Y, dim E_i Z])` for `1 <= i <= n/2`.
    pub e_dims: Vec<(usize, [usize; 3])>,
    pub e_additive: bool,
    pub split: bool,
    pub jordan: [JordanType; 3],
}

impl SplitReport {
    /// E-additivity forces splitting.
    pub fn criterion_holds(&self) -> bool {
        !self.e_additive || self.split
    }
}

impl ShortExactSeq {
    pub fn new(x: NilModule, y: NilModule, z: NilModule, inj: PrimeMatrix, surj: PrimeMatrix) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSequence(msg));
        if x.n() != y.n() || y.n() != z.n() {
            return bad("modules have different nilpotency orders".into());
        }
        if x.field() != y.field() || y.field() != z.field() {
            return Err(Error::ModulusMismatch(x.field().p(), z.field().p()));
        }
        if (inj.rows(), inj.cols()) != (y.dim(), x.dim()) || (surj.rows(), surj.cols()) != (z.dim(), y.dim()) {
            return bad("map shapes do not match module dimensions".into());
        }
        if inj.rank() != x.dim() {
            return bad("first map is not injective".into());
        }
        if surj.rank() != z.dim() {
            return bad("second map is not surjective".into());
        }
        if x.dim() + z.dim() != y.dim() || !surj.mul(&inj)?.is_zero() {
            return bad("sequence is not exact in the middle".into());
        }
        if inj.mul(x.d())? != y.d().mul(&inj)? || surj.mul(y.d())? != z.d().mul(&surj)? {
            return bad("maps do not commute with D".into());
        }
        Ok(ShortExactSeq { x, y, z, inj, surj })
    }

    /// `Y = X ⊕ Z` with `D_Y = [[D_X, φ], [0, D_Z]]` and the canonical maps.
    pub fn from_coupling(x: &NilModule, z: &NilModule, phi: &PrimeMatrix) -> Result<Self> {
        let field = x.field();
        let (dx, dz) = (x.dim(), z.dim());
        if (phi.rows(), phi.cols()) != (dx, dz) {
            return Err(Error::DimensionMismatch(format!(
                "coupling must be {dx}x{dz}, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        let dy = PrimeMatrix::from_fn(field, dx + dz, dx + dz, |r, c| {
            let v = match (r < dx, c < dx) {
                (true, true) => x.d().get(r, c),
                (true, false) => phi.get(r, c - dx),
                (false, false) => z.d().get(r - dx, c - dx),
                (false, true) => 0,
            };
            i64::from(v)
        });
        let y = NilModule::new(dy, x.n())?;
        let inj = PrimeMatrix::from_fn(field, dx + dz, dx, |r, c| i64::from(r == c));
        let surj = PrimeMatrix::from_fn(field, dz, dx + dz, |r, c| i64::from(c == r + dx));
        Self::new(x.clone(), y, z.clone(), inj, surj)
    }

    /// Uniform sample from all couplings giving a valid extension.
    pub fn random_extension<R: Rng + ?Sized>(x: &NilModule, z: &NilModule, rng: &mut R) -> Result<Self> {
        let space = extension_space(x, z)?;
        let phi = sample_coupling(x, z, &space, rng);
        Self::from_coupling(x, z, &phi)
    }

    pub fn split_test(&self) -> SplitReport {
        let n = self.y.n();
        let e_dims: Vec<(usize, [usize; 3])> = (1..=n / 2)
            .filter(|&i| i < n)
            .map(|i| {
                let dim = |m: &NilModule| m.functor_e(i).expect("index in range").dim();
                (i, [dim(&self.x), dim(&self.y), dim(&self.z)])
            })
            .collect();
        let e_additive = e_dims.iter().all(|(_, [a, b, c])| a + c == *b);
        let jordan = [self.x.jordan_type(), self.y.jordan_type(), self.z.jordan_type()];
        let split = jordan[1] == jordan[0].union(&jordan[2]);
        SplitReport {
            e_dims,
            e_additive,
            split,
            jordan,
        }
    }
}

/// Couplings `φ: Z -> X` (row-major vectors) with `Σ_{a+b=n-1} D_X^a φ D_Z^b = 0`,
/// exactly those making the block operator nilpotent of order `n`.
pub fn extension_space(x: &NilModule, z: &NilModule) -> Result<Subspace> {
    if x.n() != z.n() {
        return Err(Error::InvalidInput(format!(
            "nilpotency orders differ: {} and {}",
            x.n(),
            z.n()
        )));
    }
    if x.field() != z.field() {
        return Err(Error::ModulusMismatch(x.field().p(), z.field().p()));
    }
    let n = x.n();
    let size = x.dim() * z.dim();
    let mut total = PrimeMatrix::zeros(x.field(), size, size);
    for a in 0..n {
        // row-major vec(A φ B) = (A ⊗ Bᵀ) vec(φ)
        let term = x.power(a).kron(&z.power(n - 1 - a).transpose())?;
        total = total.add(&term)?;
    }
    Ok(total.kernel())
}

fn sample_coupling<R: Rng + ?Sized>(x: &NilModule, z: &NilModule, space: &Subspace, rng: &mut R) -> PrimeMatrix {
    let field = x.field();
    let mut v = vec![0u32; space.ambient_dim()];
    for b in 0..space.dim() {
        let c = rng.gen_range(0..field.p());
        if c == 0 {
            continue;
        }
        for (slot, &e) in v.iter_mut().zip(space.basis_vector(b)) {
            *slot = field.add(*slot, field.mul(c, e));
        }
    }
    PrimeMatrix::from_flat(field, x.dim(), z.dim(), v).expect("sized buffer")
}
