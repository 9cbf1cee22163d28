use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{tensor_power_apply, Fp, PrimeMatrix};
use crate::nilmod::{random_invertible, NilModule, ShortExactSeq, SubquotientSpec};
use crate::repcat::GroupRep;

use super::{induced_maps, CyclicPower, FrobeniusImage, MorphismImage};

/// `0 -> X -> Y -> Z -> 0` in `Rep(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSes {
    pub x: GroupRep,
    pub y: GroupRep,
    pub z: GroupRep,
    pub inj: PrimeMatrix,
    pub surj: PrimeMatrix,
}

impl RepSes {
    pub fn new(x: GroupRep, y: GroupRep, z: GroupRep, inj: PrimeMatrix, surj: PrimeMatrix) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidSequence(msg.to_string()));
        if !x.is_intertwiner(&y, &inj)? || !y.is_intertwiner(&z, &surj)? {
            return bad("maps are not intertwiners");
        }
        if inj.rank() != x.dim() || surj.rank() != z.dim() {
            return bad("maps are not injective and surjective");
        }
        if x.dim() + z.dim() != y.dim() || !surj.mul(&inj)?.is_zero() {
            return bad("sequence is not exact in the middle");
        }
        Ok(RepSes { x, y, z, inj, surj })
    }

    /// `Z/p`-modules from an extension of `F_p[D]/D^p`-modules, with `c = 1 - D`.
    pub fn from_nil(ses: &ShortExactSeq) -> Result<Self> {
        Self::new(
            GroupRep::cyclic_from_nilpotent(ses.x.d())?,
            GroupRep::cyclic_from_nilpotent(ses.y.d())?,
            GroupRep::cyclic_from_nilpotent(ses.z.d())?,
            ses.inj.clone(),
            ses.surj.clone(),
        )
    }

    /// Random extension in `Rep(Z/p)` with `dim Y <= max_dim` and `X, Z`
    /// nonzero, with the middle term in a random basis.
    pub fn random_cyclic<R: Rng + ?Sized>(field: Fp, max_dim: usize, rng: &mut R) -> Result<Self> {
        let n = field.p() as usize;
        let dim_y = rng.gen_range(2..=max_dim.max(2));
        let dim_x = rng.gen_range(1..dim_y);
        let x = NilModule::random_of_dim(field, n, dim_x, rng)?;
        let z = NilModule::random_of_dim(field, n, dim_y - dim_x, rng)?;
        let ses = Self::from_nil(&ShortExactSeq::random_extension(&x, &z, rng)?)?;
        ses.conjugate_middle(&random_invertible(field, dim_y, rng))
    }

    /// Replaces `Y` by `A Y A^{-1}`.
    pub fn conjugate_middle(&self, a: &PrimeMatrix) -> Result<Self> {
        let inv = a
            .inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        Self::new(
            self.x.clone(),
            self.y.conjugate(a)?,
            self.z.clone(),
            a.mul(&self.inj)?,
            self.surj.mul(&inv)?,
        )
    }

    pub fn split(x: &GroupRep, z: &GroupRep) -> Result<Self> {
        let y = x.direct_sum(z)?;
        let (dx, dz) = (x.dim(), z.dim());
        let field = x.field();
        let inj = PrimeMatrix::from_fn(field, dx + dz, dx, |r, c| i64::from(r == c));
        let surj = PrimeMatrix::from_fn(field, dz, dx + dz, |r, c| i64::from(c == r + dx));
        Self::new(x.clone(), y, z.clone(), inj, surj)
    }
}

/// One turn of `G_i X -> G_i Y -> G_i Z -> G_{p-i} X -> G_{p-i} Y -> G_{p-i} Z -> G_i X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub i: usize,
    pub dims: [usize; 6],
    /// Rank of the map leaving each position.
    pub ranks: [usize; 6],
    pub exact: [bool; 6],
    pub alternating_sum: i64,
}

impl CycleReport {
    pub fn ok(&self) -> bool {
        self.exact.iter().all(|&e| e) && self.alternating_sum == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixPeriodicReport {
    pub p: u32,
    pub cycles: Vec<CycleReport>,
}

impl SixPeriodicReport {
    pub fn ok(&self) -> bool {
        self.cycles.iter().all(CycleReport::ok)
    }
}

struct Chase {
    px: CyclicPower,
    py: CyclicPower,
    pz: CyclicPower,
    a: MorphismImage,
    b: MorphismImage,
    inj: PrimeMatrix,
    section: PrimeMatrix,
    retraction: PrimeMatrix,
}

impl Chase {
    fn new(ses: &RepSes) -> Result<Self> {
        let px = CyclicPower::new(&ses.x)?;
        let py = CyclicPower::new(&ses.y)?;
        let pz = CyclicPower::new(&ses.z)?;
        let a = induced_maps(&px, &py, &ses.inj)?;
        let b = induced_maps(&py, &pz, &ses.surj)?;
        let field = ses.x.field();
        let section = ses
            .surj
            .solve(&PrimeMatrix::identity(field, ses.z.dim()))?
            .ok_or_else(|| Error::InvalidSequence("surjection has no section".into()))?;
        let retraction = ses
            .inj
            .transpose()
            .solve(&PrimeMatrix::identity(field, ses.x.dim()))?
            .ok_or_else(|| Error::InvalidSequence("injection has no retraction".into()))?
            .transpose();
        Ok(Chase {
            px,
            py,
            pz,
            a,
            b,
            inj: ses.inj.clone(),
            section,
            retraction,
        })
    }

    /// Connecting map `G_i Z -> G_{p-i} X`: lift a cycle `z` to `ŷ` in
    /// `Y^{⊗p}`, apply `D^i`, pull the result back along the injection and
    /// take its class. Lifts go through a linear section of the surjection.
    fn connecting(&self, i: usize) -> Result<PrimeMatrix> {
        let p = self.px.p();
        let src = self.pz.subquotient(&SubquotientSpec::e(p, i)?)?;
        let dst = self.px.subquotient(&SubquotientSpec::e(p, p - i)?)?;
        let d_y = self.py.operator();
        let columns = src
            .positions()
            .iter()
            .map(|&g| {
                let z = self.pz.basis_vector(g);
                let lift = tensor_power_apply(&self.section, p, &z);
                let boundary = d_y.apply_pow(i, &lift);
                let x = tensor_power_apply(&self.retraction, p, &boundary);
                if tensor_power_apply(&self.inj, p, &x) != boundary {
                    return Err(Error::InvalidSequence("boundary of the lift leaves the image of X".into()));
                }
                dst.class_coords(&self.px.to_jordan(&x))
                    .map_err(|_| Error::NotInvariant("boundary is not a cycle".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PrimeMatrix::from_columns(self.px.field(), dst.dim(), &columns))
    }

    fn cycle(&self, i: usize) -> Result<CycleReport> {
        let p = self.px.p();
        let j = p - i;
        let maps = [
            self.a.g[i - 1].clone(),
            self.b.g[i - 1].clone(),
            self.connecting(i)?,
            self.a.g[j - 1].clone(),
            self.b.g[j - 1].clone(),
            self.connecting(j)?,
        ];
        let dims: [usize; 6] = std::array::from_fn(|k| maps[k].cols());
        let ranks: [usize; 6] = std::array::from_fn(|k| maps[k].rank());
        let mut exact = [false; 6];
        for k in 0..6 {
            let incoming = &maps[(k + 5) % 6];
            let outgoing = &maps[k];
            let composite_zero = outgoing.mul(incoming).map(|m| m.is_zero()).unwrap_or(false);
            exact[k] = composite_zero && ranks[(k + 5) % 6] + ranks[k] == dims[k];
        }
        let alternating_sum = dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        Ok(CycleReport { i, dims, ranks, exact, alternating_sum })
    }
}

/// Exactness of the six-periodic sequence of `G` functors attached to a
/// short exact sequence, for each `i <= p/2`.
pub fn six_periodic_check(ses: &RepSes) -> Result<SixPeriodicReport> {
    let chase = Chase::new(ses)?;
    let p = chase.px.p();
    let cycles = (1..=(p / 2).max(1)).map(|i| chase.cycle(i)).collect::<Result<_>>()?;
    Ok(SixPeriodicReport { p: p as u32, cycles })
}

/// Frobenius exactness conditions on one short exact sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SesExactness {
    pub dims: [usize; 3],
    /// `FPdim F(-)` of `X`, `Y`, `Z`.
    pub fpdim: [f64; 3],
    /// `dim G_i` of `X`, `Y`, `Z` for `i = 1..p-1`.
    pub g_dims: Vec<[usize; 3]>,
    /// `FPdim F(W) = dim W` for each term.
    pub preserves_fpdim: bool,
    /// `FPdim F(Y) = FPdim F(X) + FPdim F(Z)`.
    pub fpdim_additive: bool,
    /// Each `0 -> G_i X -> G_i Y -> G_i Z -> 0` is exact.
    pub g_exact: bool,
    /// `F_i = 0` for `i >= 2` and `dim F_1 = dim` on each term.
    pub f_concentrated: bool,
}

impl SesExactness {
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.preserves_fpdim {
            out.push("FPdim F differs from dim");
        }
        if !self.fpdim_additive {
            out.push("FPdim F not additive");
        }
        if !self.g_exact {
            out.push("G_i not exact");
        }
        if !self.f_concentrated {
            out.push("F_i nonzero for i >= 2");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactnessReport {
    pub entries: Vec<SesExactness>,
}

impl ExactnessReport {
    pub fn violation_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.violations().is_empty()).count()
    }
}

pub fn ses_exactness(ses: &RepSes) -> Result<SesExactness> {
    let chase = Chase::new(ses)?;
    let p = chase.px.p();
    let images: Vec<FrobeniusImage> = [&chase.px, &chase.py, &chase.pz]
        .into_iter()
        .map(super::image_of_power)
        .collect::<Result<_>>()?;
    let dims = [ses.x.dim(), ses.y.dim(), ses.z.dim()];
    let fpdim: [f64; 3] = std::array::from_fn(|k| images[k].fpdim());
    let preserves_fpdim = (0..3).all(|k| (fpdim[k] - dims[k] as f64).abs() <= 1e-9);
    let fpdim_additive = (fpdim[1] - fpdim[0] - fpdim[2]).abs() <= 1e-9;
    let mut g_dims = Vec::with_capacity(p - 1);
    let mut g_exact = true;
    for i in 1..p {
        let (a, b) = (&chase.a.g[i - 1], &chase.b.g[i - 1]);
        let d = [a.cols(), a.rows(), b.rows()];
        g_dims.push(d);
        let composite_zero = b.mul(a).map(|m| m.is_zero()).unwrap_or(false);
        g_exact &= composite_zero && a.rank() == d[0] && b.rank() == d[2] && d[0] + d[2] == d[1];
    }
    let f_concentrated = images
        .iter()
        .zip(dims)
        .all(|(img, dim)| img.f_dims()[0] == dim && img.f_dims()[1..].iter().all(|&x| x == 0));
    Ok(SesExactness {
        dims,
        fpdim,
        g_dims,
        preserves_fpdim,
        fpdim_additive,
        g_exact,
        f_concentrated,
    })
}

pub fn exactness_report(seqs: &[RepSes]) -> Result<ExactnessReport> {
    Ok(ExactnessReport { entries: seqs.iter().map(ses_exactness).collect::<Result<_>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn nonsplit(p: u32) -> RepSes {
        let field = Fp::new(p).unwrap();
        let x = NilModule::jordan_block(field, 1, p as usize).unwrap();
        let phi = PrimeMatrix::from_rows(field, &[vec![1]]).unwrap();
        RepSes::from_nil(&ShortExactSeq::from_coupling(&x, &x, &phi).unwrap()).unwrap()
    }

    #[test]
    fn p2_nonsplit() {
        let ses = nonsplit(2);
        assert_eq!(ses.y.decompose_cyclic().unwrap().parts(), &[2]);
        let r = six_periodic_check(&ses).unwrap();
        assert!(r.ok());
        assert_eq!(r.cycles[0].dims[..3], [1, 2, 1]);
    }

    #[test]
    fn p3_nonsplit() {
        let r = six_periodic_check(&nonsplit(3)).unwrap();
        assert!(r.ok());
        assert_eq!(r.cycles[0].dims, [1, 2, 1, 1, 2, 1]);
        assert_eq!(r.cycles[0].alternating_sum, 0);
    }

    #[test]
    fn split_sequences() {
        let field = Fp::new(3).unwrap();
        let x = GroupRep::cyclic_block(field, 2).unwrap();
        let z = GroupRep::cyclic_block(field, 1).unwrap();
        let ses = RepSes::split(&x, &z).unwrap();
        let r = six_periodic_check(&ses).unwrap();
        assert!(r.ok());
        assert!(ses_exactness(&ses).unwrap().violations().is_empty());
    }

    #[test]
    fn random_sequences_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [2u32, 3] {
            let field = Fp::new(p).unwrap();
            for _ in 0..5 {
                let ses = RepSes::random_cyclic(field, 5, &mut rng).unwrap();
                assert!(six_periodic_check(&ses).unwrap().ok());
                assert!(ses_exactness(&ses).unwrap().violations().is_empty());
            }
        }
    }

    #[test]
    fn rejects_non_intertwiners() {
        let ses = nonsplit(3);
        let swapped = RepSes::new(ses.x.clone(), ses.y.clone(), ses.z.clone(), ses.surj.transpose(), ses.surj.clone());
        assert!(swapped.is_err());
    }
}
