use crate::error::{Error, Result};
use crate::exactla::{tensor_power_apply, Fp, IdMinusPerm, PrimeMatrix};
use crate::nilmod::{CoordinateSubquotient, JordanFrame, JordanType, SubquotientSpec};
use crate::repcat::GroupRep;

/// Environment variable capping the memory of a tensor power, in MiB.
pub const BUDGET_ENV: &str = "FROBCAT_BUDGET_MB";

/// Largest `dim X` accepted for `X^{⊗p}` by default.
pub fn default_max_dim(p: u32) -> usize {
    match p {
        2 => 64,
        3 => 20,
        5 => 6,
        7 => 4,
        _ => {
            let mut d = 1usize;
            while (d + 1).checked_pow(p).is_some_and(|x| x <= 1 << 17) {
                d += 1;
            }
            d
        }
    }
}

/// Bytes needed to hold the shift and one working vector of `X^{⊗p}`.
pub fn required_bytes(p: u32, dim: usize) -> u64 {
    (dim as u64).saturating_pow(p).saturating_mul(24)
}

pub fn check_budget(p: u32, dim: usize) -> Result<()> {
    let required = required_bytes(p, dim);
    if let Some(mb) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
        let budget = mb.saturating_mul(1 << 20);
        if required > budget {
            return Err(Error::Budget {
                what: format!("tensor power of a {dim}-dimensional module with p = {p}"),
                required_bytes: required,
                budget_bytes: budget,
            });
        }
    }
    let max = default_max_dim(p);
    if dim > max {
        return Err(Error::Budget {
            what: format!("tensor power of a {dim}-dimensional module with p = {p} (limit dim {max})"),
            required_bytes: required,
            budget_bytes: required_bytes(p, max),
        });
    }
    Ok(())
}

/// `X^{⊗p}` with the cyclic shift `c(v_1 ⊗ ... ⊗ v_p) = v_p ⊗ v_1 ⊗ ... ⊗ v_{p-1}`
/// and `D = 1 - c`.
///
/// Every shift orbit of basis tensors spans a Jordan chain of `D`: a free
/// orbit `b, cb, ..., c^{p-1} b` (headed by its smallest index) carries the
/// chain `D^k b`, `k < p`, and a fixed tensor is a chain of length 1.
#[derive(Debug, Clone)]
pub struct CyclicPower {
    base: GroupRep,
    p: usize,
    shift: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    frame: JordanFrame,
    binom: Vec<Vec<u32>>,
}

impl CyclicPower {
    pub fn new(base: &GroupRep) -> Result<Self> {
        check_budget(base.p(), base.dim())?;
        Ok(Self::build(base))
    }

    fn build(base: &GroupRep) -> Self {
        let field = base.field();
        let p = field.p() as usize;
        let d = base.dim();
        let total = d.pow(p as u32);
        let top = if d == 0 { 0 } else { d.pow(p as u32 - 1) };
        let shift: Vec<usize> = (0..total).map(|w| (w % d) * top + w / d).collect();
        let mut seen = vec![false; total];
        let mut orbits = Vec::new();
        for head in 0..total {
            if seen[head] {
                continue;
            }
            let mut orbit = vec![head];
            seen[head] = true;
            let mut w = shift[head];
            while w != head {
                seen[w] = true;
                orbit.push(w);
                w = shift[w];
            }
            orbits.push(orbit);
        }
        let frame = JordanFrame::new(orbits.iter().map(Vec::len).collect());
        CyclicPower {
            base: base.clone(),
            p,
            shift,
            orbits,
            frame,
            binom: field.binomial_table(p + 1),
        }
    }

    pub fn base(&self) -> &GroupRep {
        &self.base
    }

    pub fn field(&self) -> Fp {
        self.base.field()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn shift(&self) -> &[usize] {
        &self.shift
    }

    pub fn operator(&self) -> IdMinusPerm {
        IdMinusPerm::new(self.field(), self.shift.clone()).expect("shift is a permutation")
    }

    pub fn frame(&self) -> &JordanFrame {
        &self.frame
    }

    /// Jordan type of `D` read from the orbit structure.
    pub fn jordan_type(&self) -> JordanType {
        JordanType::new(self.frame.chain_lens().to_vec())
    }

    /// Jordan type of `D` from sparse ranks of its powers.
    pub fn jordan_type_by_rank(&self) -> JordanType {
        let op = self.operator();
        let ranks: Vec<usize> = (0..=self.p).map(|k| op.rank_of_power(k)).collect();
        JordanType::from_ranks(&ranks).expect("D^p = 0 on a tensor power")
    }

    /// `D^p = 1 - c^p` in characteristic `p`, so this is the statement `c^p = 1`.
    pub fn is_nilpotent(&self) -> bool {
        (0..self.dim()).all(|w| (0..self.p).fold(w, |x, _| self.shift[x]) == w)
    }

    /// Checks `c ρ(g)^{⊗p} = ρ(g)^{⊗p} c` on a few test vectors.
    pub fn shift_commutes(&self) -> bool {
        let field = self.field();
        let n = self.dim();
        let probes: Vec<Vec<u32>> = (0..2u64)
            .map(|s| {
                (0..n as u64)
                    .map(|w| ((w.wrapping_mul(2654435761).wrapping_add(s * 97) >> 3) % field.p() as u64) as u32)
                    .collect()
            })
            .collect();
        self.base.matrices().iter().all(|g| {
            probes.iter().all(|v| {
                let a = self.permute(&tensor_power_apply(g, self.p, v));
                let b = tensor_power_apply(g, self.p, &self.permute(v));
                a == b
            })
        })
    }

    /// `c v`.
    pub fn permute(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (w, &x) in v.iter().enumerate() {
            out[self.shift[w]] = x;
        }
        out
    }

    /// Coordinates in the Jordan basis: along an orbit `o_j = c^j b`,
    /// `v = Σ_k c_k D^k b` with `c_k = (-1)^k Σ_{j>=k} C(j,k) v_{o_j}`.
    pub fn to_jordan(&self, v: &[u32]) -> Vec<u32> {
        let field = self.field();
        let mut out = vec![0u32; self.dim()];
        for (orbit, &offset) in self.orbits.iter().zip(self.frame.offsets()) {
            for k in 0..orbit.len() {
                let mut acc = 0u32;
                for (j, &w) in orbit.iter().enumerate().skip(k) {
                    acc = field.add(acc, field.mul(self.binom[j][k], v[w]));
                }
                out[offset + k] = if k % 2 == 1 { field.neg(acc) } else { acc };
            }
        }
        out
    }

    /// Standard coordinates of the Jordan basis vector at a frame position:
    /// `D^k b = Σ_{j<=k} (-1)^j C(k,j) c^j b`.
    pub fn basis_vector(&self, position: usize) -> Vec<u32> {
        let field = self.field();
        let offsets = self.frame.offsets();
        let chain = offsets.partition_point(|&o| o <= position) - 1;
        let k = position - offsets[chain];
        let mut v = vec![0u32; self.dim()];
        for (j, &w) in self.orbits[chain].iter().enumerate().take(k + 1) {
            let c = self.binom[k][j];
            v[w] = if j % 2 == 1 { field.neg(c) } else { c };
        }
        v
    }

    pub fn subquotient(&self, spec: &SubquotientSpec) -> Result<CoordinateSubquotient> {
        self.frame.subquotient(spec)
    }

    /// Matrix of the map `src -> dst` induced by `apply` on the ambient
    /// tensor powers. Only numerator membership of the images is checked;
    /// `apply` must commute with `D`.
    pub fn induced(
        &self,
        src: &CoordinateSubquotient,
        target: &CyclicPower,
        dst: &CoordinateSubquotient,
        apply: impl Fn(&[u32]) -> Vec<u32>,
    ) -> Result<PrimeMatrix> {
        let columns = src
            .positions()
            .iter()
            .map(|&g| {
                let image = target.to_jordan(&apply(&self.basis_vector(g)));
                dst.class_coords(&image)
                    .map_err(|_| Error::NotInvariant("image leaves the target numerator".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PrimeMatrix::from_columns(self.field(), dst.dim(), &columns))
    }

    /// `ρ(g)^{⊗p}` induced on a subquotient.
    pub fn induced_action(&self, sq: &CoordinateSubquotient, generator: usize) -> Result<PrimeMatrix> {
        let g = self.base.generator(generator);
        self.induced(sq, self, sq, |v| tensor_power_apply(g, self.p, v))
    }

    /// The subquotient as a representation of the base group.
    pub fn component(&self, spec: &SubquotientSpec) -> Result<GroupRep> {
        let sq = self.subquotient(spec)?;
        let matrices = (0..self.base.matrices().len())
            .map(|g| self.induced_action(&sq, g))
            .collect::<Result<Vec<_>>>()?;
        GroupRep::from_parts(self.base.group().clone(), self.field(), sq.dim(), matrices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmod::NilModule;
    use crate::repcat::GroupSpec;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn small_powers() {
        let triv = GroupRep::trivial(GroupSpec::cyclic(5), f(5));
        let cp = CyclicPower::new(&triv).unwrap();
        assert_eq!(cp.dim(), 1);
        assert_eq!(cp.jordan_type().parts(), &[1]);

        let two = GroupRep::cyclic_from_jordan(f(2), &JordanType::new(vec![1, 1])).unwrap();
        let cp = CyclicPower::new(&two).unwrap();
        assert_eq!(cp.dim(), 4);
        assert_eq!(cp.operator().rank(), 1);

        let j2 = GroupRep::cyclic_block(f(3), 2).unwrap();
        let cp = CyclicPower::new(&j2).unwrap();
        assert_eq!(cp.dim(), 8);
        assert_eq!(cp.jordan_type().parts(), &[3, 3, 1, 1]);
        assert_eq!(cp.jordan_type_by_rank(), cp.jordan_type());
        assert!(cp.is_nilpotent() && cp.shift_commutes());
    }

    #[test]
    fn jordan_coordinates_invert() {
        let x = GroupRep::cyclic_block(f(5), 2).unwrap();
        let cp = CyclicPower::new(&x).unwrap();
        for g in 0..cp.dim() {
            let v = cp.basis_vector(g);
            let coords = cp.to_jordan(&v);
            assert!(coords.iter().enumerate().all(|(h, &c)| c == u32::from(h == g)));
        }
    }

    #[test]
    fn frame_matches_dense_subquotients() {
        let x = GroupRep::cyclic_from_jordan(f(3), &JordanType::new(vec![2, 1])).unwrap();
        let cp = CyclicPower::new(&x).unwrap();
        let dense = NilModule::new(cp.operator().to_dense(), 3).unwrap();
        for i in 1..3 {
            for spec in [SubquotientSpec::b(3, i).unwrap(), SubquotientSpec::e(3, i).unwrap()] {
                assert_eq!(cp.subquotient(&spec).unwrap().dim(), dense.subquotient(&spec).unwrap().dim());
            }
        }
    }

    #[test]
    fn budgets() {
        assert_eq!(default_max_dim(2), 64);
        assert_eq!(default_max_dim(11), 2);
        assert!(check_budget(5, 7).is_err());
        assert!(check_budget(5, 6).is_ok());
    }
}
