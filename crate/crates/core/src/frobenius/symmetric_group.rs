use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Fp, PrimeMatrix, SubQuotient};
use crate::nilmod::{JordanType, NilModule, SubquotientSpec};
use crate::repcat::{GroupRep, GroupSpec};
use crate::verlinde::FusionElement;

/// Largest ambient dimension `m^p` accepted.
const MAX_AMBIENT: usize = 1024;

/// Multiplicity spaces `M_j` in `J_m^{⊗p} ≅ ⊕_j J_j ⊗ M_j` modulo negligible
/// morphisms, as representations of `S_p` permuting the tensor factors.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicitySpaces {
    pub p: u32,
    pub m: usize,
    #[serde(skip)]
    pub spaces: Vec<GroupRep>,
    pub dims: Vec<usize>,
    /// Jordan type of the `p`-cycle on each `M_j`.
    pub cycle_types: Vec<JordanType>,
    pub projective: Vec<bool>,
    /// Dimension left after removing free blocks of the `p`-cycle.
    pub core_dims: Vec<usize>,
}

impl MultiplicitySpaces {
    pub fn space(&self, j: usize) -> &GroupRep {
        &self.spaces[j - 1]
    }

    /// Indices `j` whose space is not projective.
    pub fn non_projective(&self) -> Vec<usize> {
        (1..self.p as usize).filter(|&j| !self.projective[j - 1]).collect()
    }
}

/// `j = 1` for odd `m`, `j = p - 1` for even `m`.
pub fn predicted_exceptional_index(p: u32, m: usize) -> usize {
    if m % 2 == 1 {
        1
    } else {
        p as usize - 1
    }
}

fn ambient_dim(p: u32, m: usize) -> Result<usize> {
    if p < 3 {
        return Err(Error::InvalidInput(format!("p = {p} has no S_p-equivariant splitting to check")));
    }
    if m == 0 || m >= p as usize {
        return Err(Error::IndexOutOfRange {
            index: m,
            range: format!("1..={}", p - 1),
        });
    }
    match m.checked_pow(p) {
        Some(n) if n <= MAX_AMBIENT => Ok(n),
        _ => Err(Error::Budget {
            what: format!("J_{m}^(x{p})"),
            required_bytes: (m as u64).saturating_pow(p).saturating_pow(2).saturating_mul(4),
            budget_bytes: (MAX_AMBIENT * MAX_AMBIENT * 4) as u64,
        }),
    }
}

/// Index permutation of `J_m^{⊗p}` moving the factor in position `k` to `sigma[k]`.
fn factor_permutation(m: usize, p: usize, sigma: &[usize]) -> Vec<usize> {
    let total = m.pow(p as u32);
    (0..total)
        .map(|w| {
            let mut digits = vec![0; p];
            let mut rest = w;
            for k in (0..p).rev() {
                digits[k] = rest % m;
                rest /= m;
            }
            let mut moved = vec![0; p];
            for k in 0..p {
                moved[sigma[k]] = digits[k];
            }
            moved.iter().fold(0, |acc, &x| acc * m + x)
        })
        .collect()
}

fn induced_permutation(field: Fp, perm: &[usize], q: &SubQuotient) -> Result<PrimeMatrix> {
    let columns = q
        .representatives()
        .iter()
        .map(|v| {
            let mut out = vec![0u32; v.len()];
            for (w, &x) in v.iter().enumerate() {
                out[perm[w]] = x;
            }
            q.class_coords(&out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimeMatrix::from_columns(field, q.dim(), &columns))
}

/// Builds `J_m^{⊗p}` with the diagonal action of `Z/p`, `D = 1 - ρ(c)^{⊗p}`,
/// and reads off `M_j = Ker D^j / ((Ker D^j ∩ Im D) + Ker D^{j-1})` with the
/// `S_p` action generated by `(1 2)` and the `p`-cycle.
pub fn sp_multiplicity_spaces(p: u32, m: usize) -> Result<MultiplicitySpaces> {
    let total = ambient_dim(p, m)?;
    let field = Fp::new(p)?;
    let n = p as usize;
    let block = GroupRep::cyclic_block(field, m)?;
    let mut rho = block.generator(0).clone();
    for _ in 1..n {
        rho = rho.kron(block.generator(0))?;
    }
    let d = PrimeMatrix::identity(field, total).sub(&rho)?;
    let module = NilModule::new(d, n)?;

    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    let perms = [factor_permutation(m, n, &swap), factor_permutation(m, n, &cycle)];

    let group = GroupSpec::symmetric(n);
    let mut spaces = Vec::with_capacity(n - 1);
    for j in 1..n {
        let q = module.subquotient(&SubquotientSpec::hom_quotient(n, j)?)?;
        let matrices = perms
            .iter()
            .map(|perm| induced_permutation(field, perm, &q))
            .collect::<Result<Vec<_>>>()?;
        spaces.push(GroupRep::from_parts(group.clone(), field, q.dim(), matrices)?);
    }
    let cycle_types = spaces.iter().map(GroupRep::witness_type).collect::<Result<Vec<_>>>()?;
    let projective = cycle_types.iter().map(|t| t.is_free(n)).collect();
    let core_dims = cycle_types.iter().map(|t| t.without_free(n).dim()).collect();
    Ok(MultiplicitySpaces {
        p,
        m,
        dims: spaces.iter().map(GroupRep::dim).collect(),
        spaces,
        cycle_types,
        projective,
        core_dims,
    })
}

/// Classes of `F_i(L_m)` for `i = 1..p-1`, where `L_m` is the image of
/// `J_m` in the Verlinde category: `F_i(L_m) = Σ_j dim B_i(M_j) · L_j`,
/// with `D = 1 - (p-cycle)` on each multiplicity space.
pub fn frobenius_of_simple(spaces: &MultiplicitySpaces) -> Result<Vec<FusionElement>> {
    let n = spaces.p as usize;
    (1..n)
        .map(|i| {
            let mult = spaces.cycle_types.iter().map(|t| t.multiplicity(i) as u64).collect();
            FusionElement::from_mult(spaces.p, mult)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_cases() {
        let s = sp_multiplicity_spaces(3, 1).unwrap();
        assert_eq!(s.dims, vec![1, 0]);
        assert_eq!(s.non_projective(), vec![1]);
        assert_eq!(s.core_dims[0], 1);

        let s = sp_multiplicity_spaces(3, 2).unwrap();
        assert_eq!(s.non_projective(), vec![2]);
        assert_eq!(s.core_dims[1], 1);
        let core = s.space(2);
        assert!(core.validate().is_empty());
        assert_eq!(core.dim(), 1);
        assert_eq!(core.generator(0).get(0, 0), 2);
        assert_eq!(core.generator(1).get(0, 0), 1);
    }

    #[test]
    fn p5_m2() {
        let s = sp_multiplicity_spaces(5, 2).unwrap();
        assert_eq!(s.non_projective(), vec![predicted_exceptional_index(5, 2)]);
        assert_eq!(s.core_dims[3], 3);
        assert!(s.spaces.iter().all(|r| r.validate().is_empty()));
        let classes = frobenius_of_simple(&s).unwrap();
        let nonzero: Vec<usize> = (1..5).filter(|&i| !classes[i - 1].is_zero()).collect();
        assert_eq!(nonzero, vec![3]);
        assert_eq!(classes[2], FusionElement::simple(5, 4).unwrap());
    }

    #[test]
    fn ranges() {
        assert!(sp_multiplicity_spaces(3, 3).is_err());
        assert!(matches!(sp_multiplicity_spaces(7, 3), Err(Error::Budget { .. })));
    }
}
