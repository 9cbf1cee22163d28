use crate::error::Result;
use crate::exactla::{induced_on_subquotient, PrimeMatrix, SubQuotient, Subspace};

use super::GroupRep;

/// `S^0 X, ..., S^m X` as coinvariant quotients, built one factor at a time:
/// `S^i X = (S^{i-1} X ⊗ X) / (relations swapping the last two factors)`.
#[derive(Debug, Clone)]
pub struct SymmetricPowerTower {
    powers: Vec<GroupRep>,
    /// `projections[i - 1]: S^{i-1} X ⊗ X -> S^i X`.
    projections: Vec<PrimeMatrix>,
}

impl SymmetricPowerTower {
    pub fn new(x: &GroupRep, m: usize) -> Result<Self> {
        let field = x.field();
        let mut tower = SymmetricPowerTower {
            powers: vec![GroupRep::trivial(x.group().clone(), field)],
            projections: Vec::new(),
        };
        if m >= 1 {
            tower.powers.push(x.clone());
            tower.projections.push(PrimeMatrix::identity(field, x.dim()));
        }
        for i in 2..=m {
            tower.push_next(x, i)?;
        }
        Ok(tower)
    }

    fn push_next(&mut self, x: &GroupRep, i: usize) -> Result<()> {
        let field = x.field();
        let d = x.dim();
        let prev = &self.powers[i - 1];
        let s1 = prev.dim();
        let s2 = self.powers[i - 2].dim();
        let pi = &self.projections[i - 2];
        let ambient = s1 * d;
        let mut relations = Vec::new();
        for t in 0..s2 {
            for a in 0..d {
                for b in a + 1..d {
                    let mut v = vec![0u32; ambient];
                    for r in 0..s1 {
                        let ca = pi.get(r, t * d + a);
                        let cb = pi.get(r, t * d + b);
                        v[r * d + b] = field.add(v[r * d + b], ca);
                        v[r * d + a] = field.sub(v[r * d + a], cb);
                    }
                    relations.push(v);
                }
            }
        }
        let quotient = SubQuotient::new(
            Subspace::full(field, ambient),
            Subspace::from_vectors(field, ambient, relations),
        )?;
        let columns = (0..ambient)
            .map(|k| {
                let mut e = vec![0u32; ambient];
                e[k] = 1;
                quotient.class_coords(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        let projection = PrimeMatrix::from_columns(field, quotient.dim(), &columns);
        let matrices = prev
            .matrices()
            .iter()
            .zip(x.matrices())
            .map(|(a, b)| induced_on_subquotient(&a.kron(b)?, &quotient, &quotient))
            .collect::<Result<Vec<_>>>()?;
        let rep = GroupRep::from_parts(x.group().clone(), field, quotient.dim(), matrices)?;
        self.powers.push(rep);
        self.projections.push(projection);
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, i: usize) -> &GroupRep {
        &self.powers[i]
    }

    pub fn projection(&self, i: usize) -> &PrimeMatrix {
        &self.projections[i - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(GroupRep::dim).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::repcat::GroupSpec;

    /// dim X^{⊗m} / span{w - σw}, σ ranging over adjacent transpositions.
    fn coinvariant_dim(d: usize, m: usize, p: u32) -> usize {
        let field = Fp::new(p).unwrap();
        let total = d.pow(m as u32);
        let mut vectors = Vec::new();
        for idx in 0..total {
            let mut digits = vec![0; m];
            let mut rest = idx;
            for k in (0..m).rev() {
                digits[k] = rest % d;
                rest /= d;
            }
            for k in 0..m.saturating_sub(1) {
                let mut swapped = digits.clone();
                swapped.swap(k, k + 1);
                let other = swapped.iter().fold(0, |acc, &x| acc * d + x);
                if other != idx {
                    let mut v = vec![0u32; total];
                    v[idx] = 1;
                    v[other] = field.neg(1);
                    vectors.push(v);
                }
            }
        }
        total - Subspace::from_vectors(field, total, vectors).dim()
    }

    #[test]
    fn dims_match_coinvariant_oracle() {
        for p in [2u32, 3] {
            let field = Fp::new(p).unwrap();
            for d in 1..=3usize {
                let x = GroupRep::cyclic_from_jordan(field, &vec![d.min(p as usize)].into())
                    .unwrap()
                    .direct_sum(&GroupRep::cyclic_from_jordan(field, &vec![1; d - d.min(p as usize)].into()).unwrap())
                    .unwrap();
                assert_eq!(x.dim(), d);
                let tower = SymmetricPowerTower::new(&x, 4).unwrap();
                for m in 0..=4 {
                    assert_eq!(tower.power(m).dim(), coinvariant_dim(d, m, p), "p={p} d={d} m={m}");
                }
            }
        }
    }

    #[test]
    fn small_cases() {
        let field = Fp::new(2).unwrap();
        let x = GroupRep::cyclic_block(field, 2).unwrap();
        let tower = SymmetricPowerTower::new(&x, 6).unwrap();
        assert_eq!(tower.dims(), vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(tower.power(0), &GroupRep::trivial(GroupSpec::cyclic(2), field));
        assert_eq!(tower.power(1), &x);
        for i in 0..=6 {
            assert!(tower.power(i).validate().is_empty());
        }
    }
}
