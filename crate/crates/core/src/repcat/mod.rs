//! Representations of finitely presented groups over `F_p`, given by one
//! matrix per generator.

mod group;
mod symmetric;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Fp, PrimeMatrix, SparseMatrix, Subspace};
use crate::nilmod::{JordanType, NilModule};

pub use group::{
    cyclic_model, elementary_abelian_model, eval_permutation, symmetric_model, GroupSpec, Word,
};
pub use symmetric::SymmetricPowerTower;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRep {
    group: GroupSpec,
    field: Fp,
    dim: usize,
    matrices: Vec<PrimeMatrix>,
}

/// On-disk form of a representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub p: u32,
    pub group: GroupSpec,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

impl GroupRep {
    /// Builds a representation after checking shapes, invertibility and relations.
    pub fn new(group: GroupSpec, field: Fp, dim: usize, matrices: Vec<PrimeMatrix>) -> Result<Self> {
        let rep = Self::from_parts(group, field, dim, matrices)?;
        let violations = rep.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidRepresentation(violations.join("; ")));
        }
        Ok(rep)
    }

    /// Checks shapes only; see [`GroupRep::validate`].
    pub fn from_parts(group: GroupSpec, field: Fp, dim: usize, matrices: Vec<PrimeMatrix>) -> Result<Self> {
        if matrices.len() != group.generators {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for {} generators",
                matrices.len(),
                group.generators
            )));
        }
        for m in &matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator matrix {}x{} in a rep of dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::ModulusMismatch(m.modulus(), field.p()));
            }
        }
        Ok(GroupRep { group, field, dim, matrices })
    }

    /// Lists every failed condition; empty when the representation is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut invertible = true;
        for (g, m) in self.matrices.iter().enumerate() {
            if m.rank() != self.dim {
                out.push(format!("generator {} is not invertible", letter(g)));
                invertible = false;
            }
        }
        if !invertible {
            return out;
        }
        for rel in &self.group.relations {
            match self.element(rel) {
                Ok(m) if m.is_identity() => {}
                Ok(_) => out.push(format!("relation {rel} fails")),
                Err(e) => out.push(format!("relation {rel}: {e}")),
            }
        }
        match self.element(&self.group.sylow_witness) {
            Ok(w) if w.pow(self.field.p() as usize).map(|m| m.is_identity()).unwrap_or(false) => {}
            Ok(_) => out.push(format!(
                "witness {} does not have order dividing {}",
                self.group.sylow_witness,
                self.field.p()
            )),
            Err(e) => out.push(format!("witness: {e}")),
        }
        out
    }

    pub fn trivial(group: GroupSpec, field: Fp) -> Self {
        let matrices = vec![PrimeMatrix::identity(field, 1); group.generators];
        GroupRep { group, field, dim: 1, matrices }
    }

    pub fn zero(group: GroupSpec, field: Fp) -> Self {
        let matrices = vec![PrimeMatrix::zeros(field, 0, 0); group.generators];
        GroupRep { group, field, dim: 0, matrices }
    }

    /// Linearization of a permutation action given by one permutation per generator.
    pub fn permutation(group: GroupSpec, field: Fp, perms: &[Vec<usize>]) -> Result<Self> {
        let dim = perms.first().map_or(0, Vec::len);
        let matrices = perms.iter().map(|s| PrimeMatrix::permutation(field, s)).collect();
        Self::new(group, field, dim, matrices)
    }

    /// Left regular representation of the group generated by a faithful
    /// permutation model.
    pub fn regular(group: GroupSpec, field: Fp, model: &[Vec<usize>]) -> Result<Self> {
        let points = model.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..points).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut next = 0;
        while next < elements.len() {
            for s in model {
                let h = group::compose(s, &elements[next]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            next += 1;
        }
        let perms: Vec<Vec<usize>> = model
            .iter()
            .map(|s| elements.iter().map(|g| index[&group::compose(s, g)]).collect())
            .collect();
        Self::permutation(group, field, &perms)
    }

    pub fn regular_cyclic(field: Fp) -> Self {
        let p = field.p() as usize;
        Self::regular(GroupSpec::cyclic(field.p()), field, &cyclic_model(p)).expect("cyclic model")
    }

    /// `Z/p` acting on `J_m` through `c = 1 - N`, with `N e_k = e_{k+1}`.
    pub fn cyclic_block(field: Fp, m: usize) -> Result<Self> {
        Self::cyclic_from_jordan(field, &JordanType::new(vec![m]))
    }

    pub fn cyclic_from_jordan(field: Fp, jordan: &JordanType) -> Result<Self> {
        let n = field.p() as usize;
        let module = NilModule::from_jordan_type(field, jordan, n)?;
        Self::cyclic_from_nilpotent(module.d())
    }

    /// `Z/p` acting through `c = 1 - D`; requires `D^p = 0`.
    pub fn cyclic_from_nilpotent(d: &PrimeMatrix) -> Result<Self> {
        let field = d.field();
        let c = PrimeMatrix::identity(field, d.rows()).sub(d)?;
        Self::new(GroupSpec::cyclic(field.p()), field, d.rows(), vec![c])
    }

    pub fn from_file(file: &RepFile) -> Result<Self> {
        let field = Fp::new(file.p)?;
        let matrices = file
            .matrices
            .iter()
            .map(|rows| {
                if rows.len() != file.dim {
                    return Err(Error::DimensionMismatch(format!(
                        "matrix with {} rows in a rep of dimension {}",
                        rows.len(),
                        file.dim
                    )));
                }
                if file.dim == 0 {
                    return Ok(PrimeMatrix::zeros(field, 0, 0));
                }
                PrimeMatrix::from_rows(field, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.group.clone(), field, file.dim, matrices)
    }

    pub fn to_file(&self) -> RepFile {
        RepFile {
            p: self.field.p(),
            group: self.group.clone(),
            dim: self.dim,
            matrices: self
                .matrices
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("rep serializes")
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[PrimeMatrix] {
        &self.matrices
    }

    pub fn generator(&self, g: usize) -> &PrimeMatrix {
        &self.matrices[g]
    }

    pub fn eval(&self, word: &Word) -> Result<PrimeMatrix> {
        let mut inverses: Vec<Option<PrimeMatrix>> = vec![None; self.matrices.len()];
        let mut acc = PrimeMatrix::identity(self.field, self.dim);
        for &(g, inv) in word.letters() {
            if inv {
                if inverses[g].is_none() {
                    let m = self.matrices[g].inverse().ok_or_else(|| {
                        Error::InvalidRepresentation(format!("generator {} is not invertible", letter(g)))
                    })?;
                    inverses[g] = Some(m);
                }
                acc = acc.mul(inverses[g].as_ref().unwrap())?;
            } else {
                acc = acc.mul(&self.matrices[g])?;
            }
        }
        Ok(acc)
    }

    pub fn element(&self, word: &str) -> Result<PrimeMatrix> {
        self.eval(&self.group.parse(word)?)
    }

    fn same_group(&self, other: &GroupRep) -> Result<()> {
        if !self.group.same_presentation(&other.group) {
            return Err(Error::GroupMismatch(self.group.name.clone(), other.group.name.clone()));
        }
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.p(), other.p()));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &GroupRep) -> Result<Self> {
        self.same_group(other)?;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.kron(b))
            .collect::<Result<_>>()?;
        Ok(GroupRep {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim * other.dim,
            matrices,
        })
    }

    pub fn direct_sum(&self, other: &GroupRep) -> Result<Self> {
        self.same_group(other)?;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        Ok(GroupRep {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim + other.dim,
            matrices,
        })
    }

    /// Contragredient: generators act by inverse transposes.
    pub fn dual(&self) -> Result<Self> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                m.inverse()
                    .map(|inv| inv.transpose())
                    .ok_or_else(|| Error::InvalidRepresentation("singular generator".into()))
            })
            .collect::<Result<_>>()?;
        Ok(GroupRep { matrices, ..self.clone() })
    }

    /// Base change of the module by an invertible matrix.
    pub fn conjugate(&self, a: &PrimeMatrix) -> Result<Self> {
        let inv = a
            .inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| a.mul(m)?.mul(&inv))
            .collect::<Result<_>>()?;
        Ok(GroupRep { matrices, ..self.clone() })
    }

    pub fn symmetric_power(&self, m: usize) -> Result<Self> {
        let tower = SymmetricPowerTower::new(self, m)?;
        Ok(tower.power(m).clone())
    }

    /// `D = 1 - ρ(word)` as a module over `F_p[D]/D^n`.
    pub fn restrict_to_nilmodule(&self, word: &str, n: usize) -> Result<NilModule> {
        let g = self.order_p_element(word)?;
        let d = PrimeMatrix::identity(self.field, self.dim).sub(&g)?;
        NilModule::new(d, n)
    }

    fn order_p_element(&self, word: &str) -> Result<PrimeMatrix> {
        let g = self.element(word)?;
        if !g.pow(self.p() as usize)?.is_identity() {
            return Err(Error::WrongOrder { word: word.to_string(), p: self.p() });
        }
        Ok(g)
    }

    /// Jordan type of `1 - ρ(word)`, using sparse ranks of its powers.
    pub fn restriction_type(&self, word: &str) -> Result<JordanType> {
        let g = self.order_p_element(word)?;
        let d = PrimeMatrix::identity(self.field, self.dim).sub(&g)?;
        Ok(sparse_jordan_type(&SparseMatrix::from_dense(&d)))
    }

    pub fn witness_type(&self) -> Result<JordanType> {
        self.restriction_type(&self.group.sylow_witness)
    }

    /// Complete isomorphism invariant of a `Z/p`-module.
    pub fn decompose_cyclic(&self) -> Result<JordanType> {
        if !self.group.is_cyclic() {
            return Err(Error::GroupMismatch("cyclic group".into(), self.group.name.clone()));
        }
        self.restriction_type("a")
    }

    /// Free over the Sylow witness, which for a Sylow subgroup of order `p`
    /// is equivalent to projectivity.
    pub fn is_projective(&self) -> Result<bool> {
        Ok(self.witness_type()?.is_free(self.p() as usize))
    }

    /// Basis of `{f : f ρ_a(g) = ρ_b(g) f}` as `dim b × dim a` matrices.
    pub fn hom_basis(&self, target: &GroupRep) -> Result<Vec<PrimeMatrix>> {
        self.same_group(target)?;
        let (da, db) = (self.dim, target.dim);
        let size = da * db;
        let mut equations = Vec::new();
        for (a, b) in self.matrices.iter().zip(&target.matrices) {
            // row-major vec(F A) = (I ⊗ Aᵀ) vec F and vec(B F) = (B ⊗ I) vec F
            let left = PrimeMatrix::identity(self.field, db).kron(&a.transpose())?;
            let right = b.kron(&PrimeMatrix::identity(self.field, da))?;
            equations.push(left.sub(&right)?);
        }
        let mut stacked = Vec::with_capacity(equations.len() * size * size);
        for e in &equations {
            stacked.extend_from_slice(e.data());
        }
        let system = PrimeMatrix::from_flat(self.field, equations.len() * size, size, stacked)?;
        let kernel: Subspace = system.kernel();
        kernel
            .basis_vectors()
            .into_iter()
            .map(|v| PrimeMatrix::from_flat(self.field, db, da, v))
            .collect()
    }

    /// Whether `f: self -> target` commutes with every generator.
    pub fn is_intertwiner(&self, target: &GroupRep, f: &PrimeMatrix) -> Result<bool> {
        self.same_group(target)?;
        if f.rows() != target.dim || f.cols() != self.dim {
            return Ok(false);
        }
        for (a, b) in self.matrices.iter().zip(&target.matrices) {
            if f.mul(a)? != b.mul(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn letter(g: usize) -> char {
    (b'a' + g as u8) as char
}

/// Jordan type of a nilpotent sparse operator from the ranks of its powers.
pub fn sparse_jordan_type(d: &SparseMatrix) -> JordanType {
    let mut ranks = vec![d.rows()];
    let mut power = SparseMatrix::identity(d.field(), d.rows());
    while *ranks.last().unwrap() > 0 {
        power = power.mul(d).expect("square operator");
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            panic!("operator is not nilpotent");
        }
        ranks.push(r);
    }
    JordanType::from_ranks(&ranks).expect("rank sequence of a nilpotent operator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn block(p: u32, m: usize) -> GroupRep {
        GroupRep::cyclic_block(f(p), m).unwrap()
    }

    #[test]
    fn validate_examples() {
        let reg = GroupRep::regular_cyclic(f(3));
        assert_eq!(reg.dim(), 3);
        assert!(reg.validate().is_empty());
        let bad = GroupRep::from_parts(GroupSpec::cyclic(3), f(3), 2, vec![PrimeMatrix::zeros(f(3), 2, 2)]).unwrap();
        assert!(!bad.validate().is_empty());
        let s3 = GroupRep::permutation(GroupSpec::symmetric(3), f(3), &symmetric_model(3)).unwrap();
        assert!(s3.validate().is_empty());
        // a matrix of order 2 violates a^3 = 1
        let wrong = GroupRep::from_parts(
            GroupSpec::cyclic(3),
            f(3),
            1,
            vec![PrimeMatrix::from_rows(f(3), &[vec![2]]).unwrap()],
        )
        .unwrap();
        assert_eq!(wrong.validate().len(), 2);
    }

    #[test]
    fn tensor_dual_sum() {
        let x = block(3, 2);
        let triv = GroupRep::trivial(GroupSpec::cyclic(3), f(3));
        assert_eq!(triv.tensor(&x).unwrap(), x);
        assert_eq!(x.dual().unwrap().dual().unwrap(), x);
        assert_eq!(x.direct_sum(&triv).unwrap().dim(), 3);
        let j2 = block(2, 2);
        assert_eq!(j2.tensor(&j2).unwrap().decompose_cyclic().unwrap().parts(), &[2, 2]);
        let s3 = GroupRep::trivial(GroupSpec::symmetric(3), f(3));
        assert!(matches!(x.tensor(&s3), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn green_ring_examples() {
        let t = |p, a, b| block(p, a).tensor(&block(p, b)).unwrap().decompose_cyclic().unwrap();
        assert_eq!(t(3, 2, 2).parts(), &[3, 1]);
        assert_eq!(t(3, 2, 3).parts(), &[3, 3]);
        assert_eq!(t(5, 3, 3).parts(), &[5, 3, 1]);
    }

    #[test]
    fn restriction_examples() {
        let triv = GroupRep::trivial(GroupSpec::cyclic(5), f(5));
        assert!(triv.restrict_to_nilmodule("a", 5).unwrap().d().is_zero());
        let reg = GroupRep::regular_cyclic(f(5));
        assert_eq!(reg.restrict_to_nilmodule("a", 5).unwrap().jordan_type().parts(), &[5]);
        assert!(reg.restrict_to_nilmodule("1", 5).unwrap().d().is_zero());
        let s3 = GroupRep::permutation(GroupSpec::symmetric(3), f(3), &symmetric_model(3)).unwrap();
        assert!(matches!(s3.restrict_to_nilmodule("a", 3), Err(Error::WrongOrder { .. })));
    }

    #[test]
    fn projectivity() {
        assert!(GroupRep::regular_cyclic(f(5)).is_projective().unwrap());
        assert!(!GroupRep::trivial(GroupSpec::cyclic(5), f(5)).is_projective().unwrap());
        let reg = GroupRep::regular(GroupSpec::symmetric(3), f(3), &symmetric_model(3)).unwrap();
        assert_eq!(reg.dim(), 6);
        assert!(reg.is_projective().unwrap());
    }

    #[test]
    fn hom_examples() {
        let triv = GroupRep::trivial(GroupSpec::cyclic(2), f(2));
        assert_eq!(triv.hom_basis(&triv).unwrap().len(), 1);
        let j2 = block(2, 2);
        let homs = triv.hom_basis(&j2).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].to_rows(), vec![vec![0], vec![1]]);
        assert_eq!(j2.hom_basis(&j2).unwrap().len(), 2);
        for h in homs {
            assert!(triv.is_intertwiner(&j2, &h).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let s3 = GroupRep::permutation(GroupSpec::symmetric(3), f(3), &symmetric_model(3)).unwrap();
        let text = s3.to_json();
        assert_eq!(GroupRep::from_json(&text).unwrap(), s3);
        let bad = text.replace("[[0,1,0],[1,0,0],[0,0,1]]", "[[0,1,0],[0,1,0],[0,0,1]]");
        assert_ne!(bad, text);
        assert!(GroupRep::from_json(&bad).is_err());
    }
}
