//! The Verlinde fusion ring `Ver_p`, Frobenius-Perron dimensions and the
//! semisimplification of `Z/p`-modules.

mod cone;

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{induced_on_subquotient, is_prime, Fp};
use crate::nilmod::{Lattice, NilModule, SubquotientSpec};
use crate::repcat::GroupRep;

pub use cone::{concave_weights_to_cone, cone_constant, reconstruct, verlinde_weights, ConeConstant, WeightVector};

/// Multiplicities of the simples `L_1, ..., L_{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FusionElement {
    pub p: u32,
    pub mult: Vec<u64>,
}

impl FusionElement {
    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(FusionElement { p, mult: vec![0; p as usize - 1] })
    }

    pub fn simple(p: u32, r: usize) -> Result<Self> {
        let mut e = Self::zero(p)?;
        check_index(p, r)?;
        e.mult[r - 1] = 1;
        Ok(e)
    }

    pub fn unit(p: u32) -> Result<Self> {
        Self::simple(p, 1)
    }

    pub fn from_mult(p: u32, mult: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if mult.len() != p as usize - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} multiplicities for p = {p}",
                mult.len()
            )));
        }
        Ok(FusionElement { p, mult })
    }

    /// Multiplicity of `L_r`.
    pub fn get(&self, r: usize) -> u64 {
        self.mult[r - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &FusionElement) -> Result<Self> {
        self.same_p(other)?;
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        Ok(FusionElement { p: self.p, mult })
    }

    pub fn scale(&self, k: u64) -> Self {
        FusionElement { p: self.p, mult: self.mult.iter().map(|m| m * k).collect() }
    }

    pub fn tensor(&self, other: &FusionElement) -> Result<Self> {
        self.same_p(other)?;
        let p = self.p as usize;
        let mut mult = vec![0u64; p - 1];
        for (r, &a) in self.mult.iter().enumerate().filter(|e| *e.1 > 0) {
            for (s, &b) in other.mult.iter().enumerate().filter(|e| *e.1 > 0) {
                for t in fusion_terms(p, r + 1, s + 1) {
                    mult[t - 1] += a * b;
                }
            }
        }
        Ok(FusionElement { p: self.p, mult })
    }

    pub fn fpdim(&self) -> f64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(r, &m)| m as f64 * fpdim_simple(self.p, r + 1))
            .sum()
    }

    fn same_p(&self, other: &FusionElement) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }
}

impl std::fmt::Display for FusionElement {
    /// Renders as `L1+2L3`, or `0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|e| *e.1 > 0)
            .map(|(r, &m)| if m == 1 { format!("L{}", r + 1) } else { format!("{m}L{}", r + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn check_index(p: u32, r: usize) -> Result<()> {
    if r == 0 || r >= p as usize {
        return Err(Error::IndexOutOfRange {
            index: r,
            range: format!("1..={}", p - 1),
        });
    }
    Ok(())
}

/// Indices `t` with `L_t` in `L_r ⊗ L_s`: `|r - s| + 2i - 1` for
/// `i = 1..=min(r, s, p - r, p - s)`.
fn fusion_terms(p: usize, r: usize, s: usize) -> impl Iterator<Item = usize> {
    let count = r.min(s).min(p - r).min(p - s);
    let base = r.abs_diff(s);
    (1..=count).map(move |i| base + 2 * i - 1)
}

pub fn fusion_simple(p: u32, r: usize, s: usize) -> Result<FusionElement> {
    check_index(p, r)?;
    check_index(p, s)?;
    FusionElement::simple(p, r)?.tensor(&FusionElement::simple(p, s)?)
}

/// `N_r[t][s]` = multiplicity of `L_t` in `L_r ⊗ L_s`.
pub fn fusion_matrix(p: u32, r: usize) -> Result<Vec<Vec<u64>>> {
    let size = p as usize - 1;
    let mut n = vec![vec![0u64; size]; size];
    for s in 1..=size {
        let prod = fusion_simple(p, r, s)?;
        for t in 1..=size {
            n[t - 1][s - 1] = prod.get(t);
        }
    }
    Ok(n)
}

/// `sin(π r / p) / sin(π / p)`.
pub fn fpdim_simple(p: u32, r: usize) -> f64 {
    let p = f64::from(p);
    (PI * r as f64 / p).sin() / (PI / p).sin()
}

/// Perron eigenvector of the fusion matrix of `L_2`, normalized so that the
/// entry for `L_1` is 1.
pub fn fpdim_perron(p: u32) -> Result<Vec<f64>> {
    check_prime(p)?;
    if p == 2 {
        return Ok(vec![1.0]);
    }
    let n2 = fusion_matrix(p, 2)?;
    let size = n2.len();
    let mut v = vec![1.0f64; size];
    // N_2 is bipartite; iterate with N_2 + I to break the period.
    for _ in 0..100_000 {
        let mut w: Vec<f64> = (0..size)
            .map(|t| v[t] + (0..size).map(|s| n2[t][s] as f64 * v[s]).sum::<f64>())
            .collect();
        let scale = w[0];
        w.iter_mut().for_each(|x| *x /= scale);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    Ok(v)
}

/// Tab-separated table of `L_r ⊗ L_s`.
pub fn fusion_table_tsv(p: u32) -> Result<String> {
    check_prime(p)?;
    let size = p as usize - 1;
    let mut out = String::new();
    let header: Vec<String> = (1..=size).map(|s| format!("L{s}")).collect();
    writeln!(out, "\t{}", header.join("\t")).unwrap();
    for r in 1..=size {
        let row: Vec<String> = (1..=size)
            .map(|s| fusion_simple(p, r, s).map(|e| e.to_string()))
            .collect::<Result<_>>()?;
        writeln!(out, "L{r}\t{}", row.join("\t")).unwrap();
    }
    Ok(out)
}

/// `⊕ B_i(X) ⊗ L_i`: blocks of size `p` are negligible and vanish.
pub fn semisimplify_module(module: &NilModule, p: u32) -> Result<FusionElement> {
    check_prime(p)?;
    let n = p as usize;
    if !module.power(n).is_zero() {
        return Err(Error::NotNilpotent { order: n });
    }
    let module = if module.n() == n { module.clone() } else { NilModule::new(module.d().clone(), n)? };
    let mult = (1..n).map(|i| module.functor_b(i).map(|b| b.dim() as u64)).collect::<Result<_>>()?;
    FusionElement::from_mult(p, mult)
}

/// Semisimplification of a `Z/p`-module, read off its Jordan type.
pub fn semisimplify_rep(rep: &GroupRep) -> Result<FusionElement> {
    let jordan = rep.decompose_cyclic()?;
    let p = rep.p();
    let mult = (1..p as usize).map(|i| jordan.multiplicity(i) as u64).collect();
    FusionElement::from_mult(p, mult)
}

/// Homomorphisms from the block of size `i` into `X`, and the negligible ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomDims {
    pub hom: usize,
    pub negligible: usize,
    pub quotient_dim: usize,
    /// `D^{i-1}` maps the quotient isomorphically onto `B_i(X)`.
    pub iso_to_b: bool,
}

pub fn natfunc_hom_dims(module: &NilModule, i: usize) -> Result<HomDims> {
    let n = module.n();
    let quotient = module.subquotient(&SubquotientSpec::hom_quotient(n, i)?)?;
    let hom = module.subspace(&Lattice::Ker(i))?.dim();
    let b = module.functor_b(i)?;
    let map = induced_on_subquotient(module.power(i - 1), &quotient, &b)?;
    let iso_to_b = map.rows() == map.cols() && map.rank() == map.rows();
    Ok(HomDims {
        hom,
        negligible: quotient.denominator().dim(),
        quotient_dim: quotient.dim(),
        iso_to_b,
    })
}

/// Jordan type and semisimplified class of `J_a ⊗ J_b` for `1 <= a, b <= p`.
pub fn green_table_tsv(p: u32) -> Result<String> {
    let field = Fp::new(p)?;
    let n = p as usize;
    let mut out = String::from("a\tb\tjordan\tsemisimplified\n");
    for a in 1..=n {
        let ja = GroupRep::cyclic_block(field, a)?;
        for b in 1..=n {
            let prod = ja.tensor(&GroupRep::cyclic_block(field, b)?)?;
            let jordan = prod.decompose_cyclic()?;
            let class = semisimplify_rep(&prod)?;
            writeln!(out, "{a}\t{b}\t{jordan}\t{class}").unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmod::JordanType;

    #[test]
    fn fusion_examples() {
        assert_eq!(fusion_simple(3, 2, 2).unwrap(), FusionElement::unit(3).unwrap());
        assert_eq!(fusion_simple(7, 3, 3).unwrap().to_string(), "L1+L3+L5");
        assert_eq!(fusion_simple(5, 4, 2).unwrap().to_string(), "L3");
        assert!(fusion_simple(5, 5, 1).is_err());
        assert!(FusionElement::zero(4).is_err());
    }

    #[test]
    fn fpdim_examples() {
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((FusionElement::simple(5, 2).unwrap().fpdim() - golden).abs() < 1e-12);
        for p in [2u32, 3, 5, 7, 11] {
            assert!((fpdim_simple(p, 1) - 1.0).abs() < 1e-12);
            assert!((fpdim_simple(p, p as usize - 1) - 1.0).abs() < 1e-12);
            let perron = fpdim_perron(p).unwrap();
            for (r, v) in perron.iter().enumerate() {
                assert!((v - fpdim_simple(p, r + 1)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn semisimplify_examples() {
        let f3 = Fp::new(3).unwrap();
        let free = NilModule::jordan_block(f3, 3, 3).unwrap();
        assert!(semisimplify_module(&free, 3).unwrap().is_zero());
        let j1 = NilModule::jordan_block(f3, 1, 3).unwrap();
        assert_eq!(semisimplify_module(&j1, 3).unwrap(), FusionElement::unit(3).unwrap());
        let j2 = GroupRep::cyclic_block(f3, 2).unwrap();
        let sq = j2.tensor(&j2).unwrap();
        assert_eq!(sq.decompose_cyclic().unwrap(), JordanType::new(vec![3, 1]));
        assert_eq!(semisimplify_rep(&sq).unwrap(), fusion_simple(3, 2, 2).unwrap());
        let too_big = NilModule::jordan_block(f3, 4, 4).unwrap();
        assert!(semisimplify_module(&too_big, 3).is_err());
    }

    #[test]
    fn hom_dims_examples() {
        let f = Fp::new(5).unwrap();
        for i in 1..5 {
            let ji = NilModule::jordan_block(f, i, 5).unwrap();
            let h = natfunc_hom_dims(&ji, i).unwrap();
            assert_eq!((h.hom, h.quotient_dim), (i, 1));
            assert!(h.iso_to_b);
            let free = NilModule::jordan_block(f, 5, 5).unwrap();
            assert_eq!(natfunc_hom_dims(&free, i).unwrap().quotient_dim, 0);
        }
        let m = NilModule::from_jordan_type(f, &JordanType::new(vec![3, 1, 1, 2]), 5).unwrap();
        let h = natfunc_hom_dims(&m, 1).unwrap();
        assert_eq!(h.hom, 4);
        assert_eq!(h.quotient_dim, 2);
    }

    #[test]
    fn tables_render() {
        let t = fusion_table_tsv(3).unwrap();
        assert_eq!(t, "\tL1\tL2\nL1\tL1\tL2\nL2\tL2\tL1\n");
        let g = green_table_tsv(2).unwrap();
        assert!(g.contains("2\t2\t(2,2)\t0"));
    }
}
