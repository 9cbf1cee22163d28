//! The functors `F_i(X) = B_i(X^{⊗p})` and `G_i(X) = E_i(X^{⊗p})`, with
//! `D = 1 - c` for the cyclic shift `c` of tensor factors, and the
//! diagnostics built on them.

mod power;
mod sequence;
mod symmetric_group;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{tensor_power_apply, PrimeMatrix};
use crate::nilmod::{JordanType, SubquotientSpec};
use crate::repcat::GroupRep;
use crate::verlinde::{fpdim_simple, FusionElement};

pub use power::{check_budget, default_max_dim, required_bytes, CyclicPower, BUDGET_ENV};
pub use sequence::{
    exactness_report, ses_exactness, six_periodic_check, CycleReport, ExactnessReport, RepSes, SesExactness,
    SixPeriodicReport,
};
pub use symmetric_group::{frobenius_of_simple, predicted_exceptional_index, sp_multiplicity_spaces, MultiplicitySpaces};

/// `F_1, ..., F_{p-1}` and `G_1, ..., G_{p-1}` of one object.
#[derive(Debug, Clone)]
pub struct FrobeniusImage {
    pub p: u32,
    pub f: Vec<GroupRep>,
    pub g: Vec<GroupRep>,
    pub power_type: JordanType,
}

impl FrobeniusImage {
    /// `F_i` for `1 <= i <= p - 1`.
    pub fn f(&self, i: usize) -> &GroupRep {
        &self.f[i - 1]
    }

    pub fn g(&self, i: usize) -> &GroupRep {
        &self.g[i - 1]
    }

    pub fn f_dims(&self) -> Vec<usize> {
        self.f.iter().map(GroupRep::dim).collect()
    }

    pub fn g_dims(&self) -> Vec<usize> {
        self.g.iter().map(GroupRep::dim).collect()
    }

    /// `Σ_i FPdim(L_i) dim F_i`.
    pub fn fpdim(&self) -> f64 {
        self.f
            .iter()
            .enumerate()
            .map(|(k, rep)| fpdim_simple(self.p, k + 1) * rep.dim() as f64)
            .sum()
    }

    /// `[F] = Σ_i dim F_i · L_i` in the Verlinde ring.
    pub fn class(&self) -> FusionElement {
        FusionElement {
            p: self.p,
            mult: self.f.iter().map(|r| r.dim() as u64).collect(),
        }
    }
}

pub fn frobenius_components(x: &GroupRep) -> Result<FrobeniusImage> {
    let power = CyclicPower::new(x)?;
    image_of_power(&power)
}

fn image_of_power(power: &CyclicPower) -> Result<FrobeniusImage> {
    let p = power.p();
    let mut f = Vec::with_capacity(p - 1);
    let mut g = Vec::with_capacity(p - 1);
    for i in 1..p {
        f.push(power.component(&SubquotientSpec::b(p, i)?)?);
        g.push(power.component(&SubquotientSpec::e(p, i)?)?);
    }
    Ok(FrobeniusImage {
        p: p as u32,
        f,
        g,
        power_type: power.jordan_type(),
    })
}

/// `F_i(f)` and `G_i(f)` for an intertwiner `f: X -> Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismImage {
    pub f: Vec<PrimeMatrix>,
    pub g: Vec<PrimeMatrix>,
}

pub fn frobenius_on_morphism(x: &GroupRep, y: &GroupRep, map: &PrimeMatrix) -> Result<MorphismImage> {
    if !x.is_intertwiner(y, map)? {
        return Err(Error::NotIntertwiner(format!(
            "{}x{} matrix between modules of dimension {} and {}",
            map.rows(),
            map.cols(),
            x.dim(),
            y.dim()
        )));
    }
    let px = CyclicPower::new(x)?;
    let py = CyclicPower::new(y)?;
    induced_maps(&px, &py, map)
}

pub(crate) fn induced_maps(px: &CyclicPower, py: &CyclicPower, map: &PrimeMatrix) -> Result<MorphismImage> {
    let p = px.p();
    let apply = |v: &[u32]| tensor_power_apply(map, p, v);
    let mut f = Vec::with_capacity(p - 1);
    let mut g = Vec::with_capacity(p - 1);
    for i in 1..p {
        for (spec, out) in [(SubquotientSpec::b(p, i)?, &mut f), (SubquotientSpec::e(p, i)?, &mut g)] {
            let src = px.subquotient(&spec)?;
            let dst = py.subquotient(&spec)?;
            out.push(px.induced(&src, py, &dst, apply)?);
        }
    }
    Ok(MorphismImage { f, g })
}

/// One component compared on both sides of an isomorphism claim, by
/// dimension and by the Jordan type of the Sylow witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentMatch {
    pub functor: &'static str,
    pub i: usize,
    pub left_dim: usize,
    pub right_dim: usize,
    pub left_type: JordanType,
    pub right_type: JordanType,
}

impl ComponentMatch {
    fn new(functor: &'static str, i: usize, left: &GroupRep, right: &GroupRep) -> Result<Self> {
        Ok(ComponentMatch {
            functor,
            i,
            left_dim: left.dim(),
            right_dim: right.dim(),
            left_type: left.witness_type()?,
            right_type: right.witness_type()?,
        })
    }

    pub fn ok(&self) -> bool {
        self.left_dim == self.right_dim && self.left_type == self.right_type
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub components: Vec<ComponentMatch>,
}

impl ComparisonReport {
    pub fn ok(&self) -> bool {
        self.components.iter().all(ComponentMatch::ok)
    }

    pub fn mismatches(&self) -> Vec<&ComponentMatch> {
        self.components.iter().filter(|c| !c.ok()).collect()
    }
}

/// `F_i(X ⊕ Y)` against `F_i(X) ⊕ F_i(Y)`, and the same for `G_i`.
pub fn check_additivity(x: &GroupRep, y: &GroupRep) -> Result<ComparisonReport> {
    let sum = x.direct_sum(y)?;
    check_budget(sum.p(), sum.dim())?;
    let (ix, iy, is) = (frobenius_components(x)?, frobenius_components(y)?, frobenius_components(&sum)?);
    let mut components = Vec::new();
    for i in 1..x.p() as usize {
        components.push(ComponentMatch::new("F", i, is.f(i), &ix.f(i).direct_sum(iy.f(i))?)?);
        components.push(ComponentMatch::new("G", i, is.g(i), &ix.g(i).direct_sum(iy.g(i))?)?);
    }
    Ok(ComparisonReport { components })
}

/// `F_i(X ⊗ Y)` against `⊕_j ⊕_{s=1}^{min(i,j,p-i,p-j)} F_j(X) ⊗ F_{|i-j|+2s-1}(Y)`.
pub fn check_monoidality(x: &GroupRep, y: &GroupRep) -> Result<ComparisonReport> {
    let prod = x.tensor(y)?;
    check_budget(prod.p(), prod.dim())?;
    let p = x.p() as usize;
    let (ix, iy, ip) = (frobenius_components(x)?, frobenius_components(y)?, frobenius_components(&prod)?);
    let mut components = Vec::new();
    for i in 1..p {
        let mut right = GroupRep::zero(x.group().clone(), x.field());
        for j in 1..p {
            let count = i.min(j).min(p - i).min(p - j);
            for s in 1..=count {
                let k = i.abs_diff(j) + 2 * s - 1;
                right = right.direct_sum(&ix.f(j).tensor(iy.f(k))?)?;
            }
        }
        components.push(ComponentMatch::new("F", i, ip.f(i), &right)?);
    }
    Ok(ComparisonReport { components })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FpdimReport {
    pub value: f64,
    pub dim: usize,
}

impl FpdimReport {
    /// `FPdim F(X) <= FPdim X`.
    pub fn bounded(&self) -> bool {
        self.value <= self.dim as f64 + 1e-9
    }

    pub fn preserved(&self) -> bool {
        (self.value - self.dim as f64).abs() <= 1e-9
    }
}

pub fn fpdim_of_f(x: &GroupRep) -> Result<FpdimReport> {
    Ok(FpdimReport { value: frobenius_components(x)?.fpdim(), dim: x.dim() })
}

/// Result of iterating `I_{k+1} = ∪_{s ∈ I_k} factors(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrobeniusOrder {
    Finite(usize),
    /// The iteration cycles without entering the exact set.
    Infinite,
}

/// Smallest `n` with `I_n ⊆ exact`, starting from `I_0 = simples`.
pub fn frobenius_order_abstract<T: Ord + Clone>(
    simples: &BTreeSet<T>,
    factors: impl Fn(&T) -> BTreeSet<T>,
    exact: &BTreeSet<T>,
) -> FrobeniusOrder {
    let mut seen = Vec::new();
    let mut current = simples.clone();
    for n in 0.. {
        if current.is_subset(exact) {
            return FrobeniusOrder::Finite(n);
        }
        if seen.contains(&current) {
            return FrobeniusOrder::Infinite;
        }
        let next = current.iter().flat_map(&factors).collect();
        seen.push(std::mem::replace(&mut current, next));
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::repcat::GroupSpec;
    use std::collections::BTreeMap;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn block(p: u32, m: usize) -> GroupRep {
        GroupRep::cyclic_block(f(p), m).unwrap()
    }

    #[test]
    fn component_examples() {
        let img = frobenius_components(&block(3, 2)).unwrap();
        assert_eq!(img.f_dims(), vec![2, 0]);
        for p in [2u32, 3, 5] {
            let img = frobenius_components(&GroupRep::trivial(GroupSpec::cyclic(p), f(p))).unwrap();
            assert_eq!(img.f(1), &GroupRep::trivial(GroupSpec::cyclic(p), f(p)));
            assert!(img.f[1..].iter().all(|r| r.dim() == 0));
        }
        let img = frobenius_components(&block(2, 2)).unwrap();
        assert_eq!(img.f(1).decompose_cyclic().unwrap().parts(), &[2]);
        assert!(img.f(1).validate().is_empty());
    }

    #[test]
    fn lemma_dims_on_components() {
        for (p, m) in [(3u32, 2usize), (5, 2), (5, 4), (3, 3)] {
            let img = frobenius_components(&block(p, m)).unwrap();
            let n = p as usize;
            for i in 1..n {
                let v = crate::nilmod::multiplicity_vector(n, i).unwrap();
                let expect: usize = v.iter().zip(img.f_dims()).map(|(a, b)| a * b).sum();
                assert_eq!(img.g(i).dim(), expect);
            }
        }
    }

    #[test]
    fn morphism_examples() {
        let j2 = block(2, 2);
        let id = PrimeMatrix::identity(f(2), 2);
        let m = frobenius_on_morphism(&j2, &j2, &id).unwrap();
        assert!(m.f[0].is_identity());
        let zero = PrimeMatrix::zeros(f(2), 2, 2);
        assert!(frobenius_on_morphism(&j2, &j2, &zero).unwrap().f[0].is_zero());
        // socle inclusion J_1 -> J_2
        let j1 = block(2, 1);
        let incl = PrimeMatrix::from_rows(f(2), &[vec![0], vec![1]]).unwrap();
        let m = frobenius_on_morphism(&j1, &j2, &incl).unwrap();
        let target = frobenius_components(&j2).unwrap();
        assert_eq!(m.f[0].rank(), 1);
        let image = m.f[0].column(0);
        // the image is fixed by the generator: it spans the socle of F_1(J_2)
        assert_eq!(target.f(1).generator(0).mul_vec(&image), image);
        let bad = PrimeMatrix::from_rows(f(2), &[vec![1], vec![0]]).unwrap();
        assert!(matches!(frobenius_on_morphism(&j1, &j2, &bad), Err(Error::NotIntertwiner(_))));
    }

    #[test]
    fn additivity_and_monoidality_examples() {
        let triv = GroupRep::trivial(GroupSpec::cyclic(3), f(3));
        let r = check_additivity(&triv, &triv).unwrap();
        assert!(r.ok());
        assert_eq!(r.components[0].left_dim, 2);
        assert!(check_additivity(&block(2, 1), &block(2, 2)).unwrap().ok());
        assert!(check_additivity(&block(3, 1), &block(3, 2)).unwrap().ok());
        let r = check_monoidality(&block(2, 2), &block(2, 2)).unwrap();
        assert!(r.ok());
        assert_eq!(r.components[0].left_type.parts(), &[2, 2]);
        assert!(check_monoidality(&block(3, 2), &block(3, 2)).unwrap().ok());
        assert!(check_monoidality(&block(3, 2), &triv).unwrap().ok());
    }

    #[test]
    fn fpdim_examples() {
        let r = fpdim_of_f(&block(3, 2)).unwrap();
        assert!(r.preserved() && r.bounded());
        assert_eq!(r.dim, 2);
        let r = fpdim_of_f(&GroupRep::trivial(GroupSpec::cyclic(5), f(5))).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn abstract_orders() {
        let all: BTreeSet<&str> = ["a", "b", "c"].into();
        assert_eq!(frobenius_order_abstract(&all, |s| BTreeSet::from([*s]), &all), FrobeniusOrder::Finite(0));
        let map: BTreeMap<&str, &str> = [("a", "b"), ("b", "c"), ("c", "c")].into();
        let exact = BTreeSet::from(["c"]);
        assert_eq!(
            frobenius_order_abstract(&all, |s| BTreeSet::from([map[s]]), &exact),
            FrobeniusOrder::Finite(2)
        );
        let one = BTreeSet::from([0u8]);
        assert_eq!(frobenius_order_abstract(&one, |s| BTreeSet::from([*s]), &one), FrobeniusOrder::Finite(0));
        let swap: BTreeSet<u8> = [0, 1].into();
        assert_eq!(
            frobenius_order_abstract(&swap, |s| BTreeSet::from([1 - s]), &BTreeSet::new()),
            FrobeniusOrder::Infinite
        );
    }
}
