//! Hilbert series of symmetric algebras and root-test growth diagnostics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::repcat::{GroupRep, SymmetricPowerTower};

/// Largest intermediate space `S^{i-1} X ⊗ X` the tower may build.
const MAX_TOWER_DIM: usize = 4096;

/// Coefficients `d_0, ..., d_T` of a power series.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct TruncSeries {
    pub coeffs: Vec<f64>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| c.is_nan() || *c < 0.0) {
            return Err(Error::InvalidInput("series needs nonnegative coefficients".into()));
        }
        Ok(TruncSeries { coeffs })
    }

    /// Truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Indices `i` with `d_{i+1} > d_1 d_i`.
    pub fn quotient_violations(&self) -> Vec<usize> {
        let d1 = self.coeffs.get(1).copied().unwrap_or(0.0);
        (0..self.order())
            .filter(|&i| self.coeffs[i + 1] > d1 * self.coeffs[i])
            .collect()
    }
}

/// `d_i = dim S^i X` for `i <= terms`.
pub fn hilbert_coeffs(x: &GroupRep, terms: usize) -> Result<TruncSeries> {
    let d = x.dim();
    let top = binomial(terms + d.saturating_sub(1), d.saturating_sub(1));
    let needed = top.saturating_mul(d as u64);
    if needed > MAX_TOWER_DIM as u64 {
        return Err(Error::Budget {
            what: format!("symmetric powers up to degree {terms} of a {d}-dimensional module"),
            required_bytes: needed.saturating_mul(needed).saturating_mul(4),
            budget_bytes: (MAX_TOWER_DIM * MAX_TOWER_DIM * 4) as u64,
        });
    }
    let tower = SymmetricPowerTower::new(x, terms)?;
    TruncSeries::new(tower.dims().into_iter().map(|x| x as f64).collect())
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Polynomial,
    NonPolynomial,
}

/// Root test on the tail `i in [T/2, T]`. The tolerance `1 + 10/T` stands
/// in for "radius of convergence at least 1"; it is a finite-order
/// diagnostic, not a proof.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub verdict: Verdict,
    /// `(i, d_i^{1/i})` over the tail, for nonzero `d_i`.
    pub root_estimates: Vec<(usize, f64)>,
    pub max_root: f64,
    /// `d_T^{1/T}`, or 0 when `d_T = 0`.
    pub final_root: f64,
    pub threshold: f64,
    pub flagged: bool,
}

pub fn growth_check(series: &TruncSeries) -> Result<GrowthReport> {
    let t = series.order();
    if t < 10 {
        return Err(Error::InvalidInput(format!("truncation order {t} is below 10")));
    }
    let tail = t / 2..=t;
    let threshold = 1.0 + 10.0 / t as f64;
    if tail.clone().all(|i| series.coeffs[i] == 0.0) {
        return Ok(GrowthReport {
            verdict: Verdict::Polynomial,
            root_estimates: Vec::new(),
            max_root: 0.0,
            final_root: 0.0,
            threshold,
            flagged: false,
        });
    }
    let root_estimates: Vec<(usize, f64)> = tail
        .filter(|&i| series.coeffs[i] > 0.0)
        .map(|i| (i, series.coeffs[i].powf(1.0 / i as f64)))
        .collect();
    let max_root = root_estimates.iter().map(|e| e.1).fold(0.0, f64::max);
    let final_root = if series.coeffs[t] > 0.0 { series.coeffs[t].powf(1.0 / t as f64) } else { 0.0 };
    Ok(GrowthReport {
        verdict: Verdict::NonPolynomial,
        root_estimates,
        max_root,
        final_root,
        threshold,
        flagged: max_root > threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::nilmod::JordanType;
    use crate::repcat::GroupSpec;

    #[test]
    fn two_dimensional() {
        for p in [2u32, 3, 5] {
            let x = GroupRep::cyclic_block(Fp::new(p).unwrap(), 2).unwrap();
            let s = hilbert_coeffs(&x, 12).unwrap();
            assert_eq!(s.coeffs, (0..=12).map(|i| (i + 1) as f64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn degenerate_modules() {
        let f = Fp::new(3).unwrap();
        let zero = GroupRep::zero(GroupSpec::cyclic(3), f);
        let s = hilbert_coeffs(&zero, 5).unwrap();
        assert_eq!(s.coeffs, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let triv = GroupRep::cyclic_from_jordan(f, &JordanType::new(vec![1])).unwrap();
        assert!(hilbert_coeffs(&triv, 6).unwrap().coeffs.iter().all(|&c| c == 1.0));
    }

    #[test]
    fn growth_examples() {
        let linear = TruncSeries::new((0..=40).map(|i| (i + 1) as f64).collect()).unwrap();
        let r = growth_check(&linear).unwrap();
        assert_eq!(r.verdict, Verdict::NonPolynomial);
        assert!(!r.flagged && r.max_root <= 1.25);
        assert!((r.final_root - 41f64.powf(1.0 / 40.0)).abs() < 1e-12);

        let mut unit = vec![0.0; 41];
        unit[0] = 1.0;
        let r = growth_check(&TruncSeries::new(unit).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Polynomial);

        let expo = TruncSeries::new((0..=40).map(|i| 2f64.powi(i)).collect()).unwrap();
        assert!(growth_check(&expo).unwrap().flagged);
        assert!(growth_check(&TruncSeries::new(vec![1.0; 5]).unwrap()).is_err());
    }

    #[test]
    fn quotient_inequality() {
        let s = TruncSeries::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(s.quotient_violations().is_empty());
        let s = TruncSeries::new(vec![1.0, 2.0, 5.0]).unwrap();
        assert_eq!(s.quotient_violations(), vec![1]);
    }
}
