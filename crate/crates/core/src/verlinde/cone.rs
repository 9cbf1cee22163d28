use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::is_prime;

use super::fpdim_simple;

/// Real weights `a_1, ..., a_{p-1}`, with `a_0 = a_p = 0` implied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub p: u32,
    pub a: Vec<f64>,
}

impl WeightVector {
    pub fn new(p: u32, a: Vec<f64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a.len() != p as usize - 1 {
            return Err(Error::DimensionMismatch(format!("{} weights for p = {p}", a.len())));
        }
        Ok(WeightVector { p, a })
    }

    /// `a_j` for `0 <= j <= p`.
    pub fn at(&self, j: usize) -> f64 {
        if j == 0 || j == self.p as usize {
            0.0
        } else {
            self.a[j - 1]
        }
    }

    fn tolerance(&self) -> f64 {
        1e-12 * self.a.iter().fold(1.0f64, |m, x| m.max(x.abs()))
    }

    pub fn is_symmetric(&self) -> bool {
        let tol = self.tolerance();
        let n = self.a.len();
        (0..n).all(|i| (self.a[i] - self.a[n - 1 - i]).abs() <= tol)
    }

    /// Consecutive differences `a_{m+1} - a_m` are non-increasing.
    pub fn is_concave(&self) -> bool {
        let tol = self.tolerance();
        let p = self.p as usize;
        (1..p).all(|m| 2.0 * self.at(m) - self.at(m - 1) - self.at(m + 1) >= -tol)
    }
}

/// Coefficients `x_1, ..., x_h` (`h = ⌊p/2⌋`) with `a = Σ x_i v_i`, where
/// `v_i` has entries `min(i, j, p - i, p - j)`. With `s_j = a_j - a_{j-1}`,
/// `x_j = s_j - s_{j+1}` for `j < h` and `x_h = s_h`.
pub fn concave_weights_to_cone(w: &WeightVector) -> Result<Vec<f64>> {
    if !w.is_symmetric() {
        return Err(Error::InvalidInput("weights are not symmetric".into()));
    }
    if !w.is_concave() {
        return Err(Error::InvalidInput("weights are not concave".into()));
    }
    let h = w.p as usize / 2;
    let s = |j: usize| w.at(j) - w.at(j - 1);
    Ok((1..=h).map(|j| if j < h { s(j) - s(j + 1) } else { s(h) }).collect())
}

/// `Σ x_i v_i` as a vector of length `p - 1`.
pub fn reconstruct(p: u32, x: &[f64]) -> Vec<f64> {
    let p = p as usize;
    (1..p)
        .map(|j| {
            x.iter()
                .enumerate()
                .map(|(k, &xi)| {
                    let i = k + 1;
                    xi * i.min(j).min(p - i).min(p - j) as f64
                })
                .sum()
        })
        .collect()
}

/// `a_j = sin(π j / p) / sin(π / p)`.
pub fn verlinde_weights(p: u32) -> Result<WeightVector> {
    WeightVector::new(p, (1..p as usize).map(|j| fpdim_simple(p, j)).collect())
}

/// Proportionality of the cone coordinates of the Verlinde weights to
/// `sin(π j / p)`, against the two candidate constants `tan(π/2p)` and
/// `2 tan(π/2p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeConstant {
    pub p: u32,
    pub x: Vec<f64>,
    /// `x_j / sin(π j / p)`.
    pub ratios: Vec<f64>,
    pub max_deviation: f64,
    pub tan_half: f64,
    pub twice_tan_half: f64,
}

impl ConeConstant {
    pub fn constant(&self) -> f64 {
        self.ratios.first().copied().unwrap_or(f64::NAN)
    }

    pub fn proportional(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

pub fn cone_constant(p: u32) -> Result<ConeConstant> {
    let x = concave_weights_to_cone(&verlinde_weights(p)?)?;
    let pf = f64::from(p);
    let ratios: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(k, xi)| xi / (PI * (k + 1) as f64 / pf).sin())
        .collect();
    let first = ratios[0];
    let max_deviation = ratios.iter().map(|r| (r - first).abs()).fold(0.0, f64::max);
    let tan_half = (PI / (2.0 * pf)).tan();
    Ok(ConeConstant {
        p,
        x,
        ratios,
        max_deviation,
        tan_half,
        twice_tan_half: 2.0 * tan_half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_golden() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let w = WeightVector::new(5, vec![1.0, phi, phi, 1.0]).unwrap();
        let x = concave_weights_to_cone(&w).unwrap();
        assert!((x[0] - (2.0 - phi)).abs() < 1e-12);
        assert!((x[1] - (phi - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn small_primes() {
        // p = 2: v_1 = (1), so reconstruction forces x_1 = a_1.
        let x = concave_weights_to_cone(&WeightVector::new(2, vec![1.0]).unwrap()).unwrap();
        assert_eq!(x, vec![1.0]);
        assert_eq!(reconstruct(2, &x), vec![1.0]);
        let x = concave_weights_to_cone(&WeightVector::new(3, vec![1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(x, vec![1.0]);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(concave_weights_to_cone(&WeightVector::new(5, vec![1.0, 2.0, 1.5, 1.0]).unwrap()).is_err());
        assert!(concave_weights_to_cone(&WeightVector::new(5, vec![1.0, 0.5, 0.5, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn verlinde_examples() {
        assert_eq!(verlinde_weights(2).unwrap().a, vec![1.0]);
        let w3 = verlinde_weights(3).unwrap();
        assert!(w3.a.iter().all(|x| (x - 1.0).abs() < 1e-12));
        let c = cone_constant(7).unwrap();
        assert!(c.proportional(1e-9));
        assert!((c.constant() - c.twice_tan_half).abs() < 1e-9);
    }
}
