//! Reference implementations used as oracles. They share no code with the
//! library: plain `Vec<Vec<u64>>` matrices and textbook elimination.
#![allow(dead_code)]

pub type Mat = Vec<Vec<u64>>;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over F_p by Gaussian elimination.
pub fn rank(m: &Mat, p: u64) -> usize {
    let mut a: Mat = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pivot);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t] % p;
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + x * b[t][j]) % p;
            }
        }
    }
    out
}

pub fn power(a: &Mat, e: usize, p: u64) -> Mat {
    (0..e).fold(identity(a.len()), |acc, _| mul(&acc, a, p))
}

/// Nilpotent Jordan block of size `m` (ones below the diagonal).
pub fn nilpotent_block(m: usize) -> Mat {
    (0..m).map(|i| (0..m).map(|j| u64::from(i == j + 1)).collect()).collect()
}

/// Ranks of `D^0, D^1, ..., D^n`.
pub fn rank_sequence(d: &Mat, n: usize, p: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = identity(d.len());
    for _ in 0..=n {
        out.push(rank(&acc, p));
        acc = mul(&acc, d, p);
    }
    out
}

/// Number of Jordan blocks of size `j` read off ranks of powers.
pub fn block_count(ranks: &[usize], j: usize) -> usize {
    let r = |k: usize| ranks.get(k).copied().unwrap_or(0) as i64;
    (r(j - 1) - 2 * r(j) + r(j + 1)) as usize
}

/// Multiplicity of `L_t` in `L_r ⊗ L_s` in the Verlinde category of
/// `SU(2)` at level `p - 2`, from the modular S-matrix.
pub fn verlinde_multiplicity(p: usize, r: usize, s: usize, t: usize) -> u64 {
    use std::f64::consts::PI;
    let pf = p as f64;
    let sm = |a: usize, k: usize| (2.0 / pf).sqrt() * (PI * a as f64 * k as f64 / pf).sin();
    let value: f64 = (1..p).map(|k| sm(r, k) * sm(s, k) * sm(t, k) / sm(1, k)).sum();
    let rounded = value.round();
    assert!((value - rounded).abs() < 1e-6, "non-integral Verlinde coefficient {value}");
    rounded as u64
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
