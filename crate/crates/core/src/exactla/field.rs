use crate::error::{Error, Result};

/// Trial division up to the square root.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p. Residues are stored as `u32` in `[0, p)`.
///
/// `p` is restricted to `p < 2^16` so that `a + b * c` never overflows a
/// `u32` for reduced operands; the elimination kernels rely on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 16 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Binomial coefficients `C(j, k) mod p` for `0 <= j, k < size`.
    pub fn binomial_table(self, size: usize) -> Vec<Vec<u32>> {
        let mut table = vec![vec![0u32; size]; size];
        for j in 0..size {
            table[j][0] = 1 % self.p;
            for k in 1..=j {
                table[j][k] = self.add(table[j - 1][k - 1], if k < j { table[j - 1][k] } else { 0 });
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u32> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert_eq!(Fp::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Fp::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11, 101] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn binomials_mod_p() {
        let f = Fp::new(5).unwrap();
        let t = f.binomial_table(5);
        assert_eq!(t[4], vec![1, 4, 1, 4, 1]);
        assert_eq!(t[3][1], 3);
    }
}
