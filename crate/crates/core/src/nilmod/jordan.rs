use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Partition of block sizes of a nilpotent operator, weakly decreasing.
/// Serializes as a plain integer array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct JordanType(Vec<usize>);

impl From<Vec<usize>> for JordanType {
    fn from(parts: Vec<usize>) -> Self {
        JordanType::new(parts)
    }
}

impl From<JordanType> for Vec<usize> {
    fn from(t: JordanType) -> Self {
        t.0
    }
}

impl JordanType {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanType(parts)
    }

    /// `mult[j - 1]` copies of `j`.
    pub fn from_multiplicities(mult: &[usize]) -> Self {
        let parts = mult
            .iter()
            .enumerate()
            .flat_map(|(j, &m)| std::iter::repeat_n(j + 1, m))
            .collect();
        Self::new(parts)
    }

    /// Recovers the partition from `ranks[j] = rank(D^j)`, `ranks[0] = dim`.
    /// The number of blocks of size `j` is `r_{j-1} - 2 r_j + r_{j+1}`.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let r = |j: usize| ranks.get(j).copied().unwrap_or(0) as i64;
        if ranks.last().copied().unwrap_or(0) != 0 {
            return Err(Error::InvalidInput("rank sequence does not reach zero".into()));
        }
        let mut mult = Vec::new();
        for j in 1..ranks.len() {
            let m = r(j - 1) - 2 * r(j) + r(j + 1);
            if m < 0 {
                return Err(Error::InvalidInput(format!("negative block multiplicity at size {j}")));
            }
            mult.push(m as usize);
        }
        Ok(Self::from_multiplicities(&mult))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn max_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.0.iter().filter(|&&x| x == size).count()
    }

    /// Multiset union.
    pub fn union(&self, other: &JordanType) -> JordanType {
        JordanType::new(self.0.iter().chain(&other.0).copied().collect())
    }

    /// `rank(D^j) = sum over blocks of max(part - j, 0)`.
    pub fn rank_of_power(&self, j: usize) -> usize {
        self.0.iter().map(|&x| x.saturating_sub(j)).sum()
    }

    pub fn is_free(&self, p: usize) -> bool {
        self.0.iter().all(|&x| x == p)
    }

    /// Blocks that are not of size `p`.
    pub fn without_free(&self, p: usize) -> JordanType {
        JordanType(self.0.iter().copied().filter(|&x| x != p).collect())
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `total` with parts at most `max_part`, in reverse
/// lexicographic order.
pub fn partitions(total: usize, max_part: usize) -> Vec<JordanType> {
    fn go(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<JordanType>) {
        if rest == 0 {
            out.push(JordanType(prefix.clone()));
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_round_trip() {
        let t = JordanType::new(vec![1, 3, 3, 2]);
        assert_eq!(t.parts(), &[3, 3, 2, 1]);
        let ranks: Vec<usize> = (0..=4).map(|j| t.rank_of_power(j)).collect();
        assert_eq!(JordanType::from_ranks(&ranks).unwrap(), t);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(5, 2).len(), 3);
    }

    #[test]
    fn serializes_as_array() {
        let t = JordanType::new(vec![2, 3]);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[3,2]");
        let back: JordanType = serde_json::from_str("[1,4]").unwrap();
        assert_eq!(back.parts(), &[4, 1]);
    }
}
