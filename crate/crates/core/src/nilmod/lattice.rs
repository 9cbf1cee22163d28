use std::fmt;

use crate::error::{Error, Result};

/// Expression in the lattice generated by `Ker D^a` and `Im D^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lattice {
    Ker(usize),
    Im(usize),
    Meet(Box<Lattice>, Box<Lattice>),
    Join(Box<Lattice>, Box<Lattice>),
}

impl Lattice {
    pub fn meet(self, other: Lattice) -> Lattice {
        Lattice::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Lattice) -> Lattice {
        Lattice::Join(Box::new(self), Box::new(other))
    }

    /// Whether position `k` of a Jordan chain of length `len` lies in the
    /// subspace. Chains are `b, Db, ..., D^{len-1} b`; `D^k b` is in
    /// `Ker D^a` iff `k + a >= len` and in `Im D^b` iff `k >= b`.
    pub fn contains_position(&self, len: usize, k: usize) -> bool {
        match self {
            Lattice::Ker(a) => k + a >= len,
            Lattice::Im(b) => k >= *b,
            Lattice::Meet(x, y) => x.contains_position(len, k) && y.contains_position(len, k),
            Lattice::Join(x, y) => x.contains_position(len, k) || y.contains_position(len, k),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lattice::Ker(a) => write!(f, "Ker{a}"),
            Lattice::Im(b) => write!(f, "Im{b}"),
            Lattice::Meet(x, y) => write!(f, "({x} & {y})"),
            Lattice::Join(x, y) => write!(f, "({x} + {y})"),
        }
    }
}

/// A subquotient `num / den` described by lattice expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubquotientSpec {
    pub num: Lattice,
    pub den: Lattice,
}

impl SubquotientSpec {
    pub fn new(num: Lattice, den: Lattice) -> Self {
        SubquotientSpec { num, den }
    }

    /// `B_i = (Ker D ∩ Im D^{i-1}) / (Ker D ∩ Im D^i)`, for `1 <= i <= n - 1`.
    pub fn b(n: usize, i: usize) -> Result<Self> {
        check_range("i", i, 1, n.saturating_sub(1))?;
        Ok(Self::new(
            Lattice::Ker(1).meet(Lattice::Im(i - 1)),
            Lattice::Ker(1).meet(Lattice::Im(i)),
        ))
    }

    /// `E_i = Ker D^i / Im D^{n-i}`, for `1 <= i <= n - 1`.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        check_range("i", i, 1, n.saturating_sub(1))?;
        Ok(Self::new(Lattice::Ker(i), Lattice::Im(n - i)))
    }

    /// `L_{i,j} = (Ker D ∩ Im D^i) / (Ker D ∩ Im D^j)`, for `0 <= i < j <= n - 1`.
    pub fn l(n: usize, i: usize, j: usize) -> Result<Self> {
        check_range("j", j, 1, n.saturating_sub(1))?;
        check_range("i", i, 0, j - 1)?;
        Ok(Self::new(
            Lattice::Ker(1).meet(Lattice::Im(i)),
            Lattice::Ker(1).meet(Lattice::Im(j)),
        ))
    }

    /// `E_{i,s} = (Ker D^s ∩ Im D^{i-s}) / Im D^{n-s}`, for `0 <= s <= i <= n - 1`.
    /// `E_{i,0}` is zero and `E_{i,i} = E_i`.
    pub fn e_is(n: usize, i: usize, s: usize) -> Result<Self> {
        check_range("i", i, 1, n.saturating_sub(1))?;
        check_range("s", s, 0, i)?;
        if s == 0 {
            return Ok(Self::new(Lattice::Ker(0), Lattice::Ker(0)));
        }
        Ok(Self::new(
            Lattice::Ker(s).meet(Lattice::Im(i - s)),
            Lattice::Im(n - s),
        ))
    }

    /// `Ker D^j / ((Ker D^j ∩ Im D) + Ker D^{j-1})`, the space of
    /// homomorphisms from the Jordan block of size `j` modulo those
    /// factoring through larger blocks, for `1 <= j <= n - 1`.
    pub fn hom_quotient(n: usize, j: usize) -> Result<Self> {
        check_range("j", j, 1, n.saturating_sub(1))?;
        Ok(Self::new(
            Lattice::Ker(j),
            Lattice::Ker(j).meet(Lattice::Im(1)).join(Lattice::Ker(j - 1)),
        ))
    }
}

fn check_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::IndexOutOfRange {
            index: value,
            range: format!("{name} in [{lo}, {hi}]"),
        });
    }
    Ok(())
}

/// Jordan chain bookkeeping for a module given in Jordan coordinates:
/// chain `c` occupies positions `offsets[c] .. offsets[c] + lens[c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanFrame {
    lens: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl JordanFrame {
    pub fn new(lens: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(lens.len());
        let mut total = 0;
        for &l in &lens {
            offsets.push(total);
            total += l;
        }
        JordanFrame { lens, offsets, total }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn chain_lens(&self) -> &[usize] {
        &self.lens
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Positions lying in the subspace.
    pub fn mask(&self, expr: &Lattice) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.total);
        for &len in &self.lens {
            out.extend((0..len).map(|k| expr.contains_position(len, k)));
        }
        out
    }

    pub fn subquotient(&self, spec: &SubquotientSpec) -> Result<CoordinateSubquotient> {
        let num = self.mask(&spec.num);
        let den = self.mask(&spec.den);
        if den.iter().zip(&num).any(|(&d, &n)| d && !n) {
            return Err(Error::Containment(format!("{} is not inside {}", spec.den, spec.num)));
        }
        let positions = (0..self.total).filter(|&g| num[g] && !den[g]).collect();
        Ok(CoordinateSubquotient { num, positions })
    }
}

/// A subquotient spanned by coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateSubquotient {
    num: Vec<bool>,
    positions: Vec<usize>,
}

impl CoordinateSubquotient {
    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    /// Global coordinates that represent a basis of the quotient.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn in_numerator(&self, coords: &[u32]) -> bool {
        coords.iter().zip(&self.num).all(|(&c, &inside)| inside || c == 0)
    }

    /// Class of a numerator element in the quotient basis.
    pub fn class_coords(&self, coords: &[u32]) -> Result<Vec<u32>> {
        if coords.len() != self.num.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a frame of dimension {}",
                coords.len(),
                self.num.len()
            )));
        }
        if !self.in_numerator(coords) {
            return Err(Error::Containment("vector outside the numerator".into()));
        }
        Ok(self.positions.iter().map(|&g| coords[g]).collect())
    }
}
