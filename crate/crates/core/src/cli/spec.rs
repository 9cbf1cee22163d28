use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nilmod::JordanType;

/// A `Z/p`-module written as a sum of Jordan blocks, e.g. `J3 + 2*J5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    pub jordan: JordanType,
}

impl ModuleSpec {
    /// Rejects blocks larger than `p`.
    pub fn for_prime(&self, p: u32) -> Result<JordanType> {
        if self.jordan.max_part() > p as usize {
            return Err(Error::Parse(format!(
                "block J{} does not exist for p = {p}",
                self.jordan.max_part()
            )));
        }
        Ok(self.jordan.clone())
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("module spec {text:?}: {msg}"));
        let mut parts = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let (count, block) = match term.split_once('*') {
                Some((c, b)) => {
                    let c = c.trim().parse::<usize>().map_err(|_| bad(format!("bad multiplicity in {term:?}")))?;
                    (c, b.trim())
                }
                None => (1, term),
            };
            let size = block
                .strip_prefix('J')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| bad(format!("expected J<k> with k >= 1, got {block:?}")))?;
            parts.extend(std::iter::repeat_n(size, count));
        }
        Ok(ModuleSpec { jordan: JordanType::new(parts) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sums_with_multiplicities() {
        let spec: ModuleSpec = "J3 + 2*J5".parse().unwrap();
        assert_eq!(spec.jordan.parts(), &[5, 5, 3]);
        let other: ModuleSpec = "2 * J5+J3".parse().unwrap();
        assert_eq!(spec, other);
        assert_eq!("0*J2".parse::<ModuleSpec>().unwrap().jordan.dim(), 0);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "J", "J0", "K3", "J3 +", "x*J2", "J2 J3"] {
            assert!(bad.parse::<ModuleSpec>().is_err(), "{bad}");
        }
        let spec: ModuleSpec = "J4".parse().unwrap();
        assert!(spec.for_prime(3).is_err());
        assert!(spec.for_prime(5).is_ok());
    }
}
