use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finitely presented group. Generators are the letters `a`, `b`, ...;
/// uppercase letters are inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub generators: usize,
    pub relations: Vec<String>,
    /// Word for an element of order `p` generating a Sylow subgroup.
    pub sylow_witness: String,
}

impl GroupSpec {
    pub fn cyclic(p: u32) -> Self {
        GroupSpec {
            name: format!("Z/{p}"),
            generators: 1,
            relations: vec![format!("a^{p}")],
            sylow_witness: "a".into(),
        }
    }

    pub fn elementary_abelian(p: u32) -> Self {
        GroupSpec {
            name: format!("Z/{p}xZ/{p}"),
            generators: 2,
            relations: vec![format!("a^{p}"), format!("b^{p}"), "abAB".into()],
            sylow_witness: "a".into(),
        }
    }

    /// `S_n` on generators `a = (1 2)` and `b = (1 2 ... n)`.
    pub fn symmetric(n: usize) -> Self {
        let mut relations = vec!["a^2".to_string(), format!("b^{n}"), format!("(ab)^{}", n - 1)];
        for j in 2..=n / 2 {
            relations.push(format!("(aB^{j}ab^{j})^2"));
        }
        GroupSpec {
            name: format!("S_{n}"),
            generators: 2,
            relations,
            sylow_witness: "b".into(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.generators == 1
    }

    pub fn parse(&self, word: &str) -> Result<Word> {
        Word::parse(word, self.generators)
    }

    pub fn parsed_relations(&self) -> Result<Vec<Word>> {
        self.relations.iter().map(|r| self.parse(r)).collect()
    }

    pub fn witness(&self) -> Result<Word> {
        self.parse(&self.sylow_witness)
    }

    /// Same presentation, ignoring the display name.
    pub fn same_presentation(&self, other: &GroupSpec) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

/// A group word flattened to letters `(generator, inverted)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(usize, bool)>);

impl Word {
    /// Grammar: `word := term*`, `term := atom ('^' int)?`,
    /// `atom := letter | '(' word ')'`. `"1"` and `""` are the identity.
    pub fn parse(text: &str, generators: usize) -> Result<Word> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars == ['1'] {
            return Ok(Word::default());
        }
        let mut parser = Parser { chars: &chars, pos: 0, generators };
        let word = parser.word()?;
        if parser.pos != chars.len() {
            return Err(Error::Parse(format!("unexpected '{}' in word {text:?}", chars[parser.pos])));
        }
        Ok(word)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, inv)| (g, !inv)).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.0.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.0
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    generators: usize,
}

impl Parser<'_> {
    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ')' {
                break;
            }
            let atom = self.atom()?;
            let term = if self.chars.get(self.pos) == Some(&'^') {
                self.pos += 1;
                atom.pow(self.exponent()?)
            } else {
                atom
            };
            letters.extend(term.0);
        }
        Ok(Word(letters))
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '(' {
            let inner = self.word()?;
            if self.chars.get(self.pos) != Some(&')') {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Parse(format!("unexpected '{c}'")));
        }
        let index = (c.to_ascii_lowercase() as u8 - b'a') as usize;
        if index >= self.generators {
            return Err(Error::Parse(format!(
                "generator '{c}' out of range for {} generators",
                self.generators
            )));
        }
        Ok(Word(vec![(index, c.is_ascii_uppercase())]))
    }

    fn exponent(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))
    }
}

/// Multiply permutations as maps: `(compose(s, g))(x) = s(g(x))`.
pub(crate) fn compose(s: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| s[x]).collect()
}

/// Evaluates a word on permutations of a finite set.
pub fn eval_permutation(word: &Word, gens: &[Vec<usize>], points: usize) -> Vec<usize> {
    let inverses: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let mut inv = vec![0; g.len()];
            for (i, &x) in g.iter().enumerate() {
                inv[x] = i;
            }
            inv
        })
        .collect();
    let mut acc: Vec<usize> = (0..points).collect();
    for &(g, inv) in word.letters() {
        let m = if inv { &inverses[g] } else { &gens[g] };
        // left to right: acc = acc ∘ m
        acc = compose(&acc, m);
    }
    acc
}

/// Standard permutation models: the generators acting on a finite set.
pub fn cyclic_model(p: usize) -> Vec<Vec<usize>> {
    vec![(0..p).map(|x| (x + 1) % p).collect()]
}

pub fn symmetric_model(n: usize) -> Vec<Vec<usize>> {
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    vec![swap, (0..n).map(|x| (x + 1) % n).collect()]
}

pub fn elementary_abelian_model(p: usize) -> Vec<Vec<usize>> {
    let a = (0..2 * p).map(|x| if x < p { (x + 1) % p } else { x }).collect();
    let b = (0..2 * p).map(|x| if x < p { x } else { p + (x - p + 1) % p }).collect();
    vec![a, b]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_words() {
        let w = Word::parse("ab^2A", 2).unwrap();
        assert_eq!(w.letters(), &[(0, false), (1, false), (1, false), (0, true)]);
        assert_eq!(Word::parse("(ab)^-1", 2).unwrap().letters(), &[(1, true), (0, true)]);
        assert!(Word::parse("1", 1).unwrap().letters().is_empty());
        assert!(Word::parse("", 1).unwrap().letters().is_empty());
        assert!(Word::parse("c", 2).is_err());
        assert!(Word::parse("(ab", 2).is_err());
        assert!(Word::parse("a^x", 1).is_err());
    }

    #[test]
    fn symmetric_presentation_holds_on_model() {
        for n in 2..=7 {
            let spec = GroupSpec::symmetric(n);
            let model = symmetric_model(n);
            for rel in spec.parsed_relations().unwrap() {
                let perm = eval_permutation(&rel, &model, n);
                assert!(perm.iter().enumerate().all(|(i, &x)| i == x), "S_{n}: {rel:?}");
            }
        }
    }

    #[test]
    fn other_presentations_hold() {
        for p in [2usize, 3, 5] {
            let spec = GroupSpec::elementary_abelian(p as u32);
            let model = elementary_abelian_model(p);
            for rel in spec.parsed_relations().unwrap() {
                let perm = eval_permutation(&rel, &model, 2 * p);
                assert!(perm.iter().enumerate().all(|(i, &x)| i == x));
            }
            let spec = GroupSpec::cyclic(p as u32);
            let rel = &spec.parsed_relations().unwrap()[0];
            let perm = eval_permutation(rel, &cyclic_model(p), p);
            assert!(perm.iter().enumerate().all(|(i, &x)| i == x));
        }
    }
}
