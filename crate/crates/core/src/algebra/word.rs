use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator `a_k` of the alphabet.
///
/// Index 0 stands for the algebra unit `1_A` when letters index a basis; the
/// moment tables in this crate only use letters `a1..ak`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .strip_prefix('a')
            .ok_or_else(|| Error::Parse(format!("letter `{s}` must look like a<k>")))?;
        digits
            .parse::<u32>()
            .map(Letter)
            .map_err(|_| Error::Parse(format!("letter `{s}` has a bad index")))
    }
}

/// A word `a_{i1}⋯a_{in}` in the tensor algebra; the empty word is the unit.
///
/// Words are ordered by degree first and then lexicographically by letter
/// index, which is also the canonical order of commutative bar-monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        Word(indices.iter().copied().map(Letter).collect())
    }

    /// The word `a_1 a_2 ⋯ a_n` with pairwise distinct letters.
    pub fn generic(n: usize) -> Self {
        Word((1..=n as u32).map(Letter).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `a_S`: the letters at the 1-based positions of `subset`, in increasing
    /// position order. `a_∅` is the unit.
    pub fn subword(&self, subset: &[usize]) -> Result<Word> {
        let mut positions = subset.to_vec();
        positions.sort_unstable();
        positions.dedup();
        let mut letters = Vec::with_capacity(positions.len());
        for &p in &positions {
            if p == 0 || p > self.degree() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    degree: self.degree(),
                });
            }
            letters.push(self.0[p - 1]);
        }
        Ok(Word(letters))
    }

    /// Subword on already validated, increasing 1-based positions.
    pub(crate) fn select(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p - 1]).collect())
    }

    /// Replaces every letter `a_i` by the letter `self[i]`; used to specialise
    /// computations done on the generic word `a_1⋯a_n`.
    pub(crate) fn substitute(&self, generic: &Word) -> Word {
        Word(
            generic
                .0
                .iter()
                .map(|l| self.0[l.0 as usize - 1])
                .collect(),
        )
    }

    /// The same letters in non-decreasing index order.
    pub fn sorted(&self) -> Word {
        let mut letters = self.0.clone();
        letters.sort();
        Word(letters)
    }

    /// All words of exactly `degree` letters over `a1..a{letters}`, in
    /// lexicographic order.
    pub fn all_of_degree(letters: u32, degree: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        for _ in 0..degree {
            let mut next = Vec::with_capacity(out.len() * letters as usize);
            for w in &out {
                for l in 1..=letters {
                    let mut v = w.0.clone();
                    v.push(Letter(l));
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }

    /// All non-empty words of degree at most `max_degree`.
    pub fn all_up_to(letters: u32, max_degree: usize) -> Vec<Word> {
        (1..=max_degree)
            .flat_map(|d| Word::all_of_degree(letters, d))
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `1`, `a1.a2.a3` and the juxtaposed form `a1a2a3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::unit());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word; write `1` for the unit".into()));
        }
        let mut letters = Vec::new();
        for chunk in s.split('.') {
            let chunk = chunk.trim();
            if chunk.is_empty() || !chunk.starts_with('a') {
                return Err(Error::Parse(format!("malformed word `{s}`")));
            }
            for piece in chunk.split('a').skip(1) {
                letters.push(format!("a{piece}").parse::<Letter>()?);
            }
        }
        Ok(Word(letters))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}
