use std::fmt;

use super::word::Word;
use crate::error::{Error, Result};

/// Which algebra over non-empty words a bar-monomial lives in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Flavor {
    /// `T(T⁺(A))`, product `⊤` (concatenation of word sequences).
    Ordered,
    /// `S(T⁺(A))`, the commutative `|` product.
    Commutative,
}

/// A product `w_1|⋯|w_n` of non-empty words.
///
/// The empty sequence is the unit `𝟏`. In the commutative flavor the words
/// are kept sorted (degree, then letters), so structural equality is
/// equality in `S(T⁺(A))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bar {
    words: Vec<Word>,
    flavor: Flavor,
}

impl Bar {
    /// Builds a bar-monomial; empty words are dropped (they are the unit).
    pub fn new(words: Vec<Word>, flavor: Flavor) -> Self {
        let mut words: Vec<Word> = words.into_iter().filter(|w| !w.is_unit()).collect();
        if flavor == Flavor::Commutative {
            words.sort();
        }
        Bar { words, flavor }
    }

    pub fn unit(flavor: Flavor) -> Self {
        Bar {
            words: Vec::new(),
            flavor,
        }
    }

    /// The generator `w` (or the unit when `w` is empty).
    pub fn word(w: Word, flavor: Flavor) -> Self {
        if w.is_unit() {
            Bar::unit(flavor)
        } else {
            Bar {
                words: vec![w],
                flavor,
            }
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Number of word factors `‖w_1|⋯|w_n‖`.
    pub fn length(&self) -> usize {
        self.words.len()
    }

    pub fn degree(&self) -> usize {
        self.words.iter().map(Word::degree).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.words.is_empty()
    }

    /// The single word of a length-one bar.
    pub fn as_word(&self) -> Option<&Word> {
        match self.words.as_slice() {
            [w] => Some(w),
            _ => None,
        }
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Bar {
        if flavor == self.flavor {
            self.clone()
        } else {
            Bar::new(self.words.clone(), flavor)
        }
    }

    /// Bar product: concatenation (ordered) or merge (commutative).
    pub fn mul(&self, other: &Bar) -> Result<Bar> {
        if self.flavor != other.flavor {
            return Err(Error::MixedFlavor);
        }
        Ok(self.mul_same(other))
    }

    pub(crate) fn mul_same(&self, other: &Bar) -> Bar {
        debug_assert_eq!(self.flavor, other.flavor);
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let mut words = Vec::with_capacity(self.words.len() + other.words.len());
        match self.flavor {
            Flavor::Ordered => {
                words.extend_from_slice(&self.words);
                words.extend_from_slice(&other.words);
            }
            Flavor::Commutative => {
                let (mut i, mut j) = (0, 0);
                while i < self.words.len() && j < other.words.len() {
                    if self.words[i] <= other.words[j] {
                        words.push(self.words[i].clone());
                        i += 1;
                    } else {
                        words.push(other.words[j].clone());
                        j += 1;
                    }
                }
                words.extend_from_slice(&self.words[i..]);
                words.extend_from_slice(&other.words[j..]);
            }
        }
        Bar {
            words,
            flavor: self.flavor,
        }
    }

    /// Applies a letter substitution to every word.
    pub(crate) fn substitute(&self, target: &Word) -> Bar {
        Bar::new(
            self.words.iter().map(|g| target.substitute(g)).collect(),
            self.flavor,
        )
    }

    /// Parses `1`, `w1|w2|⋯` or `[w1|w2|⋯]`; brackets are optional.
    pub fn parse(s: &str, flavor: Flavor) -> Result<Bar> {
        let s = s.trim();
        let inner = match (s.strip_prefix('['), s.ends_with(']')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => s,
            _ => return Err(Error::Parse(format!("unbalanced brackets in `{s}`"))),
        };
        if inner.trim() == "1" {
            return Ok(Bar::unit(flavor));
        }
        let words = inner
            .split('|')
            .map(|p| p.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        if words.iter().any(Word::is_unit) {
            return Err(Error::Parse(format!(
                "`{s}`: the unit cannot appear inside a bar-monomial"
            )));
        }
        Ok(Bar::new(words, flavor))
    }

    /// All bar-monomials of degree `1..=max_degree` over `letters` letters.
    pub fn all_up_to(letters: u32, max_degree: usize, flavor: Flavor) -> Vec<Bar> {
        let words_by_degree: Vec<Vec<Word>> = (0..=max_degree)
            .map(|d| Word::all_of_degree(letters, d))
            .collect();
        let mut out = Vec::new();
        for d in 1..=max_degree {
            let mut level = Vec::new();
            for composition in compositions(d) {
                let mut partial: Vec<Vec<Word>> = vec![Vec::new()];
                for &part in &composition {
                    let mut next = Vec::new();
                    for prefix in &partial {
                        for w in &words_by_degree[part] {
                            let mut v = prefix.clone();
                            v.push(w.clone());
                            next.push(v);
                        }
                    }
                    partial = next;
                }
                level.extend(partial.into_iter().map(|ws| Bar::new(ws, flavor)));
            }
            if flavor == Flavor::Commutative {
                level.sort();
                level.dedup();
            }
            out.extend(level);
        }
        out
    }
}

/// Compositions of `n` (ordered sequences of positive parts summing to `n`).
pub(crate) fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..1usize << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let body = self
            .words
            .iter()
            .map(Word::to_string)
            .collect::<Vec<_>>()
            .join("|");
        match self.flavor {
            Flavor::Ordered => write!(f, "[{body}]"),
            Flavor::Commutative => f.write_str(&body),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Bar {
        Bar::parse(s, Flavor::Commutative).unwrap()
    }

    fn o(s: &str) -> Bar {
        Bar::parse(s, Flavor::Ordered).unwrap()
    }

    #[test]
    fn commutative_product_canonicalizes() {
        let x = c("a1|a3");
        let y = c("a2");
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.to_string(), "a1|a2|a3");
        assert_eq!(xy, y.mul(&x).unwrap());
        assert_eq!(xy.length(), 3);
        assert_eq!(xy.degree(), 3);
    }

    #[test]
    fn ordered_product_is_not_commutative() {
        let ab = o("a2").mul(&o("a1")).unwrap();
        assert_eq!(ab, o("[a2|a1]"));
        assert_ne!(ab, o("[a1|a2]"));
    }

    #[test]
    fn unit_law_and_mixed_flavor() {
        let x = c("a1.a2|a3");
        assert_eq!(x.mul(&Bar::unit(Flavor::Commutative)).unwrap(), x);
        assert_eq!(x.mul(&o("a1")), Err(Error::MixedFlavor));
    }

    #[test]
    fn parse_rejects_units_inside() {
        assert!(Bar::parse("a1|1", Flavor::Ordered).is_err());
        assert!(Bar::parse("[a1|a2", Flavor::Ordered).is_err());
        assert!(Bar::parse("1", Flavor::Ordered).unwrap().is_unit());
    }

    #[test]
    fn enumeration_sizes() {
        // ordered: 2^d words per composition, 2^{d-1} compositions
        assert_eq!(Bar::all_up_to(2, 3, Flavor::Ordered).len(), 2 + 8 + 32);
        // commutative degree 2 over 2 letters: 4 words + 3 products of letters
        assert_eq!(Bar::all_up_to(2, 2, Flavor::Commutative).len(), 2 + 7);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(1), vec![vec![1]]);
    }
}
