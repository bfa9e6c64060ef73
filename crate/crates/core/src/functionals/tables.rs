use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use crate::algebra::{rat, Rational, Word};
use crate::error::{Error, Result};

/// Values on the non-empty words of degree `≤ max_degree` over `a1..ak`.
/// Absent words are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
struct WordTable {
    letters: u32,
    max_degree: usize,
    values: BTreeMap<Word, Rational>,
}

impl WordTable {
    fn new(
        letters: u32,
        max_degree: usize,
        entries: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (w, v) in entries {
            if w.is_unit() {
                return Err(Error::Parse("the unit word must not appear in a table".into()));
            }
            Self::check_word(letters, max_degree, &w)?;
            if !v.is_zero() {
                values.insert(w, v);
            }
        }
        Ok(WordTable {
            letters,
            max_degree,
            values,
        })
    }

    fn check_word(letters: u32, max_degree: usize, w: &Word) -> Result<()> {
        if w.degree() > max_degree {
            return Err(Error::DegreeExceeded {
                degree: w.degree(),
                max: max_degree,
            });
        }
        if let Some(l) = w.letters().iter().find(|l| l.0 == 0 || l.0 > letters) {
            return Err(Error::UnknownLetter(l.to_string()));
        }
        Ok(())
    }

    fn get(&self, w: &Word) -> Result<Rational> {
        Self::check_word(self.letters, self.max_degree, w)?;
        Ok(self.values.get(w).cloned().unwrap_or_else(Rational::zero))
    }

    fn words(&self) -> Vec<Word> {
        Word::all_up_to(self.letters, self.max_degree)
    }
}

macro_rules! table_accessors {
    () => {
        pub fn letters(&self) -> u32 {
            self.0.letters
        }

        pub fn max_degree(&self) -> usize {
            self.0.max_degree
        }

        /// Every non-empty word the table is defined on, by degree then letters.
        pub fn words(&self) -> Vec<Word> {
            self.0.words()
        }

        /// Stored non-zero entries.
        pub fn entries(&self) -> impl Iterator<Item = (&Word, &Rational)> {
            self.0.values.iter()
        }

        /// The same table cut down to a smaller degree.
        pub fn truncate(&self, max_degree: usize) -> Self {
            let max_degree = max_degree.min(self.0.max_degree);
            Self(WordTable {
                letters: self.0.letters,
                max_degree,
                values: self
                    .0
                    .values
                    .iter()
                    .filter(|(w, _)| w.degree() <= max_degree)
                    .map(|(w, v)| (w.clone(), v.clone()))
                    .collect(),
            })
        }
    };
}

/// A generalized measure: a unital linear form on `T(A)`, given on all words
/// up to `max_degree`. The value on the unit is fixed to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateTable(WordTable);

impl StateTable {
    pub fn new(
        letters: u32,
        max_degree: usize,
        moments: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        WordTable::new(letters, max_degree, moments).map(StateTable)
    }

    /// Tabulates `f` on every non-empty word of degree `≤ max_degree`.
    pub fn from_fn(
        letters: u32,
        max_degree: usize,
        mut f: impl FnMut(&Word) -> Result<Rational>,
    ) -> Result<Self> {
        let words = Word::all_up_to(letters, max_degree);
        let mut entries = Vec::with_capacity(words.len());
        for w in words {
            let v = f(&w)?;
            entries.push((w, v));
        }
        Self::new(letters, max_degree, entries)
    }

    /// Single-variable moments `m_1, m_2, …` of `a1`.
    pub fn univariate(moments: &[Rational]) -> Self {
        let entries = moments
            .iter()
            .enumerate()
            .map(|(i, m)| (Word::from_indices(&vec![1; i + 1]), m.clone()));
        Self::new(1, moments.len(), entries).expect("univariate table is well formed")
    }

    /// Numerators uniform in `[-9, 9]`, denominators in `[1, 9]`.
    pub fn random(rng: &mut impl Rng, letters: u32, max_degree: usize) -> Self {
        Self::from_fn(letters, max_degree, |_| Ok(random_rational(rng)))
            .expect("random table is well formed")
    }

    pub fn get(&self, w: &Word) -> Result<Rational> {
        if w.is_unit() {
            return Ok(Rational::one());
        }
        self.0.get(w)
    }

    table_accessors!();
}

/// Cumulant values on non-empty words; the unit is excluded (value 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CumulantTable(WordTable);

impl CumulantTable {
    pub fn new(
        letters: u32,
        max_degree: usize,
        cumulants: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        WordTable::new(letters, max_degree, cumulants).map(CumulantTable)
    }

    pub fn from_fn(
        letters: u32,
        max_degree: usize,
        mut f: impl FnMut(&Word) -> Result<Rational>,
    ) -> Result<Self> {
        let words = Word::all_up_to(letters, max_degree);
        let mut entries = Vec::with_capacity(words.len());
        for w in words {
            let v = f(&w)?;
            entries.push((w, v));
        }
        Self::new(letters, max_degree, entries)
    }

    pub fn univariate(cumulants: &[Rational]) -> Self {
        let entries = cumulants
            .iter()
            .enumerate()
            .map(|(i, m)| (Word::from_indices(&vec![1; i + 1]), m.clone()));
        Self::new(1, cumulants.len(), entries).expect("univariate table is well formed")
    }

    pub fn random(rng: &mut impl Rng, letters: u32, max_degree: usize) -> Self {
        Self::from_fn(letters, max_degree, |_| Ok(random_rational(rng)))
            .expect("random table is well formed")
    }

    pub fn zero(letters: u32, max_degree: usize) -> Self {
        Self::new(letters, max_degree, []).expect("empty table")
    }

    pub fn get(&self, w: &Word) -> Result<Rational> {
        if w.is_unit() {
            return Ok(Rational::zero());
        }
        self.0.get(w)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &CumulantTable) -> Result<CumulantTable> {
        let letters = self.letters().min(other.letters());
        let max_degree = self.max_degree().min(other.max_degree());
        Self::from_fn(letters, max_degree, |w| Ok(self.get(w)? + other.get(w)?))
    }

    pub fn scale(&self, c: &Rational) -> CumulantTable {
        Self::from_fn(self.letters(), self.max_degree(), |w| Ok(self.get(w)? * c))
            .expect("scaling keeps the domain")
    }

    table_accessors!();
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}
