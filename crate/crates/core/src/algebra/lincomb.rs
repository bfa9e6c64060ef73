use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};

use super::bar::{Bar, Flavor};
use super::word::Word;
use super::Rational;
use crate::error::{Error, Result};

/// The kind of a basis element, checked when combining linear combinations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisKind {
    Word,
    Bar(Flavor),
    Pair(Box<BasisKind>, Box<BasisKind>),
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Word => f.write_str("word"),
            BasisKind::Bar(Flavor::Ordered) => f.write_str("ordered bar"),
            BasisKind::Bar(Flavor::Commutative) => f.write_str("commutative bar"),
            BasisKind::Pair(l, r) => write!(f, "({l}) ⊗ ({r})"),
        }
    }
}

pub trait Basis: Clone + Ord + fmt::Display {
    fn kind(&self) -> BasisKind;
    fn degree(&self) -> usize;
}

impl Basis for Word {
    fn kind(&self) -> BasisKind {
        BasisKind::Word
    }
    fn degree(&self) -> usize {
        Word::degree(self)
    }
}

impl Basis for Bar {
    fn kind(&self) -> BasisKind {
        BasisKind::Bar(self.flavor())
    }
    fn degree(&self) -> usize {
        Bar::degree(self)
    }
}

/// Elementary tensor `left ⊗ right`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tensor<L, R>(pub L, pub R);

impl<L: Clone, R: Clone> Tensor<L, R> {
    /// The switch map `τ(x⊗y) = y⊗x`.
    pub fn swap(&self) -> Tensor<R, L> {
        Tensor(self.1.clone(), self.0.clone())
    }
}

impl<L: fmt::Display, R: fmt::Display> fmt::Display for Tensor<L, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

impl<L: Basis, R: Basis> Basis for Tensor<L, R> {
    fn kind(&self) -> BasisKind {
        BasisKind::Pair(Box::new(self.0.kind()), Box::new(self.1.kind()))
    }
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
}

/// A finite formal sum with exact rational coefficients; no stored
/// coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut lc = Self::zero();
        lc.add_term(b, c);
        lc
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Rational)>) -> Self {
        let mut lc = Self::zero();
        for (b, c) in terms {
            lc.add_term(b, c);
        }
        lc
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Rational> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Extends `f` linearly.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabels basis elements; coinciding images are merged.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    /// Bilinear extension of `f` to `self × other`.
    pub fn product<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> D,
    ) -> LinComb<D> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            for (c, y) in &other.terms {
                out.add_term(f(b, c), x * y);
            }
        }
        out
    }

    /// `lc_tensor`: the bilinear map into the pair basis.
    pub fn tensor<C: Ord + Clone>(&self, other: &LinComb<C>) -> LinComb<Tensor<B, C>> {
        self.product(other, |b, c| Tensor(b.clone(), c.clone()))
    }

    /// Pairs the combination against a linear form given on basis elements.
    pub fn pair_with<E>(&self, mut f: impl FnMut(&B) -> std::result::Result<Rational, E>) -> std::result::Result<Rational, E> {
        let mut acc = Rational::zero();
        for (b, c) in &self.terms {
            let v = f(b)?;
            if !v.is_zero() {
                acc += c * v;
            }
        }
        Ok(acc)
    }
}

impl<B: Basis> LinComb<B> {
    /// Addition with a runtime check that both sides use the same basis kind.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let kind_of = |lc: &Self| lc.terms.keys().next().map(Basis::kind);
        let mut kinds = self.terms.keys().chain(other.terms.keys()).map(Basis::kind);
        if let Some(first) = kinds.next() {
            if let Some(bad) = kinds.find(|k| *k != first) {
                return Err(Error::BasisMismatch {
                    left: kind_of(self).unwrap_or(first.clone()).to_string(),
                    right: bad.to_string(),
                });
            }
        }
        Ok(self.clone() + other.clone())
    }
}

impl<L: Ord + Clone, R: Ord + Clone> LinComb<Tensor<L, R>> {
    /// Applies `τ` termwise.
    pub fn swap(&self) -> LinComb<Tensor<R, L>> {
        self.map_basis(Tensor::swap)
    }
}

impl LinComb<Tensor<Bar, Bar>> {
    /// Product in the tensor square of a bar algebra.
    pub fn mul_tensor(&self, other: &Self) -> Self {
        self.product(other, |a, b| Tensor(a.0.mul_same(&b.0), a.1.mul_same(&b.1)))
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb {
            terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect(),
        }
    }
}

impl<'a, B: Ord> IntoIterator for &'a LinComb<B> {
    type Item = (&'a B, &'a Rational);
    type IntoIter = btree_map::Iter<'a, B, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c})·{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_prunes() {
        let x = LinComb::term(w("a1.a2"), rat(2, 1));
        let y = LinComb::term(w("a1.a2"), rat(-2, 1));
        assert!((x + y).is_zero());
    }

    #[test]
    fn scaling() {
        let x = LinComb::term(w("a1"), rat(3, 1));
        assert_eq!(x.scale(&rat(1, 2)), LinComb::term(w("a1"), rat(3, 2)));
        assert!(x.scale(&rat(0, 1)).is_zero());
    }

    #[test]
    fn tensor_is_bilinear() {
        let lhs = LinComb::basis(w("a1")).tensor(&(LinComb::basis(w("a2")) + LinComb::basis(w("a3"))));
        let rhs = LinComb::basis(Tensor(w("a1"), w("a2"))) + LinComb::basis(Tensor(w("a1"), w("a3")));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn try_add_checks_kinds() {
        let o = LinComb::basis(Bar::parse("a1", Flavor::Ordered).unwrap());
        let c = LinComb::basis(Bar::parse("a1", Flavor::Commutative).unwrap());
        assert!(matches!(o.try_add(&c), Err(Error::BasisMismatch { .. })));
        assert_eq!(o.try_add(&o).unwrap(), o.scale(&rat(2, 1)));
    }
}
