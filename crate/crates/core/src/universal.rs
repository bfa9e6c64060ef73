//! Universal products of two states on the free product of two copies of
//! `T(A)`, and the additive convolutions obtained by doubling variables.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num::{One, Zero};

use crate::algebra::{int, Bar, LinComb, Letter, Rational, Tensor, Word};
use crate::error::{Error, Result};
use crate::functionals::{char_extend, gm, half_exp, half_log, Side, StateTable};
use crate::hopf::Structure;

/// Which copy of the algebra a letter belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tag {
    One,
    Two,
}

impl Tag {
    pub fn other(self) -> Tag {
        match self {
            Tag::One => Tag::Two,
            Tag::Two => Tag::One,
        }
    }
}

/// A word in the free product, in alternating normal form: maximal runs of
/// same-tag letters are collapsed into one sub-word each.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TaggedWord {
    runs: Vec<(Tag, Word)>,
}

/// Groups a raw tagged letter sequence into alternating runs.
pub fn normalize(letters: &[(Letter, Tag)]) -> TaggedWord {
    let mut tw = TaggedWord::default();
    for &(l, t) in letters {
        tw.push(t, &Word::new(vec![l]));
    }
    tw
}

impl TaggedWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the normal form of a sequence of tagged sub-words.
    pub fn from_runs(runs: impl IntoIterator<Item = (Tag, Word)>) -> Self {
        let mut tw = TaggedWord::default();
        for (t, w) in runs {
            tw.push(t, &w);
        }
        tw
    }

    /// Tags letter `i` of `w` by `tag_of(i)` (0-based).
    pub fn tag_letters(w: &Word, mut tag_of: impl FnMut(usize) -> Tag) -> Self {
        let letters: Vec<(Letter, Tag)> = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, tag_of(i)))
            .collect();
        normalize(&letters)
    }

    fn push(&mut self, tag: Tag, w: &Word) {
        if w.is_unit() {
            return;
        }
        match self.runs.last_mut() {
            Some((t, last)) if *t == tag => *last = last.concat(w),
            _ => self.runs.push((tag, w.clone())),
        }
    }

    pub fn runs(&self) -> &[(Tag, Word)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.runs.iter().map(|(_, w)| w.degree()).sum()
    }

    /// `Π_{i∈I} h_i` in increasing order, re-normalized; `mask` bit `i`
    /// selects run `i`.
    pub fn sub_product(&self, mask: u64) -> TaggedWord {
        TaggedWord::from_runs(
            self.runs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.clone()),
        )
    }

    /// Concatenation of all runs with the given tag.
    pub fn merged(&self, tag: Tag) -> Word {
        self.runs
            .iter()
            .filter(|(t, _)| *t == tag)
            .fold(Word::unit(), |acc, (_, w)| acc.concat(w))
    }

    /// Exchanges the two copies.
    pub fn swap_tags(&self) -> TaggedWord {
        TaggedWord {
            runs: self.runs.iter().map(|(t, w)| (t.other(), w.clone())).collect(),
        }
    }
}

impl fmt::Display for TaggedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (t, w) in &self.runs {
            let k = if *t == Tag::One { 1 } else { 2 };
            write!(f, "[{w}]^{k}")?;
        }
        Ok(())
    }
}

/// Coefficient ring for the free-product recursion: plain rationals for
/// numeric evaluation, tensor combinations for the symbolic coproduct.
pub(crate) trait FreeRing: Clone {
    fn ring_one() -> Self;
    fn ring_zero() -> Self;
    fn vanishes(&self) -> bool;
    fn times(&self, other: &Self) -> Self;
    fn accumulate(&mut self, other: &Self, c: &Rational);
}

impl FreeRing for Rational {
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn accumulate(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
}

impl FreeRing for LinComb<Tensor<Bar, Bar>> {
    fn ring_one() -> Self {
        let u = Bar::unit(crate::algebra::Flavor::Commutative);
        LinComb::basis(Tensor(u.clone(), u))
    }
    fn ring_zero() -> Self {
        LinComb::zero()
    }
    fn vanishes(&self) -> bool {
        LinComb::is_zero(self)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_tensor(other)
    }
    fn accumulate(&mut self, other: &Self, c: &Rational) {
        LinComb::add_scaled(self, other, c)
    }
}

/// Evaluates the free universal product recursion
/// `Σ_{I⊊[m]} (−1)^{m−|I|+1} F(Π_{i∈I} h_i) Π_{j∉I} φ_{t_j}(h_j)` over an
/// arbitrary coefficient ring, given the value of each single run.
pub(crate) struct FreeRecursion<R, L> {
    leaf: L,
    memo: Option<HashMap<TaggedWord, R>>,
}

impl<R, L> FreeRecursion<R, L>
where
    R: FreeRing,
    L: FnMut(Tag, &Word) -> Result<R>,
{
    pub(crate) fn new(leaf: L, memoize: bool) -> Self {
        FreeRecursion {
            leaf,
            memo: memoize.then(HashMap::new),
        }
    }

    pub(crate) fn eval(&mut self, w: &TaggedWord) -> Result<R> {
        let m = w.runs.len();
        if m == 0 {
            return Ok(R::ring_one());
        }
        if let Some(v) = self.memo.as_ref().and_then(|memo| memo.get(w)) {
            return Ok(v.clone());
        }
        let leaves = w
            .runs
            .iter()
            .map(|(t, h)| (self.leaf)(*t, h))
            .collect::<Result<Vec<R>>>()?;
        let full = (1u64 << m) - 1;
        let mut acc = R::ring_zero();
        for mask in 0..full {
            let mut rest = R::ring_one();
            for (j, leaf) in leaves.iter().enumerate() {
                if mask >> j & 1 == 0 {
                    rest = rest.times(leaf);
                }
            }
            if rest.vanishes() {
                continue;
            }
            let inner = self.eval(&w.sub_product(mask))?;
            let sign = if (m - mask.count_ones() as usize + 1).is_multiple_of(2) {
                int(1)
            } else {
                int(-1)
            };
            acc.accumulate(&inner.times(&rest), &sign);
        }
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(w.clone(), acc.clone());
        }
        Ok(acc)
    }
}

/// The four universal products (the tensor product is not treated).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum UniversalKind {
    Boolean,
    Free,
    Monotone,
    Antimonotone,
}

impl UniversalKind {
    pub const ALL: [UniversalKind; 4] = [
        UniversalKind::Boolean,
        UniversalKind::Free,
        UniversalKind::Monotone,
        UniversalKind::Antimonotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UniversalKind::Boolean => "boolean",
            UniversalKind::Free => "free",
            UniversalKind::Monotone => "monotone",
            UniversalKind::Antimonotone => "antimonotone",
        }
    }
}

impl std::str::FromStr for UniversalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        UniversalKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown universal product `{s}`")))
    }
}

/// Evaluator of one universal product of a fixed pair of states. The free
/// case keeps a memo over exact tagged words across calls.
pub struct UniversalProduct<'a> {
    kind: UniversalKind,
    phi1: &'a StateTable,
    phi2: &'a StateTable,
    memoize: bool,
    memo: HashMap<TaggedWord, Rational>,
}

impl<'a> UniversalProduct<'a> {
    pub fn new(kind: UniversalKind, phi1: &'a StateTable, phi2: &'a StateTable) -> Self {
        UniversalProduct {
            kind,
            phi1,
            phi2,
            memoize: true,
            memo: HashMap::new(),
        }
    }

    /// Disables the free-product memo (every sub-pattern is recomputed).
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    fn state(&self, t: Tag) -> &'a StateTable {
        match t {
            Tag::One => self.phi1,
            Tag::Two => self.phi2,
        }
    }

    pub fn eval(&mut self, w: &TaggedWord) -> Result<Rational> {
        let runs_of = |t: Tag| w.runs.iter().filter(move |(s, _)| *s == t).map(|(_, h)| h);
        match self.kind {
            UniversalKind::Boolean => {
                let mut acc = Rational::one();
                for (t, h) in &w.runs {
                    acc *= self.state(*t).get(h)?;
                }
                Ok(acc)
            }
            UniversalKind::Monotone => {
                let mut acc = self.phi1.get(&w.merged(Tag::One))?;
                for h in runs_of(Tag::Two) {
                    acc *= self.phi2.get(h)?;
                }
                Ok(acc)
            }
            UniversalKind::Antimonotone => {
                let mut acc = self.phi2.get(&w.merged(Tag::Two))?;
                for h in runs_of(Tag::One) {
                    acc *= self.phi1.get(h)?;
                }
                Ok(acc)
            }
            UniversalKind::Free => {
                let (phi1, phi2) = (self.phi1, self.phi2);
                let leaf = move |t: Tag, h: &Word| match t {
                    Tag::One => phi1.get(h),
                    Tag::Two => phi2.get(h),
                };
                let mut rec = FreeRecursion::new(leaf, self.memoize);
                if self.memoize {
                    rec.memo = Some(std::mem::take(&mut self.memo));
                }
                let v = rec.eval(w);
                if let Some(memo) = rec.memo {
                    self.memo = memo;
                }
                v
            }
        }
    }

    /// `φ1 ⋄ φ2((a_1′+a_1″)⋯(a_n′+a_n″))`: sum over the `2^n` tag assignments,
    /// bit `i` of the counter putting letter `i+1` in the second copy.
    pub fn doubled(&mut self, w: &Word) -> Result<Rational> {
        let n = w.degree();
        let mut acc = Rational::zero();
        for mask in 0..(1u64 << n) {
            let tw = TaggedWord::tag_letters(w, |i| {
                if mask >> i & 1 == 1 {
                    Tag::Two
                } else {
                    Tag::One
                }
            });
            acc += self.eval(&tw)?;
        }
        Ok(acc)
    }
}

/// Value of the universal product of `φ1` and `φ2` on a tagged word.
pub fn universal_product(
    kind: UniversalKind,
    phi1: &StateTable,
    phi2: &StateTable,
    w: &TaggedWord,
) -> Result<Rational> {
    UniversalProduct::new(kind, phi1, phi2).eval(w)
}

/// The additive convolution `(φ ⋄ ψ)(w)` of two states.
pub fn additive_convolve(
    kind: UniversalKind,
    phi: &StateTable,
    psi: &StateTable,
    w: &Word,
) -> Result<Rational> {
    UniversalProduct::new(kind, phi, psi).doubled(w)
}

/// The whole convolved moment table up to `max_degree`.
pub fn additive_convolution(
    kind: UniversalKind,
    phi: &StateTable,
    psi: &StateTable,
    max_degree: usize,
) -> Result<StateTable> {
    let letters = phi.letters().max(psi.letters());
    let mut up = UniversalProduct::new(kind, phi, psi);
    StateTable::from_fn(letters, max_degree, |w| up.doubled(w))
}

/// The same group law computed in the convolution algebra of `T(T⁺(A))`.
pub fn hopf_group_law(
    kind: UniversalKind,
    phi: &StateTable,
    psi: &StateTable,
    max_degree: usize,
) -> Result<StateTable> {
    let s = Structure::DoubleTensor;
    let big_phi = char_extend(phi, s);
    let big_psi = char_extend(psi, s);
    let law = match kind {
        UniversalKind::Monotone => big_phi.convolve(&big_psi)?,
        UniversalKind::Antimonotone => big_psi.convolve(&big_phi)?,
        UniversalKind::Boolean => {
            let beta = half_log(&big_phi, Side::Succ)?.add(&half_log(&big_psi, Side::Succ)?)?;
            half_exp(&beta, Side::Succ)?
        }
        UniversalKind::Free => {
            let kappa = half_log(&big_phi, Side::Prec)?.add(&half_log(&big_psi, Side::Prec)?)?;
            half_exp(&kappa, Side::Prec)?
        }
    };
    gm(&law.truncated(max_degree))
}

/// Outcome of comparing the additive convolution with its Hopf-side law.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupLawReport {
    pub kind: UniversalKind,
    pub words_checked: usize,
    /// First word (in canonical order) where the two sides differ, with the
    /// additive and the Hopf-side values.
    pub mismatch: Option<(Word, Rational, Rational)>,
}

impl GroupLawReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn group_law_check(
    kind: UniversalKind,
    phi: &StateTable,
    psi: &StateTable,
    max_degree: usize,
) -> Result<GroupLawReport> {
    let additive = additive_convolution(kind, phi, psi, max_degree)?;
    let hopf = hopf_group_law(kind, phi, psi, max_degree)?;
    let words = additive.words();
    let mut report = GroupLawReport {
        kind,
        words_checked: 0,
        mismatch: None,
    };
    for w in words {
        report.words_checked += 1;
        let (x, y) = (additive.get(&w)?, hopf.get(&w)?);
        if x != y {
            report.mismatch = Some((w, x, y));
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn t(s: &str, tag: Tag) -> (Tag, Word) {
        (tag, w(s))
    }

    #[test]
    fn normal_form_merges_runs() {
        let l = |i| Letter(i);
        let tw = normalize(&[(l(1), Tag::One), (l(2), Tag::One), (l(3), Tag::Two)]);
        assert_eq!(tw.runs(), &[t("a1.a2", Tag::One), t("a3", Tag::Two)]);
        let alt = normalize(&[(l(1), Tag::One), (l(2), Tag::Two), (l(3), Tag::One)]);
        assert_eq!(alt.runs().len(), 3);
        assert!(normalize(&[]).is_empty());
    }

    fn two_states() -> (StateTable, StateTable) {
        let phi = StateTable::from_fn(3, 3, |w| {
            let s: u32 = w.letters().iter().map(|l| l.0).sum();
            Ok(rat(s as i64 + w.degree() as i64, 3))
        })
        .unwrap();
        let psi = StateTable::from_fn(3, 3, |w| {
            let s: u32 = w.letters().iter().map(|l| l.0 * l.0).sum();
            Ok(rat(1 - s as i64, 2))
        })
        .unwrap();
        (phi, psi)
    }

    #[test]
    fn empty_word_is_one() {
        let (phi, psi) = two_states();
        for kind in UniversalKind::ALL {
            assert_eq!(universal_product(kind, &phi, &psi, &TaggedWord::empty()).unwrap(), int(1));
        }
    }

    #[test]
    fn boolean_and_monotone_on_three_runs() {
        let (phi, psi) = two_states();
        let tw = TaggedWord::from_runs([t("a1", Tag::One), t("a2", Tag::Two), t("a3", Tag::One)]);
        let g = |s: &StateTable, x: &str| s.get(&w(x)).unwrap();
        assert_eq!(
            universal_product(UniversalKind::Boolean, &phi, &psi, &tw).unwrap(),
            g(&phi, "a1") * g(&psi, "a2") * g(&phi, "a3")
        );
        assert_eq!(
            universal_product(UniversalKind::Monotone, &phi, &psi, &tw).unwrap(),
            g(&phi, "a1.a3") * g(&psi, "a2")
        );
        assert_eq!(
            universal_product(UniversalKind::Antimonotone, &phi, &psi, &tw).unwrap(),
            g(&phi, "a1") * g(&psi, "a2") * g(&phi, "a3")
        );
    }

    #[test]
    fn free_product_small_cases() {
        let (phi, psi) = two_states();
        let g = |s: &StateTable, x: &str| s.get(&w(x)).unwrap();
        let two = TaggedWord::from_runs([t("a1", Tag::One), t("a2", Tag::Two)]);
        assert_eq!(
            universal_product(UniversalKind::Free, &phi, &psi, &two).unwrap(),
            g(&phi, "a1") * g(&psi, "a2")
        );
        let three = TaggedWord::from_runs([t("a1", Tag::One), t("a2", Tag::Two), t("a3", Tag::One)]);
        assert_eq!(
            universal_product(UniversalKind::Free, &phi, &psi, &three).unwrap(),
            g(&phi, "a1.a3") * g(&psi, "a2")
        );
        // centred variables: φ(a b a' b') for a,a' in copy 1 and b,b' in copy 2
        let four = TaggedWord::from_runs([
            t("a1", Tag::One),
            t("a2", Tag::Two),
            t("a3", Tag::One),
            t("a1", Tag::Two),
        ]);
        let expected = g(&phi, "a1.a3") * g(&psi, "a2") * g(&psi, "a1")
            + g(&phi, "a1") * g(&phi, "a3") * g(&psi, "a2.a1")
            - g(&phi, "a1") * g(&phi, "a3") * g(&psi, "a2") * g(&psi, "a1");
        assert_eq!(
            universal_product(UniversalKind::Free, &phi, &psi, &four).unwrap(),
            expected
        );
    }

    #[test]
    fn memo_does_not_change_values() {
        let (phi, psi) = two_states();
        let mut with = UniversalProduct::new(UniversalKind::Free, &phi, &psi);
        let mut without = UniversalProduct::new(UniversalKind::Free, &phi, &psi).without_memo();
        for word in Word::all_up_to(3, 3) {
            assert_eq!(with.doubled(&word).unwrap(), without.doubled(&word).unwrap());
        }
    }

    #[test]
    fn degree_one_is_additive() {
        let (phi, psi) = two_states();
        for kind in UniversalKind::ALL {
            let v = additive_convolve(kind, &phi, &psi, &w("a2")).unwrap();
            assert_eq!(v, g1(&phi) + g1(&psi));
        }
        fn g1(s: &StateTable) -> Rational {
            s.get(&"a2".parse().unwrap()).unwrap()
        }
    }

    #[test]
    fn too_shallow_tables_fail() {
        let (phi, psi) = two_states();
        assert!(matches!(
            additive_convolve(UniversalKind::Free, &phi, &psi, &w("a1.a1.a1.a1")),
            Err(Error::DegreeExceeded { .. })
        ));
    }
}
