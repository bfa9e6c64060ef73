//! Coproducts on `T(T⁺(A))` and `S(T⁺(A))`, their half-coproducts, the
//! linearized coproduct `δ_m`, counit and antipode.
//!
//! Every coproduct of a word of degree `n` is computed once on the generic
//! word `a1⋯an` (position letters) and then specialised by substitution;
//! coproducts of bar-monomials are products of the coproducts of their
//! factors. Both levels are cached process-wide.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::algebra::{Bar, Flavor, LinComb, Rational, Tensor, Word};
use crate::error::{Error, Result};
use crate::partitions::{is_adapted, runs_of};
use crate::universal::{FreeRecursion, Tag, TaggedWord};

mod checks;

pub use checks::{
    antipode_defect, co_prelie_associator, co_prelie_defect, coassociativity_defect,
    counit_defect, multiplicativity_defect, right_co_prelie_defect, Triple,
};

/// Elements of the tensor square, both legs bar-monomials of one flavor.
pub type Coproduct = LinComb<Tensor<Bar, Bar>>;

/// The four Hopf algebras: `T(T⁺(A))` with `Δ`, and `S(T⁺(A))` with
/// `Δ_m`, `Δ_b` or `Δ_f`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Structure {
    DoubleTensor,
    Monotone,
    Boolean,
    Free,
}

impl Structure {
    pub const ALL: [Structure; 4] = [
        Structure::DoubleTensor,
        Structure::Monotone,
        Structure::Boolean,
        Structure::Free,
    ];

    pub fn flavor(self) -> Flavor {
        match self {
            Structure::DoubleTensor => Flavor::Ordered,
            _ => Flavor::Commutative,
        }
    }

    pub fn coproduct_kind(self) -> CoproductKind {
        match self {
            Structure::DoubleTensor => CoproductKind::Full,
            Structure::Monotone => CoproductKind::Monotone,
            Structure::Boolean => CoproductKind::Boolean,
            Structure::Free => CoproductKind::Free,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Structure::DoubleTensor => "T",
            Structure::Monotone => "m",
            Structure::Boolean => "b",
            Structure::Free => "f",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Left (`≺`, first letter on the left leg) or right (`≻`) half.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Prec,
    Succ,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CoproductKind {
    /// `Δ` on `T(T⁺(A))`.
    Full,
    /// `Δ_m`: the same subset expansion with commutative legs.
    Monotone,
    /// `Δ⁺_≺`, unreduced.
    Prec,
    /// `Δ⁺_≻`, unreduced.
    Succ,
    Boolean,
    Free,
}

impl CoproductKind {
    pub fn flavor(self) -> Flavor {
        match self {
            CoproductKind::Full | CoproductKind::Prec | CoproductKind::Succ => Flavor::Ordered,
            _ => Flavor::Commutative,
        }
    }
}

type Terms = Arc<Vec<(Bar, Bar, Rational)>>;

fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

fn run_words(g: &Word, runs: &[Vec<usize>]) -> Vec<Word> {
    runs.iter().map(|r| g.select(r)).collect()
}

/// The coproduct of the generic word `a1⋯an`, subsets in binary-counter order.
fn generic_terms(kind: CoproductKind, n: usize) -> Terms {
    static CACHE: OnceLock<Mutex<HashMap<(CoproductKind, usize), Terms>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(kind, n)) {
        return t.clone();
    }
    let g = Word::generic(n);
    let flavor = kind.flavor();
    let mut terms = Vec::new();
    if kind == CoproductKind::Free {
        for (t, c) in &free_generic(n) {
            terms.push((t.0.clone(), t.1.clone(), c.clone()));
        }
    } else {
        for mask in 0..(1u64 << n) {
            let first_in = mask & 1 == 1;
            match kind {
                CoproductKind::Prec if !first_in && n > 0 => continue,
                CoproductKind::Succ if first_in => continue,
                _ => {}
            }
            let cc = runs_of(&bits(mask, n));
            let right = Bar::new(run_words(&g, &cc.complement_runs), flavor);
            let left = if kind == CoproductKind::Boolean {
                Bar::new(run_words(&g, &cc.runs), flavor)
            } else {
                let s: Vec<usize> = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                Bar::word(g.select(&s), flavor)
            };
            terms.push((left, right, Rational::one()));
        }
    }
    let terms = Arc::new(terms);
    cache.lock().unwrap().insert((kind, n), terms.clone());
    terms
}

/// `Δ_f(a1⋯an)`: the free universal product of two formal copies, summed over
/// all tag assignments, with `φ1(h) ↦ h⊗𝟏` and `φ2(h) ↦ 𝟏⊗h`.
fn free_generic(n: usize) -> Coproduct {
    let c = Flavor::Commutative;
    let leaf = |t: Tag, h: &Word| -> Result<Coproduct> {
        let (l, r) = match t {
            Tag::One => (Bar::word(h.clone(), c), Bar::unit(c)),
            Tag::Two => (Bar::unit(c), Bar::word(h.clone(), c)),
        };
        Ok(LinComb::basis(Tensor(l, r)))
    };
    let mut rec = FreeRecursion::new(leaf, true);
    let g = Word::generic(n);
    let mut out = Coproduct::zero();
    for mask in 0..(1u64 << n) {
        let tw = TaggedWord::tag_letters(&g, |i| if mask >> i & 1 == 1 { Tag::Two } else { Tag::One });
        out = out + rec.eval(&tw).expect("symbolic leaves never fail");
    }
    out
}

fn word_coproduct(kind: CoproductKind, w: &Word) -> Coproduct {
    let terms = generic_terms(kind, w.degree());
    LinComb::from_terms(
        terms
            .iter()
            .map(|(l, r, c)| (Tensor(l.substitute(w), r.substitute(w)), c.clone())),
    )
}

fn unit_tensor(flavor: Flavor) -> Coproduct {
    LinComb::basis(Tensor(Bar::unit(flavor), Bar::unit(flavor)))
}

fn compute(kind: CoproductKind, x: &Bar) -> Coproduct {
    let mut acc = unit_tensor(kind.flavor());
    for (i, w) in x.words().iter().enumerate() {
        let k = match kind {
            CoproductKind::Prec | CoproductKind::Succ if i > 0 => CoproductKind::Full,
            k => k,
        };
        acc = acc.mul_tensor(&word_coproduct(k, w));
    }
    acc
}

type Cache<K, V> = OnceLock<Mutex<HashMap<(K, Bar), V>>>;

/// Cached coproduct of a bar-monomial, read in the flavor of `kind`. The
/// half kinds are unreduced and return zero on the unit.
pub fn coproduct(kind: CoproductKind, x: &Bar) -> Arc<Coproduct> {
    static CACHE: Cache<CoproductKind, Arc<Coproduct>> = OnceLock::new();
    let x = x.with_flavor(kind.flavor());
    if x.is_unit() && matches!(kind, CoproductKind::Prec | CoproductKind::Succ) {
        return Arc::new(Coproduct::zero());
    }
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, x);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let value = Arc::new(compute(kind, &key.1));
    cache.lock().unwrap().insert(key, value.clone());
    value
}

/// `x⊗𝟏 + 𝟏⊗x` in the flavor of `x`.
fn primitive_part(x: &Bar) -> Coproduct {
    let u = Bar::unit(x.flavor());
    LinComb::basis(Tensor(x.clone(), u.clone())) + LinComb::basis(Tensor(u, x.clone()))
}

/// Removes the two boundary terms `x⊗𝟏` and `𝟏⊗x`.
pub fn reduce(c: &Coproduct, x: &Bar) -> Coproduct {
    if x.is_unit() {
        return Coproduct::zero();
    }
    c.clone() - primitive_part(x)
}

/// `Δ` (ordered target) or `Δ_m` (commutative target).
pub fn delta(x: &Bar, target: Flavor) -> Coproduct {
    let kind = match target {
        Flavor::Ordered => CoproductKind::Full,
        Flavor::Commutative => CoproductKind::Monotone,
    };
    (*coproduct(kind, x)).clone()
}

/// `Δ⁺_≺`, `Δ⁺_≻` and their reduced forms `Δ_≺ = Δ⁺_≺ − x⊗𝟏`,
/// `Δ_≻ = Δ⁺_≻ − 𝟏⊗x`.
pub fn delta_half(x: &Bar, side: Side, reduced: bool) -> Result<Coproduct> {
    if x.is_unit() {
        return Err(Error::UnitInput);
    }
    let x = x.with_flavor(Flavor::Ordered);
    let (kind, boundary) = match side {
        Side::Prec => (CoproductKind::Prec, Tensor(x.clone(), Bar::unit(Flavor::Ordered))),
        Side::Succ => (CoproductKind::Succ, Tensor(Bar::unit(Flavor::Ordered), x.clone())),
    };
    let mut c = (*coproduct(kind, &x)).clone();
    if reduced {
        c.add_term(boundary, -Rational::one());
    }
    Ok(c)
}

/// `Δ_b`, multiplicative on `S(T⁺(A))`.
pub fn delta_b(x: &Bar) -> Coproduct {
    (*coproduct(CoproductKind::Boolean, x)).clone()
}

/// `Δ_f`, multiplicative on `S(T⁺(A))`.
pub fn delta_f(x: &Bar) -> Coproduct {
    (*coproduct(CoproductKind::Free, x)).clone()
}

/// `δ_m(w) = Σ a_{[n]−I} ⊗ a_I` over non-empty proper intervals `I`.
pub fn delta_m_linearized(w: &Word) -> LinComb<Tensor<Word, Word>> {
    let n = w.degree();
    let mut out = LinComb::zero();
    for lo in 1..=n {
        for hi in lo..=n {
            if lo == 1 && hi == n {
                continue;
            }
            let inside: Vec<usize> = (lo..=hi).collect();
            let outside: Vec<usize> = (1..=n).filter(|i| *i < lo || *i > hi).collect();
            out.add_term(Tensor(w.select(&outside), w.select(&inside)), Rational::one());
        }
    }
    out
}

/// `α_{π¹,π²}`: the coefficient of `Π a_{π¹_j} ⊗ Π a_{π²_k}` in `Δ_f(a1⋯an)`.
pub fn extract_alpha(pi1: &[Vec<usize>], pi2: &[Vec<usize>]) -> Result<Rational> {
    let n = pi1.iter().chain(pi2).map(Vec::len).sum();
    if !is_adapted(pi1, pi2, n) {
        return Err(Error::NotAdapted(format!("{pi1:?} / {pi2:?}")));
    }
    let g = Word::generic(n);
    let c = Flavor::Commutative;
    let leg = |blocks: &[Vec<usize>]| {
        Bar::new(
            blocks
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort_unstable();
                    g.select(&b)
                })
                .collect(),
            c,
        )
    };
    let target = Tensor(leg(pi1), leg(pi2));
    Ok(coproduct(CoproductKind::Free, &Bar::word(g.clone(), c)).coeff(&target))
}

/// The counit `ν`: 1 on the unit, 0 elsewhere.
pub fn counit(x: &Bar) -> Rational {
    if x.is_unit() {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Antipode by the recursion `S(x) = −Σ S(x′)·x″` over the terms of `Δ(x)`
/// other than `x⊗𝟏`.
pub fn antipode(x: &Bar, structure: Structure) -> LinComb<Bar> {
    static CACHE: Cache<Structure, LinComb<Bar>> = OnceLock::new();
    let x = x.with_flavor(structure.flavor());
    if x.is_unit() {
        return LinComb::basis(x);
    }
    let cache = CACHE.get_or_init(Default::default);
    let key = (structure, x);
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return s.clone();
    }
    let x = &key.1;
    let mut out = LinComb::zero();
    for (t, c) in coproduct(structure.coproduct_kind(), x).iter() {
        if t.1.is_unit() {
            debug_assert!(t.0 == *x && c.is_one());
            continue;
        }
        let s = antipode(&t.0, structure);
        out.add_scaled(&s.product(&LinComb::basis(t.1.clone()), |a, b| a.mul_same(b)), &-c);
    }
    cache.lock().unwrap().insert(key.clone(), out.clone());
    out
}

/// Parses a sum such as `a2.a3⊗a1 + a1|a3⊗a2 - a1|a3⊗a2|a4`; `x` may be
/// used for `⊗` and a term may carry a `p/q*` coefficient prefix.
pub fn parse_coproduct(s: &str, flavor: Flavor) -> Result<Coproduct> {
    let mut out = Coproduct::zero();
    let normalized = s.replace('⊗', " x ").replace('−', "-");
    let mut sign = Rational::one();
    let mut pending = String::new();
    let flush = |text: &str, sign: &Rational, out: &mut Coproduct| -> Result<()> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse(format!("empty term in `{s}`")));
        }
        let (coeff, body) = match text.split_once('*') {
            Some((c, b)) => (crate::algebra::parse_rational(c)?, b),
            None => (Rational::one(), text),
        };
        let (l, r) = body
            .split_once(" x ")
            .ok_or_else(|| Error::Parse(format!("term `{text}` has no tensor sign")))?;
        out.add_term(
            Tensor(Bar::parse(l, flavor)?, Bar::parse(r, flavor)?),
            sign * coeff,
        );
        Ok(())
    };
    for tok in normalized.split_whitespace() {
        match tok {
            "+" | "-" => {
                if !pending.trim().is_empty() {
                    flush(&pending, &sign, &mut out)?;
                    pending.clear();
                }
                sign = if tok == "-" { -Rational::one() } else { Rational::one() };
            }
            _ => {
                pending.push(' ');
                pending.push_str(tok);
            }
        }
    }
    flush(&pending, &sign, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests;
