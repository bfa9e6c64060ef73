//! Linear forms on the four Hopf algebras and their convolution calculus.
//!
//! A [`Functional`] is a lazily evaluated, memoized node in an expression
//! graph: tables at the leaves, convolutions, half-shuffles and graded
//! series above them. Its [`Kind`] is a contract: characters are evaluated
//! through their values on words and infinitesimal characters vanish off
//! single words. [`Functional::eval_direct`] bypasses the contract so tests
//! can check it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::{One, Zero};
use rand::Rng;

use crate::algebra::{factorial, int, Bar, Rational, Word};
use crate::error::{Error, Result};
use crate::hopf::{antipode, counit, coproduct, delta_m_linearized, CoproductKind, Structure};

mod io;
mod tables;

pub use crate::hopf::Side;
pub use io::{cumulants_from_json, cumulants_to_json, state_from_json, state_to_json};
pub use tables::{random_rational, CumulantTable, StateTable};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    /// Multiplicative, `Ψ(𝟏) = 1`.
    Character,
    /// Vanishes on `𝟏` and on bar-monomials of length ≥ 2.
    Infinitesimal,
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Exp,
    Log,
}

enum Op {
    Counit,
    State(StateTable),
    Cumulant(CumulantTable),
    Table(HashMap<Bar, Rational>),
    Linear(Vec<(Rational, Functional)>),
    Convolve(Functional, Functional),
    Half(Side, Functional, Functional),
    /// `Σ_j c_j · base^{*j}`, with `base(𝟏) = 0` so term `j` vanishes below
    /// degree `j`.
    Series(Vec<Rational>, Vec<Functional>),
    /// The fixed point `E = ν + α≺E` (prec) or `E = ν + E≻α` (succ).
    HalfExp(Side, Functional),
    Antipode(Functional),
}

struct Node {
    op: Op,
    memo: Mutex<HashMap<Bar, Rational>>,
}

/// A linear form on one of the four Hopf algebras, defined on
/// bar-monomials of degree `≤ max_degree` over `letters` letters.
#[derive(Clone)]
pub struct Functional {
    structure: Structure,
    kind: Kind,
    letters: u32,
    max_degree: usize,
    node: Arc<Node>,
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functional")
            .field("structure", &self.structure)
            .field("kind", &self.kind)
            .field("letters", &self.letters)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::KindMismatch(msg.into())
}

impl Functional {
    fn build(structure: Structure, kind: Kind, letters: u32, max_degree: usize, op: Op) -> Self {
        Functional {
            structure,
            kind,
            letters,
            max_degree,
            node: Arc::new(Node {
                op,
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// The counit `ν`, the unit of every convolution product.
    pub fn counit(structure: Structure, letters: u32, max_degree: usize) -> Self {
        Self::build(structure, Kind::Character, letters, max_degree, Op::Counit)
    }

    /// A general functional with the given values; unlisted bars are 0.
    pub fn from_values(
        structure: Structure,
        letters: u32,
        max_degree: usize,
        values: impl IntoIterator<Item = (Bar, Rational)>,
    ) -> Self {
        let f = structure.flavor();
        let table = values
            .into_iter()
            .map(|(b, v)| (b.with_flavor(f), v))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self::build(structure, Kind::General, letters, max_degree, Op::Table(table))
    }

    /// Random values on every non-unit bar-monomial; zero on the unit.
    pub fn random(rng: &mut impl Rng, structure: Structure, letters: u32, max_degree: usize) -> Self {
        let bars = Bar::all_up_to(letters, max_degree, structure.flavor());
        let values: Vec<(Bar, Rational)> =
            bars.into_iter().map(|b| (b, random_rational(rng))).collect();
        Self::from_values(structure, letters, max_degree, values)
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn letters(&self) -> u32 {
        self.letters
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The same functional with a smaller declared degree bound.
    pub fn truncated(&self, max_degree: usize) -> Self {
        let mut f = self.clone();
        f.max_degree = f.max_degree.min(max_degree);
        f
    }

    /// Value on a bar-monomial (read in this structure's flavor), honouring
    /// the kind contract.
    pub fn eval(&self, x: &Bar) -> Result<Rational> {
        self.value(&x.with_flavor(self.structure.flavor()))
    }

    pub fn eval_word(&self, w: &Word) -> Result<Rational> {
        self.value(&Bar::word(w.clone(), self.structure.flavor()))
    }

    /// Value computed from the defining expression, without using the kind.
    pub fn eval_direct(&self, x: &Bar) -> Result<Rational> {
        let x = x.with_flavor(self.structure.flavor());
        self.check_degree(&x)?;
        self.inner(&x)
    }

    fn check_degree(&self, x: &Bar) -> Result<()> {
        if x.degree() > self.max_degree {
            return Err(Error::DegreeExceeded {
                degree: x.degree(),
                max: self.max_degree,
            });
        }
        Ok(())
    }

    fn value(&self, x: &Bar) -> Result<Rational> {
        self.check_degree(x)?;
        match self.kind {
            Kind::Character if x.is_unit() => return Ok(Rational::one()),
            Kind::Character if x.length() > 1 => {
                let mut acc = Rational::one();
                for w in x.words() {
                    acc *= self.memoized(&Bar::word(w.clone(), x.flavor()))?;
                    if acc.is_zero() {
                        break;
                    }
                }
                return Ok(acc);
            }
            Kind::Infinitesimal if x.length() != 1 => return Ok(Rational::zero()),
            _ => {}
        }
        self.memoized(x)
    }

    fn memoized(&self, x: &Bar) -> Result<Rational> {
        match &self.node.op {
            Op::Counit => return Ok(counit(x)),
            Op::Table(t) => return Ok(t.get(x).cloned().unwrap_or_else(Rational::zero)),
            _ => {}
        }
        if let Some(v) = self.node.memo.lock().unwrap().get(x) {
            return Ok(v.clone());
        }
        let v = self.inner(x)?;
        self.node.memo.lock().unwrap().insert(x.clone(), v.clone());
        Ok(v)
    }

    fn inner(&self, x: &Bar) -> Result<Rational> {
        match &self.node.op {
            Op::Counit => Ok(counit(x)),
            Op::State(phi) => {
                let mut acc = Rational::one();
                for w in x.words() {
                    acc *= phi.get(w)?;
                }
                Ok(acc)
            }
            Op::Cumulant(alpha) => match x.as_word() {
                Some(w) => alpha.get(w),
                None => Ok(Rational::zero()),
            },
            Op::Table(t) => Ok(t.get(x).cloned().unwrap_or_else(Rational::zero)),
            Op::Linear(parts) => {
                let mut acc = Rational::zero();
                for (c, f) in parts {
                    acc += c * f.value(x)?;
                }
                Ok(acc)
            }
            Op::Convolve(f, g) => pair(f, g, CoproductKind::from(self.structure), x),
            Op::Half(side, f, g) => {
                if x.is_unit() {
                    return Ok(Rational::zero());
                }
                pair(f, g, half_kind(*side), x)
            }
            Op::Series(coeffs, powers) => {
                let mut acc = Rational::zero();
                for j in 0..=x.degree().min(powers.len() - 1) {
                    if !coeffs[j].is_zero() {
                        acc += &coeffs[j] * powers[j].value(x)?;
                    }
                }
                Ok(acc)
            }
            Op::HalfExp(side, alpha) => {
                if x.is_unit() {
                    return Ok(Rational::one());
                }
                match side {
                    Side::Prec => pair(alpha, self, CoproductKind::Prec, x),
                    Side::Succ => pair(self, alpha, CoproductKind::Succ, x),
                }
            }
            Op::Antipode(f) => antipode(x, self.structure).pair_with(|y| f.value(y)),
        }
    }

    fn check_same(&self, other: &Functional) -> Result<()> {
        if self.structure != other.structure {
            return Err(mismatch(format!(
                "functionals live on different structures ({} and {})",
                self.structure, other.structure
            )));
        }
        Ok(())
    }

    /// `Σ c_i f_i`; infinitesimal if every term is.
    pub fn linear(parts: Vec<(Rational, Functional)>) -> Result<Functional> {
        let first = parts
            .first()
            .ok_or_else(|| mismatch("empty linear combination"))?
            .1
            .clone();
        for (_, f) in &parts {
            first.check_same(f)?;
        }
        let kind = if parts.iter().all(|(_, f)| f.kind == Kind::Infinitesimal) {
            Kind::Infinitesimal
        } else {
            Kind::General
        };
        let letters = parts.iter().map(|(_, f)| f.letters).min().unwrap();
        let max_degree = parts.iter().map(|(_, f)| f.max_degree).min().unwrap();
        Ok(Self::build(first.structure, kind, letters, max_degree, Op::Linear(parts)))
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        Self::linear(vec![(int(1), self.clone()), (int(1), other.clone())])
    }

    pub fn sub(&self, other: &Functional) -> Result<Functional> {
        Self::linear(vec![(int(1), self.clone()), (int(-1), other.clone())])
    }

    pub fn scale(&self, c: &Rational) -> Functional {
        Self::linear(vec![(c.clone(), self.clone())]).expect("single term")
    }

    fn counit_like(&self) -> Functional {
        Self::counit(self.structure, self.letters, self.max_degree)
    }

    /// `f * g = (f⊗g)∘Δ` for the structure's coproduct.
    pub fn convolve(&self, other: &Functional) -> Result<Functional> {
        self.check_same(other)?;
        let kind = if self.kind == Kind::Character && other.kind == Kind::Character {
            Kind::Character
        } else {
            Kind::General
        };
        Ok(Self::build(
            self.structure,
            kind,
            self.letters.min(other.letters),
            self.max_degree.min(other.max_degree),
            Op::Convolve(self.clone(), other.clone()),
        ))
    }

    /// `f≺g` or `f≻g` on `T(T⁺(A))`, paired against the unreduced
    /// half-coproduct; this realizes `ν≺f = 0`, `f≺ν = f`, `ν≻f = f` and
    /// `f≻ν = 0`. The value at `𝟏` is 0.
    pub fn half_shuffle(&self, other: &Functional, side: Side) -> Result<Functional> {
        self.check_same(other)?;
        if self.structure != Structure::DoubleTensor {
            return Err(mismatch("half-shuffles are defined on T(T⁺(A)) only"));
        }
        let unit = Bar::unit(self.structure.flavor());
        if !self.value(&unit)?.is_zero() && !other.value(&unit)?.is_zero() {
            return Err(Error::UndefinedBoundary);
        }
        Ok(Self::build(
            self.structure,
            Kind::General,
            self.letters.min(other.letters),
            self.max_degree.min(other.max_degree),
            Op::Half(side, self.clone(), other.clone()),
        ))
    }

    pub fn prec(&self, other: &Functional) -> Result<Functional> {
        self.half_shuffle(other, Side::Prec)
    }

    pub fn succ(&self, other: &Functional) -> Result<Functional> {
        self.half_shuffle(other, Side::Succ)
    }

    /// `Σ_j coeffs[j] · self^{*j}` for `self(𝟏) = 0`.
    fn series(&self, kind: Kind, coeff: impl Fn(usize) -> Rational) -> Result<Functional> {
        let d = self.max_degree;
        let mut powers = vec![self.counit_like()];
        for j in 1..=d {
            let next = self.convolve(&powers[j - 1])?;
            powers.push(next);
        }
        let coeffs = (0..=d).map(coeff).collect();
        Ok(Self::build(self.structure, kind, self.letters, d, Op::Series(coeffs, powers)))
    }

    /// `Φ^{-1} = Σ_j (ν−Φ)^{*j}`.
    pub fn invert(&self) -> Result<Functional> {
        let at_unit = self.value(&Bar::unit(self.structure.flavor()))?;
        if !at_unit.is_one() {
            return Err(Error::NonUnital(at_unit.to_string()));
        }
        let kind = if self.kind == Kind::Character {
            Kind::Character
        } else {
            Kind::General
        };
        self.counit_like().sub(self)?.series(kind, |_| int(1))
    }

    /// `Φ∘S`.
    pub fn compose_antipode(&self) -> Functional {
        Self::build(
            self.structure,
            self.kind,
            self.letters,
            self.max_degree,
            Op::Antipode(self.clone()),
        )
    }

    fn require(&self, kind: Kind, what: &str) -> Result<()> {
        if self.kind != kind {
            return Err(mismatch(format!("{what} expects {kind:?} input, got {:?}", self.kind)));
        }
        Ok(())
    }
}

impl From<Structure> for CoproductKind {
    fn from(s: Structure) -> Self {
        s.coproduct_kind()
    }
}

fn half_kind(side: Side) -> CoproductKind {
    match side {
        Side::Prec => CoproductKind::Prec,
        Side::Succ => CoproductKind::Succ,
    }
}

/// `(f⊗g)(Δ_kind(x))`, skipping terms where `f` vanishes.
fn pair(f: &Functional, g: &Functional, kind: CoproductKind, x: &Bar) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (t, c) in coproduct(kind, x).iter() {
        let a = f.value(&t.0)?;
        if a.is_zero() {
            continue;
        }
        let b = g.value(&t.1)?;
        if !b.is_zero() {
            acc += c * a * b;
        }
    }
    Ok(acc)
}

/// `char(φ)`: the multiplicative extension of a state.
pub fn char_extend(phi: &StateTable, structure: Structure) -> Functional {
    Functional::build(
        structure,
        Kind::Character,
        phi.letters(),
        phi.max_degree(),
        Op::State(phi.clone()),
    )
}

/// `gm(Ψ)`: restriction of a character to words.
pub fn gm(psi: &Functional) -> Result<StateTable> {
    psi.require(Kind::Character, "gm")?;
    StateTable::from_fn(psi.letters, psi.max_degree, |w| psi.eval_word(w))
}

/// `ichar(α)`: the infinitesimal character with values `α` on words.
pub fn ichar(alpha: &CumulantTable, structure: Structure) -> Functional {
    Functional::build(
        structure,
        Kind::Infinitesimal,
        alpha.letters(),
        alpha.max_degree(),
        Op::Cumulant(alpha.clone()),
    )
}

/// `igm(α)`: restriction of an infinitesimal character to words.
pub fn igm(alpha: &Functional) -> Result<CumulantTable> {
    alpha.require(Kind::Infinitesimal, "igm")?;
    CumulantTable::from_fn(alpha.letters, alpha.max_degree, |w| alpha.eval_word(w))
}

pub fn convolve(f: &Functional, g: &Functional) -> Result<Functional> {
    f.convolve(g)
}

pub fn half_shuffle(f: &Functional, g: &Functional, side: Side) -> Result<Functional> {
    f.half_shuffle(g, side)
}

/// The left pre-Lie product `f ⊳ g = f≻g − g≺f`.
pub fn prelie(f: &Functional, g: &Functional) -> Result<Functional> {
    f.succ(g)?.sub(&g.prec(f)?)
}

/// `α ⊳_m β = (α⊗β)∘δ_m` on words.
pub fn prelie_m(alpha: &CumulantTable, beta: &CumulantTable) -> Result<CumulantTable> {
    let letters = alpha.letters().min(beta.letters());
    let max_degree = alpha.max_degree().min(beta.max_degree());
    CumulantTable::from_fn(letters, max_degree, |w| {
        delta_m_linearized(w).pair_with(|t| Ok(alpha.get(&t.0)? * beta.get(&t.1)?))
    })
}

/// `exp*(α) = Σ α^{*j}/j!`, terminating at the degree of the argument.
pub fn exp(alpha: &Functional) -> Result<Functional> {
    alpha.require(Kind::Infinitesimal, "exp")?;
    alpha.series(Kind::Character, |j| factorial(j).recip())
}

/// `log*(Φ) = Σ_{j≥1} (−1)^{j+1} (Φ−ν)^{*j}/j`.
pub fn log(phi: &Functional) -> Result<Functional> {
    phi.require(Kind::Character, "log")?;
    phi.sub(&phi.counit_like())?.series(Kind::Infinitesimal, |j| {
        if j == 0 {
            Rational::zero()
        } else {
            let s = if j % 2 == 1 { 1 } else { -1 };
            crate::algebra::rat(s, j as i64)
        }
    })
}

pub fn exp_log(x: &Functional, direction: Direction) -> Result<Functional> {
    match direction {
        Direction::Exp => exp(x),
        Direction::Log => log(x),
    }
}

/// `ℰ_≺(α)` or `ℰ_≻(α)`, evaluated through its fixed-point equation.
pub fn half_exp(alpha: &Functional, side: Side) -> Result<Functional> {
    alpha.require(Kind::Infinitesimal, "half-exponential")?;
    if alpha.structure != Structure::DoubleTensor {
        return Err(mismatch("half-exponentials are defined on T(T⁺(A)) only"));
    }
    Ok(Functional::build(
        alpha.structure,
        Kind::Character,
        alpha.letters,
        alpha.max_degree,
        Op::HalfExp(side, alpha.clone()),
    ))
}

/// `ℒ_≺(Φ) = (Φ−ν)≺Φ^{-1}` or `ℒ_≻(Φ) = Φ^{-1}≻(Φ−ν)`.
pub fn half_log(phi: &Functional, side: Side) -> Result<Functional> {
    phi.require(Kind::Character, "half-logarithm")?;
    let reduced = phi.sub(&phi.counit_like())?;
    let inv = phi.invert()?;
    let mut out = match side {
        Side::Prec => reduced.prec(&inv)?,
        Side::Succ => inv.succ(&reduced)?,
    };
    out.kind = Kind::Infinitesimal;
    Ok(out)
}

pub fn half_exp_log(x: &Functional, side: Side, direction: Direction) -> Result<Functional> {
    match direction {
        Direction::Exp => half_exp(x, side),
        Direction::Log => half_log(x, side),
    }
}

pub fn invert(phi: &Functional) -> Result<Functional> {
    phi.invert()
}
