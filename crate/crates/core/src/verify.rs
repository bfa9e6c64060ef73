//! Property suites behind `ncprob verify` and the acceptance target.
//!
//! Each suite is a list of named checks. Exhaustive checks walk every word
//! up to the configured degree; randomized checks draw one ChaCha8 stream
//! per trial, seeded from `(seed, check name, trial index)`, so a report is
//! reproducible whatever order rayon finishes the trials in.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{factorial, int, rat, Bar, Flavor, LinComb, Rational, Tensor, Word};
use crate::cumulants::{
    classical_convolve, cumulants_to_moments, moments_to_cumulants, CumulantKind,
};
use crate::error::{Error, Result};
use crate::functionals::{
    char_extend, exp, gm, half_exp, half_log, ichar, igm, invert, log, prelie, prelie_m,
    CumulantTable, Functional, Side, StateTable,
};
use crate::hopf::{
    antipode_defect, co_prelie_defect, coassociativity_defect, counit_defect, delta, delta_b,
    delta_f, delta_m_linearized, multiplicativity_defect, parse_coproduct, reduce,
    right_co_prelie_defect, Coproduct, CoproductKind, Structure,
};
use crate::partitions::{enumerate, enumerate_ordered, nesting_forest, NcPartition, PartitionKind};
use crate::universal::{
    additive_convolution, group_law_check, universal_product, TaggedWord, UniversalKind,
    UniversalProduct,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Coassoc,
    ShuffleAxioms,
    CoPrelie,
    GroupLaws,
    CumulantRoundtrips,
    LemmaPowers,
    FundamentalIdentity,
    WorkedExamples,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Coassoc,
        Suite::ShuffleAxioms,
        Suite::CoPrelie,
        Suite::GroupLaws,
        Suite::CumulantRoundtrips,
        Suite::LemmaPowers,
        Suite::FundamentalIdentity,
        Suite::WorkedExamples,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coassoc => "coassoc",
            Suite::ShuffleAxioms => "shuffle-axioms",
            Suite::CoPrelie => "co-prelie",
            Suite::GroupLaws => "group-laws",
            Suite::CumulantRoundtrips => "cumulant-roundtrips",
            Suite::LemmaPowers => "lemma-powers",
            Suite::FundamentalIdentity => "fundamental-identity",
            Suite::WorkedExamples => "paper-examples",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub max_degree: usize,
    pub trials: usize,
    /// Alphabet size for exhaustive word checks and random tables.
    pub letters: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            max_degree: 4,
            trials: 5,
            letters: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Words, bars or trials examined.
    pub cases: usize,
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub suite: Suite,
    pub config: Config,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check plus counterexamples; no timings, so identical
    /// runs render identically.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite {} (seed {}, max degree {}, trials {}, letters {})\n",
            self.suite, c.seed, c.max_degree, c.trials, c.letters
        );
        for r in &self.checks {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {}  ({} checked)", r.name, r.cases);
            if let Some(x) = &r.counterexample {
                let _ = writeln!(out, "      counterexample: {x}");
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} of {} checks passed",
            self.checks.len() - failed,
            self.checks.len()
        );
        out
    }

    pub fn render_timings(&self) -> String {
        let mut out = String::new();
        for r in &self.checks {
            let _ = writeln!(out, "{:>9.3}s  {}", r.elapsed.as_secs_f64(), r.name);
        }
        out
    }
}

/// Runs one suite; `All` concatenates the others in declaration order.
pub fn run(suite: Suite, cfg: &Config) -> Result<RunReport> {
    let checks = match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in &Suite::ALL[..Suite::ALL.len() - 1] {
                all.extend(checks_of(*s, cfg)?);
            }
            all
        }
        s => checks_of(s, cfg)?,
    };
    Ok(RunReport {
        suite,
        config: cfg.clone(),
        checks,
    })
}

fn checks_of(suite: Suite, cfg: &Config) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Coassoc => coassoc(cfg),
        Suite::ShuffleAxioms => shuffle_axioms(cfg),
        Suite::CoPrelie => co_prelie(cfg),
        Suite::GroupLaws => group_laws(cfg),
        Suite::CumulantRoundtrips => cumulant_roundtrips(cfg),
        Suite::LemmaPowers => lemma_powers(cfg),
        Suite::FundamentalIdentity => fundamental_identity(cfg),
        Suite::WorkedExamples => worked_examples(),
        Suite::All => unreachable!("expanded by run"),
    }
}

/// Cases examined and the first counterexample, if any.
type Outcome = (usize, Option<String>);

fn check(name: impl Into<String>, body: impl FnOnce() -> Result<Outcome>) -> Result<CheckResult> {
    let start = Instant::now();
    let (cases, counterexample) = body()?;
    Ok(CheckResult {
        name: name.into(),
        passed: counterexample.is_none(),
        cases,
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// `f` on every item in parallel; the first failure in input order wins.
fn each<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Option<String>> + Sync) -> Result<Outcome> {
    let found: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_>>()?;
    Ok((items.len(), found.into_iter().flatten().next()))
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn trial_rng(seed: u64, name: &str, trial: usize) -> ChaCha8Rng {
    let mixed = fnv1a(name) ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64).rotate_left(32);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// `cfg.trials` independent seeded trials, counted as cases.
fn trials(
    cfg: &Config,
    name: &str,
    f: impl Fn(&mut ChaCha8Rng) -> Result<Option<String>> + Sync,
) -> Result<Outcome> {
    let found: Vec<Option<String>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, name, t);
            Ok(f(&mut rng)?.map(|x| format!("trial {t}: {x}")))
        })
        .collect::<Result<_>>()?;
    Ok((cfg.trials, found.into_iter().flatten().next()))
}

fn mismatch(at: impl fmt::Display, left: &Rational, right: &Rational) -> Option<String> {
    (left != right).then(|| format!("at {at}: {left} vs {right}"))
}

trait Term {
    fn render(&self) -> String;
}

impl Term for Bar {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Term for Tensor<Bar, Bar> {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<A: fmt::Display> Term for (A, A, A) {
    fn render(&self) -> String {
        format!("{}⊗{}⊗{}", self.0, self.1, self.2)
    }
}

/// At most six terms of a nonzero defect.
fn nonzero<B: Ord + Clone + Term>(at: impl fmt::Display, defect: &LinComb<B>) -> Option<String> {
    if defect.is_zero() {
        return None;
    }
    let mut text = String::new();
    for (i, (b, c)) in defect.iter().take(6).enumerate() {
        let sign = if c < &Rational::zero() { "−" } else if i > 0 { "+" } else { "" };
        let _ = write!(text, "{}{sign}{}·{}", if i > 0 { " " } else { "" }, c.abs(), b.render());
    }
    if defect.len() > 6 {
        text.push_str(" …");
    }
    Some(format!("at {at}: defect {text}"))
}

fn all_bars(structure: Structure, letters: u32, max_degree: usize) -> Vec<Bar> {
    let mut out = vec![Bar::unit(structure.flavor())];
    out.extend(Bar::all_up_to(letters, max_degree, structure.flavor()));
    out
}

fn agree_on(f: &Functional, g: &Functional, xs: &[Bar]) -> Result<Option<String>> {
    for x in xs {
        let (a, b) = (f.eval(x)?, g.eval(x)?);
        if a != b {
            return Ok(mismatch(x, &a, &b));
        }
    }
    Ok(None)
}

fn agree_on_words(f: &Functional, g: &Functional, letters: u32, max_degree: usize) -> Result<Option<String>> {
    for w in Word::all_up_to(letters, max_degree) {
        let (a, b) = (f.eval_word(&w)?, g.eval_word(&w)?);
        if a != b {
            return Ok(mismatch(&w, &a, &b));
        }
    }
    Ok(None)
}

fn tables_agree(a: &StateTable, b: &StateTable) -> Result<Option<String>> {
    for w in a.words() {
        let (x, y) = (a.get(&w)?, b.get(&w)?);
        if x != y {
            return Ok(mismatch(&w, &x, &y));
        }
    }
    Ok(None)
}

fn cumulants_agree(a: &CumulantTable, b: &CumulantTable) -> Result<Option<String>> {
    for w in a.words() {
        let (x, y) = (a.get(&w)?, b.get(&w)?);
        if x != y {
            return Ok(mismatch(&w, &x, &y));
        }
    }
    Ok(None)
}

fn symbol(kind: CoproductKind) -> &'static str {
    match kind {
        CoproductKind::Full => "Δ",
        CoproductKind::Monotone => "Δ_m",
        CoproductKind::Prec => "Δ⁺_≺",
        CoproductKind::Succ => "Δ⁺_≻",
        CoproductKind::Boolean => "Δ_b",
        CoproductKind::Free => "Δ_f",
    }
}

const BIALGEBRAS: [CoproductKind; 4] = [
    CoproductKind::Full,
    CoproductKind::Monotone,
    CoproductKind::Boolean,
    CoproductKind::Free,
];

/// Antipode checks stop at this degree whatever the suite degree.
pub const ANTIPODE_MAX_DEGREE: usize = 5;

fn coassoc(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let words = Word::all_up_to(l, d);
    let mut pairs = Vec::new();
    for u in &words {
        for v in &words {
            if u.degree() + v.degree() <= d {
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for kind in BIALGEBRAS {
        let f = kind.flavor();
        let bar = |w: &Word| Bar::word(w.clone(), f);
        out.push(check(format!("coassociativity of {}", symbol(kind)), || {
            each(&words, |w| Ok(nonzero(w, &coassociativity_defect(kind, &bar(w)))))
        })?);
        out.push(check(format!("counit of {}", symbol(kind)), || {
            each(&words, |w| {
                let (left, right) = counit_defect(kind, &bar(w));
                Ok(nonzero(w, &left).or_else(|| nonzero(w, &right)))
            })
        })?);
        out.push(check(format!("multiplicativity of {}", symbol(kind)), || {
            each(&pairs, |(u, v)| {
                Ok(nonzero(format!("{u} · {v}"), &multiplicativity_defect(kind, &bar(u), &bar(v))))
            })
        })?);
    }
    let short = Word::all_up_to(l, d.min(ANTIPODE_MAX_DEGREE));
    for s in Structure::ALL {
        out.push(check(format!("antipode m(S⊗id)Δ = m(id⊗S)Δ = uν on {s}"), || {
            each(&short, |w| {
                let (left, right) = antipode_defect(s, &Bar::word(w.clone(), s.flavor()));
                Ok(nonzero(w, &left).or_else(|| nonzero(w, &right)))
            })
        })?);
    }
    Ok(out)
}

const T: Structure = Structure::DoubleTensor;

fn shuffle_axioms(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let xs = all_bars(T, l, d);
    let nonunit = &xs[1..];
    let triple = |rng: &mut ChaCha8Rng| {
        (
            Functional::random(rng, T, l, d),
            Functional::random(rng, T, l, d),
            Functional::random(rng, T, l, d),
        )
    };
    let mut out = Vec::new();
    let name = "(A1) (f≺g)≺h = f≺(g*h)";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (f, g, h) = triple(rng);
            agree_on(&f.prec(&g)?.prec(&h)?, &f.prec(&g.convolve(&h)?)?, &xs)
        })
    })?);
    let name = "(A2) (f≻g)≺h = f≻(g≺h)";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (f, g, h) = triple(rng);
            agree_on(&f.succ(&g)?.prec(&h)?, &f.succ(&g.prec(&h)?)?, &xs)
        })
    })?);
    let name = "(A3) f≻(g≻h) = (f*g)≻h";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (f, g, h) = triple(rng);
            agree_on(&f.succ(&g.succ(&h)?)?, &f.convolve(&g)?.succ(&h)?, &xs)
        })
    })?);
    let name = "splitting f*g = f≺g + f≻g off the unit";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (f, g, _) = triple(rng);
            agree_on(&f.convolve(&g)?, &f.prec(&g)?.add(&f.succ(&g)?)?, nonunit)
        })
    })?);
    let name = "left pre-Lie identity for f⊳g = f≻g − g≺f";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (f, g, h) = triple(rng);
            let assoc = |x: &Functional, y: &Functional, z: &Functional| -> Result<Functional> {
                prelie(&prelie(x, y)?, z)?.sub(&prelie(x, &prelie(y, z)?)?)
            };
            agree_on(&assoc(&f, &g, &h)?, &assoc(&g, &f, &h)?, &xs)
        })
    })?);
    for side in [Side::Prec, Side::Succ] {
        let arrow = if side == Side::Prec { "≺" } else { "≻" };
        let name = format!("ℒ_{arrow}(ℰ_{arrow}(α)) = α and ℰ_{arrow}(ℒ_{arrow}(Φ)) = Φ");
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let alpha = ichar(&CumulantTable::random(rng, l, d), T);
                let back = half_log(&half_exp(&alpha, side)?, side)?;
                if let Some(x) = agree_on(&back, &alpha, &xs)? {
                    return Ok(Some(format!("ℒ(ℰ(α)) {x}")));
                }
                let phi = char_extend(&StateTable::random(rng, l, d), T);
                let again = half_exp(&half_log(&phi, side)?, side)?;
                Ok(agree_on(&again, &phi, &xs)?.map(|x| format!("ℰ(ℒ(Φ)) {x}")))
            })
        })?);
    }
    let name = "half-logarithms are infinitesimal";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let phi = char_extend(&StateTable::random(rng, l, d), T);
            for side in [Side::Prec, Side::Succ] {
                let lg = half_log(&phi, side)?;
                for x in xs.iter().filter(|x| x.length() != 1) {
                    let v = lg.eval_direct(x)?;
                    if !v.is_zero() {
                        return Ok(Some(format!("{side:?} side at {x}: {v}")));
                    }
                }
            }
            Ok(None)
        })
    })?);
    let name = "Φ*Φ⁻¹ = ν and Φ⁻¹ = Φ∘S";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let phi = char_extend(&StateTable::random(rng, l, d), T);
            let inv = invert(&phi)?;
            let nu = Functional::counit(T, l, d);
            if let Some(x) = agree_on(&phi.convolve(&inv)?, &nu, &xs)? {
                return Ok(Some(x));
            }
            agree_on(&inv, &phi.compose_antipode(), &xs)
        })
    })?);
    Ok(out)
}

fn co_prelie(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let words = Word::all_up_to(l, d);
    let mut out = Vec::new();
    out.push(check("left co-pre-Lie identity a_m = (τ⊗id)a_m", || {
        each(&words, |w| Ok(nonzero(w, &co_prelie_defect(w))))
    })?);
    out.push(check("right co-pre-Lie identity a_m = (id⊗τ)a_m", || {
        each(&words, |w| Ok(nonzero(w, &right_co_prelie_defect(w))))
    })?);
    let random3 = |rng: &mut ChaCha8Rng| {
        (
            CumulantTable::random(rng, l, d),
            CumulantTable::random(rng, l, d),
            CumulantTable::random(rng, l, d),
        )
    };
    let assoc = |x: &CumulantTable, y: &CumulantTable, z: &CumulantTable| -> Result<CumulantTable> {
        prelie_m(&prelie_m(x, y)?, z)?.add(&prelie_m(x, &prelie_m(y, z)?)?.scale(&int(-1)))
    };
    let name = "left pre-Lie relation for α⊳β = (α⊗β)∘δ_m";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (a, b, c) = random3(rng);
            cumulants_agree(&assoc(&a, &b, &c)?, &assoc(&b, &a, &c)?)
        })
    })?);
    let name = "right pre-Lie relation for α⊳β = (α⊗β)∘δ_m";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (a, b, c) = random3(rng);
            cumulants_agree(&assoc(&a, &b, &c)?, &assoc(&a, &c, &b)?)
        })
    })?);
    let name = "bracket [α,β]_{⋆m} = α⊳β − β⊳α";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (a, b, _) = random3(rng);
            let (fa, fb) = (ichar(&a, Structure::Monotone), ichar(&b, Structure::Monotone));
            let bracket = igm_like(&fa.convolve(&fb)?.sub(&fb.convolve(&fa)?)?, l, d)?;
            let lie = prelie_m(&a, &b)?.add(&prelie_m(&b, &a)?.scale(&int(-1)))?;
            cumulants_agree(&bracket, &lie)
        })
    })?);
    Ok(out)
}

/// Word values of any functional, as a cumulant-shaped table.
fn igm_like(f: &Functional, letters: u32, max_degree: usize) -> Result<CumulantTable> {
    CumulantTable::from_fn(letters, max_degree, |w| f.eval_word(w))
}

fn group_laws(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let pair = |rng: &mut ChaCha8Rng| (StateTable::random(rng, l, d), StateTable::random(rng, l, d));
    let mut out = Vec::new();
    for kind in UniversalKind::ALL {
        let name = format!("{} additive convolution = Hopf-side group law", kind.name());
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let (phi, psi) = pair(rng);
                let report = group_law_check(kind, &phi, &psi, d)?;
                Ok(report.mismatch.map(|(w, a, b)| format!("at {w}: additive {a} vs Hopf {b}")))
            })
        })?);
    }
    let routes = [
        (UniversalKind::Monotone, Structure::Monotone, "⋆_m"),
        (UniversalKind::Boolean, Structure::Boolean, "⋆_b"),
        (UniversalKind::Free, Structure::Free, "⋆_f"),
    ];
    for (kind, s, star) in routes {
        let name = format!("{} additive convolution = gm(char φ {star} char ψ)", kind.name());
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let (phi, psi) = pair(rng);
                let additive = additive_convolution(kind, &phi, &psi, d)?;
                let hopf = gm(&char_extend(&phi, s).convolve(&char_extend(&psi, s))?)?;
                tables_agree(&additive, &hopf)
            })
        })?);
    }
    let da = d.min(4);
    for kind in UniversalKind::ALL {
        let name = format!("associativity of {} convolution", kind.name());
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let (phi, psi) = pair(rng);
                let chi = StateTable::random(rng, l, d);
                let left = additive_convolution(kind, &additive_convolution(kind, &phi, &psi, da)?, &chi, da)?;
                let right = additive_convolution(kind, &phi, &additive_convolution(kind, &psi, &chi, da)?, da)?;
                tables_agree(&left, &right)
            })
        })?);
    }
    let name = "antimonotone(φ,ψ) = monotone(ψ,φ) on tag-swapped words";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (phi, psi) = pair(rng);
            let mut anti = UniversalProduct::new(UniversalKind::Antimonotone, &phi, &psi);
            let mut mono = UniversalProduct::new(UniversalKind::Monotone, &psi, &phi);
            for w in Word::all_up_to(l, d) {
                for mask in 0..(1u64 << w.degree()) {
                    let tw = TaggedWord::tag_letters(&w, |i| tag_bit(mask, i));
                    let (a, b) = (anti.eval(&tw)?, mono.eval(&tw.swap_tags())?);
                    if a != b {
                        return Ok(mismatch(&tw, &a, &b));
                    }
                }
            }
            Ok(None)
        })
    })?);
    let name = "free product independent of memoization";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (phi, psi) = pair(rng);
            let mut memo = UniversalProduct::new(UniversalKind::Free, &phi, &psi);
            let mut plain = UniversalProduct::new(UniversalKind::Free, &phi, &psi).without_memo();
            for w in Word::all_up_to(l, d) {
                let (a, b) = (memo.doubled(&w)?, plain.doubled(&w)?);
                if a != b {
                    return Ok(mismatch(&w, &a, &b));
                }
            }
            Ok(None)
        })
    })?);
    let additive = [
        (UniversalKind::Free, CumulantKind::Free),
        (UniversalKind::Boolean, CumulantKind::Boolean),
    ];
    for (kind, ck) in additive {
        let name = format!("{ck} cumulants add under {} convolution", kind.name());
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let (phi, psi) = pair(rng);
                let conv = additive_convolution(kind, &phi, &psi, d)?;
                let sum = moments_to_cumulants(ck, &phi)?.add(&moments_to_cumulants(ck, &psi)?)?;
                cumulants_agree(&moments_to_cumulants(ck, &conv)?, &sum)
            })
        })?);
    }
    let name = "classical cumulants add under classical convolution";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let (phi, psi) = pair(rng);
            let (phi, psi) = (symmetrize(&phi)?, symmetrize(&psi)?);
            let conv = classical_convolve(&phi, &psi)?;
            let c = |t: &StateTable| moments_to_cumulants(CumulantKind::Classical, t);
            cumulants_agree(&c(&conv)?, &c(&phi)?.add(&c(&psi)?)?)
        })
    })?);
    let name = "monotone cumulants of N-fold powers scale by N (N ≤ 3)";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let phi = StateTable::random(rng, l, d);
            let h = moments_to_cumulants(CumulantKind::Monotone, &phi)?;
            let mut power = phi.clone();
            for n in 2..=3 {
                power = additive_convolution(UniversalKind::Monotone, &power, &phi, d)?;
                let hn = moments_to_cumulants(CumulantKind::Monotone, &power)?;
                if let Some(x) = cumulants_agree(&hn, &h.scale(&int(n)))? {
                    return Ok(Some(format!("N = {n} {x}")));
                }
            }
            Ok(None)
        })
    })?);
    Ok(out)
}

fn tag_bit(mask: u64, i: usize) -> crate::universal::Tag {
    if mask >> i & 1 == 1 {
        crate::universal::Tag::Two
    } else {
        crate::universal::Tag::One
    }
}

fn symmetrize(phi: &StateTable) -> Result<StateTable> {
    StateTable::from_fn(phi.letters(), phi.max_degree(), |w| phi.get(&w.sorted()))
}

fn cumulant_roundtrips(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let mut out = Vec::new();
    for kind in CumulantKind::ALL {
        let name = format!("{kind} moments → cumulants → moments");
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let phi = StateTable::random(rng, l, d);
                tables_agree(&cumulants_to_moments(kind, &moments_to_cumulants(kind, &phi)?)?, &phi)
            })
        })?);
        let name = format!("{kind} cumulants → moments → cumulants");
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let c = CumulantTable::random(rng, l, d);
                cumulants_agree(&moments_to_cumulants(kind, &cumulants_to_moments(kind, &c)?)?, &c)
            })
        })?);
    }
    Ok(out)
}

/// `Σ_π Π_i α_i(a_{π_i})` over ordered partitions of `[n]` with `k` blocks.
fn ordered_sum(kind: PartitionKind, w: &Word, alphas: &[&CumulantTable]) -> Result<Rational> {
    let mut acc = Rational::zero();
    for op in enumerate_ordered(kind, w.degree())? {
        if op.partition.block_count() != alphas.len() {
            continue;
        }
        let mut prod = int(1);
        for (blk, a) in op.blocks_in_order().zip(alphas) {
            prod *= a.get(&w.select(blk))?;
        }
        acc += prod;
    }
    Ok(acc)
}

/// `k! · Σ_π Π α(a_{π_i})` over unordered partitions with `k` blocks.
fn power_sum(kind: PartitionKind, w: &Word, alpha: &CumulantTable, k: usize) -> Result<Rational> {
    let mut acc = Rational::zero();
    for p in enumerate(kind, w.degree())? {
        if p.block_count() != k {
            continue;
        }
        let mut prod = int(1);
        for blk in p.blocks() {
            prod *= alpha.get(&w.select(blk))?;
        }
        acc += prod;
    }
    Ok(acc * factorial(k))
}

fn lemma_powers(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let words = Word::all_up_to(l, d);
    let mut out = Vec::new();
    let name = "exp^{⋆m}(α) = Σ_{π∈NC} α_π / t(π)!";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let alpha = CumulantTable::random(rng, l, d);
            let e = exp(&ichar(&alpha, Structure::Monotone))?;
            for w in &words {
                let mut acc = Rational::zero();
                for p in enumerate(PartitionKind::Noncrossing, w.degree())? {
                    let t = nesting_forest(&NcPartition::new(p.clone())?).tree_factorial();
                    let mut prod = rat(1, t as i64);
                    for blk in p.blocks() {
                        prod *= alpha.get(&w.select(blk))?;
                    }
                    acc += prod;
                }
                let v = e.eval_word(w)?;
                if v != acc {
                    return Ok(mismatch(w, &v, &acc));
                }
            }
            Ok(None)
        })
    })?);
    let lemmas = [
        (Structure::Boolean, PartitionKind::Interval, "⋆_b", "Boolean"),
        (Structure::Free, PartitionKind::Noncrossing, "⋆_f", "noncrossing"),
    ];
    for (s, pk, star, family) in lemmas {
        let name = format!("α^{{{star} k}} = k!·Σ over {family} partitions with k blocks");
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let alpha = CumulantTable::random(rng, l, d);
                let a = ichar(&alpha, s);
                let mut power = a.clone();
                for k in 1..=d {
                    if k > 1 {
                        power = power.convolve(&a)?;
                    }
                    for w in &words {
                        let (v, expected) = (power.eval_word(w)?, power_sum(pk, w, &alpha, k)?);
                        if v != expected {
                            return Ok(mismatch(format!("k = {k}, {w}"), &v, &expected));
                        }
                    }
                }
                Ok(None)
            })
        })?);
        let name = format!("α_1{star}⋯{star}α_k = Σ over ordered {family} partitions (k ≤ 3)");
        out.push(check(name.clone(), || {
            trials(cfg, &name, |rng| {
                let tables: Vec<CumulantTable> = (0..3).map(|_| CumulantTable::random(rng, l, d)).collect();
                let mut product = ichar(&tables[0], s);
                for k in 1..=3 {
                    if k > 1 {
                        product = product.convolve(&ichar(&tables[k - 1], s))?;
                    }
                    let refs: Vec<&CumulantTable> = tables[..k].iter().collect();
                    for w in &words {
                        let (v, expected) = (product.eval_word(w)?, ordered_sum(pk, w, &refs)?);
                        if v != expected {
                            return Ok(mismatch(format!("k = {k}, {w}"), &v, &expected));
                        }
                    }
                }
                Ok(None)
            })
        })?);
    }
    Ok(out)
}

fn fundamental_identity(cfg: &Config) -> Result<Vec<CheckResult>> {
    let (l, d) = (cfg.letters, cfg.max_degree);
    let mut out = Vec::new();
    let name = "Φ = exp*(ρ) = ℰ_≺(κ) = ℰ_≻(β) with ρ = log*Φ, κ = ℒ_≺Φ, β = ℒ_≻Φ";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let phi = char_extend(&StateTable::random(rng, l, d), T);
            let rho = log(&phi)?;
            let kappa = half_log(&phi, Side::Prec)?;
            let beta = half_log(&phi, Side::Succ)?;
            let rebuilt = [
                ("exp*(ρ)", exp(&rho)?),
                ("ℰ_≺(κ)", half_exp(&kappa, Side::Prec)?),
                ("ℰ_≻(β)", half_exp(&beta, Side::Succ)?),
            ];
            for (label, f) in rebuilt {
                if let Some(x) = agree_on_words(&f, &phi, l, d)? {
                    return Ok(Some(format!("{label} {x}")));
                }
            }
            Ok(None)
        })
    })?);
    let name = "ρ, κ, β are the monotone, free and Boolean cumulants";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let state = StateTable::random(rng, l, d);
            let phi = char_extend(&state, T);
            let routes = [
                ("ρ", igm(&log(&phi)?)?, CumulantKind::Monotone),
                ("κ", igm(&half_log(&phi, Side::Prec)?)?, CumulantKind::Free),
                ("β", igm(&half_log(&phi, Side::Succ)?)?, CumulantKind::Boolean),
            ];
            for (label, table, kind) in routes {
                if let Some(x) = cumulants_agree(&table, &moments_to_cumulants(kind, &state)?)? {
                    return Ok(Some(format!("{label} {x}")));
                }
            }
            Ok(None)
        })
    })?);
    let name = "log* on T(T⁺) agrees with log^{⋆m} on words";
    out.push(check(name, || {
        trials(cfg, name, |rng| {
            let state = StateTable::random(rng, l, d);
            let big = log(&char_extend(&state, T))?;
            let small = log(&char_extend(&state, Structure::Monotone))?;
            cumulants_agree(&igm(&big)?, &igm(&small)?)
        })
    })?);
    Ok(out)
}

/// An expansion from the literature, as text in the coproduct syntax.
struct Expansion {
    label: &'static str,
    input: &'static str,
    expected: &'static str,
    compute: fn(&Bar) -> Coproduct,
}

fn reduced_m(x: &Bar) -> Coproduct {
    reduce(&delta(x, Flavor::Commutative), x)
}

fn reduced_b(x: &Bar) -> Coproduct {
    reduce(&delta_b(x), x)
}

fn linearized(x: &Bar) -> Coproduct {
    let w = x.as_word().expect("word input");
    delta_m_linearized(w).map_basis(|t| {
        Tensor(
            Bar::word(t.0.clone(), Flavor::Commutative),
            Bar::word(t.1.clone(), Flavor::Commutative),
        )
    })
}

const FREE_4_HALF: &str = "a1a2a3a4⊗1 + a1⊗a2a3a4 + a1a2⊗a3a4 + a1a4⊗a2a3 + a1a2a3⊗a4 \
     + a1a2a4⊗a3 + a1a3a4⊗a2 + a1|a3⊗a2a4 + a1a3⊗a2|a4 - a1|a3⊗a2|a4";

const EXPANSIONS: [Expansion; 6] = [
    Expansion {
        label: "reduced Δ_m(a1a2a3)",
        input: "a1a2a3",
        expected: "a2a3⊗a1 + a1a2⊗a3 + a1a3⊗a2 + a1⊗a2a3 + a2⊗a1|a3 + a3⊗a1a2",
        compute: reduced_m,
    },
    Expansion {
        label: "δ_m(a1a2a3)",
        input: "a1a2a3",
        expected: "a2a3⊗a1 + a1a2⊗a3 + a1a3⊗a2 + a1⊗a2a3 + a3⊗a1a2",
        compute: linearized,
    },
    Expansion {
        label: "δ_m(a1a2a3a4)",
        input: "a1a2a3a4",
        expected: "a2a3a4⊗a1 + a1a3a4⊗a2 + a1a2a4⊗a3 + a1a2a3⊗a4 + a1⊗a2a3a4 \
                   + a4⊗a1a2a3 + a1a2⊗a3a4 + a3a4⊗a1a2 + a1a4⊗a2a3",
        compute: linearized,
    },
    Expansion {
        label: "reduced Δ_b(a1a2a3)",
        input: "a1a2a3",
        expected: "a2a3⊗a1 + a1a2⊗a3 + a1|a3⊗a2 + a1⊗a2a3 + a2⊗a1|a3 + a3⊗a1a2",
        compute: reduced_b,
    },
    Expansion {
        label: "Δ_f(a1a2)",
        input: "a1a2",
        expected: "a1a2⊗1 + a1⊗a2 + a2⊗a1 + 1⊗a1a2",
        compute: delta_f,
    },
    Expansion {
        label: "Δ_f(a1a2a3)",
        input: "a1a2a3",
        expected: "a1a2a3⊗1 + a1⊗a2a3 + a1a2⊗a3 + a1a3⊗a2 + a2⊗a1a3 + a3⊗a1a2 \
                   + a2a3⊗a1 + 1⊗a1a2a3",
        compute: delta_f,
    },
];

fn expansion_check(label: String, computed: Coproduct, expected: Coproduct) -> Result<CheckResult> {
    check(label, || {
        let diff = computed.clone() - expected;
        Ok((computed.len(), (!diff.is_zero()).then(|| format!("computed {computed}; difference {diff}"))))
    })
}

fn anchor(label: &str, got: Rational, golden: Rational) -> Result<CheckResult> {
    check(label, || Ok((1, mismatch("value", &got, &golden))))
}

/// The bit-exact expansions and the pinned numeric anchors.
pub fn worked_examples() -> Result<Vec<CheckResult>> {
    let mut out = expansions()?;
    out.extend(numeric_anchors()?);
    Ok(out)
}

/// The bit-exact coproduct expansions alone.
pub fn expansions() -> Result<Vec<CheckResult>> {
    let c = Flavor::Commutative;
    let mut out = Vec::new();
    for e in &EXPANSIONS {
        let x = Bar::parse(e.input, c)?;
        out.push(expansion_check(e.label.to_string(), (e.compute)(&x), parse_coproduct(e.expected, c)?)?);
    }
    let half = parse_coproduct(FREE_4_HALF, c)?;
    let x = Bar::parse("a1a2a3a4", c)?;
    out.push(expansion_check(
        "Δ_f(a1a2a3a4) = (id + τ)(…) with −a1|a3⊗a2|a4".into(),
        delta_f(&x),
        half.clone() + half.swap(),
    )?);
    Ok(out)
}

fn univariate(m: &[i64]) -> StateTable {
    StateTable::univariate(&m.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn a_power(n: usize) -> Word {
    Word::from_indices(&vec![1; n])
}

/// Derived anchors, each computed by two independent routes and pinned.
pub fn numeric_anchors() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let bernoulli = univariate(&[0, 1, 0, 1]);
    for (kind, ck, m2, m4) in [
        (UniversalKind::Free, CumulantKind::Free, 2, 6),
        (UniversalKind::Boolean, CumulantKind::Boolean, 2, 4),
    ] {
        let conv = additive_convolution(kind, &bernoulli, &bernoulli, 4)?;
        let c = moments_to_cumulants(ck, &bernoulli)?;
        let oracle = cumulants_to_moments(ck, &c.add(&c)?)?;
        for (n, golden) in [(2, m2), (4, m4)] {
            let w = a_power(n);
            let label = format!("{} Bernoulli self-convolution m{n} = {golden}", kind.name());
            let (got, via) = (conv.get(&w)?, oracle.get(&w)?);
            out.push(check(label, || {
                Ok((2, mismatch("universal product", &got, &int(golden)).or_else(|| mismatch("cumulant oracle", &via, &int(golden)))))
            })?);
        }
    }
    let (m1, m2, m3) = (rat(3, 2), rat(-1, 3), rat(5, 7));
    let phi = StateTable::univariate(&[m1.clone(), m2.clone(), m3.clone()]);
    let formula = &m3 - rat(5, 2) * &m1 * &m2 + rat(3, 2) * &m1 * &m1 * &m1;
    let inverted = moments_to_cumulants(CumulantKind::Monotone, &phi)?.get(&a_power(3))?;
    let via_log = log(&char_extend(&phi, Structure::Monotone))?.eval_word(&a_power(3))?;
    out.push(check("monotone h3 = m3 − (5/2)m1m2 + (3/2)m1³", || {
        Ok((2, mismatch("inversion", &inverted, &formula).or_else(|| mismatch("log^{⋆m}", &via_log, &formula))))
    })?);
    let ones = univariate(&[1, 1, 1]);
    out.push(anchor(
        "monotone h3 = 0 at m1 = m2 = m3 = 1",
        moments_to_cumulants(CumulantKind::Monotone, &ones)?.get(&a_power(3))?,
        int(0),
    )?);
    let gauss = univariate(&[0, 1, 0, 3]);
    let doubled = classical_convolve(&gauss, &gauss)?.get(&a_power(4))?;
    let c = moments_to_cumulants(CumulantKind::Classical, &gauss)?;
    let via = cumulants_to_moments(CumulantKind::Classical, &c.add(&c)?)?.get(&a_power(4))?;
    out.push(check("classical Gaussian self-convolution m4 = 12", || {
        Ok((2, mismatch("subset expansion", &doubled, &int(12)).or_else(|| mismatch("cumulant oracle", &via, &int(12)))))
    })?);
    let m11 = univariate(&[1, 1]);
    out.push(anchor(
        "monotone convolution at a² with m1 = m2 = 1 gives 4",
        additive_convolution(UniversalKind::Monotone, &m11, &m11, 2)?.get(&a_power(2))?,
        int(4),
    )?);
    let p1 = StateTable::random(&mut ChaCha8Rng::seed_from_u64(11), 3, 2);
    let p2 = StateTable::random(&mut ChaCha8Rng::seed_from_u64(12), 3, 2);
    let tw = TaggedWord::tag_letters(&Word::from_indices(&[1, 2, 3]), |i| tag_bit(0b010, i));
    let v = |s: &StateTable, w: &[u32]| s.get(&Word::from_indices(w));
    out.push(anchor(
        "free product on [a1]¹[a2]²[a3]¹ = φ1(a1a3)φ2(a2)",
        universal_product(UniversalKind::Free, &p1, &p2, &tw)?,
        v(&p1, &[1, 3])? * v(&p2, &[2])?,
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Config {
        Config {
            seed: 3,
            max_degree: 3,
            trials: 2,
            letters: 2,
        }
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn worked_examples_pass() {
        let checks = worked_examples().unwrap();
        for c in &checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(Suite::GroupLaws, &small()).unwrap();
        let b = run(Suite::GroupLaws, &small()).unwrap();
        assert_eq!(a.render(), b.render());
        assert!(a.passed(), "{}", a.render());
    }

    #[test]
    fn co_prelie_reports_the_left_identity_failure() {
        let r = run(Suite::CoPrelie, &small()).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(
            failed,
            [
                "left co-pre-Lie identity a_m = (τ⊗id)a_m",
                "left pre-Lie relation for α⊳β = (α⊗β)∘δ_m"
            ]
        );
        let first = r.checks[0].counterexample.as_deref().unwrap();
        assert!(first.starts_with("at a1.a1.a1") || first.starts_with("at a1.a1.a2"), "{first}");
    }
}
