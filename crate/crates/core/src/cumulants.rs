//! Moment–cumulant transforms over set, noncrossing and interval partitions,
//! and the classical convolution of symmetric states.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::algebra::{factorial, int, Rational, Word};
use crate::error::{Error, Result};
use crate::functionals::{CumulantTable, StateTable};
use crate::partitions::{enumerate, mobius_nc, nesting_forest, NcPartition, PartitionKind};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CumulantKind {
    Classical,
    Free,
    Boolean,
    Monotone,
}

impl CumulantKind {
    pub const ALL: [CumulantKind; 4] = [
        CumulantKind::Classical,
        CumulantKind::Free,
        CumulantKind::Boolean,
        CumulantKind::Monotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CumulantKind::Classical => "classical",
            CumulantKind::Free => "free",
            CumulantKind::Boolean => "boolean",
            CumulantKind::Monotone => "monotone",
        }
    }

    fn family(self) -> PartitionKind {
        match self {
            CumulantKind::Classical => PartitionKind::Set,
            CumulantKind::Boolean => PartitionKind::Interval,
            CumulantKind::Free | CumulantKind::Monotone => PartitionKind::Noncrossing,
        }
    }
}

impl fmt::Display for CumulantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CumulantKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CumulantKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown cumulant kind `{s}`")))
    }
}

/// Partitions of `[n]` with their weights in one direction of a transform.
type Weighted = Vec<(Vec<Vec<usize>>, Rational)>;

/// Weights for moments → cumulants (`inverse = false`, Möbius-type) or
/// cumulants → moments. The monotone forward weights are not used.
fn weights(kind: CumulantKind, n: usize, to_moments: bool) -> Result<Weighted> {
    let mut out = Vec::new();
    for p in enumerate(kind.family(), n)? {
        let k = p.block_count();
        let w = match (kind, to_moments) {
            (CumulantKind::Monotone, _) => {
                let t = nesting_forest(&NcPartition::new(p.clone())?).tree_factorial();
                int(t as i64).recip()
            }
            (_, true) => int(1),
            (CumulantKind::Classical, false) => {
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                sign * factorial(k - 1)
            }
            (CumulantKind::Free, false) => mobius_nc(&NcPartition::new(p.clone())?)?,
            (CumulantKind::Boolean, false) => {
                if k % 2 == 1 {
                    int(1)
                } else {
                    int(-1)
                }
            }
        };
        out.push((p.blocks().to_vec(), w));
    }
    Ok(out)
}

fn block_product(
    w: &Word,
    blocks: &[Vec<usize>],
    f: &mut impl FnMut(&Word) -> Result<Rational>,
) -> Result<Rational> {
    let mut acc = Rational::one();
    for b in blocks {
        acc *= f(&w.select(b))?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

struct WeightCache {
    kind: CumulantKind,
    to_moments: bool,
    by_degree: HashMap<usize, Weighted>,
}

impl WeightCache {
    fn new(kind: CumulantKind, to_moments: bool) -> Self {
        WeightCache {
            kind,
            to_moments,
            by_degree: HashMap::new(),
        }
    }

    fn get(&mut self, n: usize) -> Result<&Weighted> {
        if !self.by_degree.contains_key(&n) {
            let w = weights(self.kind, n, self.to_moments)?;
            self.by_degree.insert(n, w);
        }
        Ok(&self.by_degree[&n])
    }
}

/// Cumulants of the given kind for every word of the state's table.
pub fn moments_to_cumulants(kind: CumulantKind, phi: &StateTable) -> Result<CumulantTable> {
    let words = phi.words();
    if kind == CumulantKind::Monotone {
        // Φ(w) = Σ_{π∈NC} h_π / t(π)!, solved degree by degree
        let mut cache = WeightCache::new(kind, true);
        let mut h: HashMap<Word, Rational> = HashMap::new();
        for w in &words {
            let mut acc = phi.get(w)?;
            for (blocks, c) in cache.get(w.degree())? {
                if blocks.len() == 1 {
                    continue;
                }
                let mut lookup = |u: &Word| Ok(h[u].clone());
                acc -= c * block_product(w, blocks, &mut lookup)?;
            }
            h.insert(w.clone(), acc);
        }
        return CumulantTable::new(phi.letters(), phi.max_degree(), h);
    }
    let mut cache = WeightCache::new(kind, false);
    let mut get = |u: &Word| phi.get(u);
    let mut entries = Vec::with_capacity(words.len());
    for w in words {
        let mut acc = Rational::zero();
        for (blocks, c) in cache.get(w.degree())? {
            acc += c * block_product(&w, blocks, &mut get)?;
        }
        entries.push((w, acc));
    }
    CumulantTable::new(phi.letters(), phi.max_degree(), entries)
}

/// Moments reconstructed from cumulants by the lattice sums.
pub fn cumulants_to_moments(kind: CumulantKind, c: &CumulantTable) -> Result<StateTable> {
    let mut cache = WeightCache::new(kind, true);
    let mut get = |u: &Word| c.get(u);
    let mut entries = Vec::new();
    for w in c.words() {
        let mut acc = Rational::zero();
        for (blocks, weight) in cache.get(w.degree())? {
            acc += weight * block_product(&w, blocks, &mut get)?;
        }
        entries.push((w, acc));
    }
    StateTable::new(c.letters(), c.max_degree(), entries)
}

/// Routes a cumulant table of one kind to another through moments.
pub fn cumulant_cross_convert(
    from: CumulantKind,
    to: CumulantKind,
    table: &CumulantTable,
) -> Result<CumulantTable> {
    if from == to {
        return Ok(table.clone());
    }
    moments_to_cumulants(to, &cumulants_to_moments(from, table)?)
}

fn check_symmetric(phi: &StateTable) -> Result<()> {
    for w in phi.words() {
        let s = w.sorted();
        if s != w && phi.get(&w)? != phi.get(&s)? {
            return Err(Error::NotSymmetric(format!("{w} differs from {s}")));
        }
    }
    Ok(())
}

/// `(φ*ψ)(a_1⋯a_n) = Σ_{S⊆[n]} φ(a_S) ψ(a_{[n]−S})` for states invariant
/// under reordering of letters.
pub fn classical_convolve(phi: &StateTable, psi: &StateTable) -> Result<StateTable> {
    check_symmetric(phi)?;
    check_symmetric(psi)?;
    let letters = phi.letters().max(psi.letters());
    let max_degree = phi.max_degree().min(psi.max_degree());
    StateTable::from_fn(letters, max_degree, |w| {
        let n = w.degree();
        let mut acc = Rational::zero();
        for mask in 0..(1u64 << n) {
            let (mut s, mut t) = (Vec::new(), Vec::new());
            for i in 1..=n {
                if mask >> (i - 1) & 1 == 1 {
                    s.push(i);
                } else {
                    t.push(i);
                }
            }
            acc += phi.get(&w.select(&s))? * psi.get(&w.select(&t))?;
        }
        Ok(acc)
    })
}

#[cfg(test)]
mod tests;
