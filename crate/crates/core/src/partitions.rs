//! Set, interval and noncrossing partitions of `[n] = {1,…,n}`: enumeration,
//! nesting forests, tree factorials, the noncrossing Möbius function and
//! splittings adapted to a subset.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::Zero;

use crate::algebra::{int, Rational};
use crate::error::{Error, Result};

/// Largest ground set the enumerators accept.
pub const ENUMERATION_CAP: usize = 12;

/// A partition of `[n]`; blocks are sorted internally and ordered by their
/// minimal element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::Parse("partition blocks must be non-empty".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Parse(format!("element {x} is out of range or repeated")));
                }
                seen[x] = true;
            }
            sorted.push(b);
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::Parse(format!("blocks do not cover [{n}]")));
        }
        sorted.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks: sorted })
    }

    /// From a restricted growth string (`rgs[i]` is the block of `i+1`).
    fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition {
            n: rgs.len(),
            blocks,
        }
    }

    /// The one-block partition `1_n`.
    pub fn one(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// The all-singletons partition `0_n`.
    pub fn zero(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }

    /// No `i<j<k<l` with `i,k` in one block and `j,l` in another.
    pub fn is_noncrossing(&self) -> bool {
        blocks_noncrossing(&self.blocks)
    }

    pub fn is_interval(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.windows(2).all(|w| w[1] == w[0] + 1))
    }

    /// `self ≤ other` in refinement order.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.n == other.n
            && self.blocks.iter().all(|b| {
                other
                    .blocks
                    .iter()
                    .any(|c| b.iter().all(|x| c.binary_search(x).is_ok()))
            })
    }
}

pub(crate) fn blocks_noncrossing(blocks: &[Vec<usize>]) -> bool {
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            // a crossing is a<b<a<b (or b<a<b<a) among chosen elements
            for &a1 in a {
                for &b1 in b.iter().filter(|&&x| x > a1) {
                    for &a2 in a.iter().filter(|&&x| x > b1) {
                        if b.iter().any(|&x| x > a2) {
                            return false;
                        }
                    }
                }
            }
            for &b1 in b {
                for &a1 in a.iter().filter(|&&x| x > b1) {
                    for &b2 in b.iter().filter(|&&x| x > a1) {
                        if a.iter().any(|&x| x > b2) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        f.write_str(&parts.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `{1,3}/{2}`; the ground set is `[max element]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.trim().split('/') {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("malformed block `{part}`")))?;
            let block = inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element in `{part}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks)
    }
}

/// A partition known to be noncrossing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NcPartition(SetPartition);

impl NcPartition {
    pub fn new(p: SetPartition) -> Result<Self> {
        if p.is_noncrossing() {
            Ok(NcPartition(p))
        } else {
            Err(Error::NotNoncrossing(p.to_string()))
        }
    }

    pub fn partition(&self) -> &SetPartition {
        &self.0
    }
}

impl std::ops::Deref for NcPartition {
    type Target = SetPartition;
    fn deref(&self) -> &SetPartition {
        &self.0
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionKind {
    Set,
    Noncrossing,
    Interval,
}

/// All partitions of `[n]` of the given kind, in restricted-growth-string
/// order.
pub fn enumerate(kind: PartitionKind, n: usize) -> Result<Vec<SetPartition>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition {
            n: 0,
            blocks: Vec::new(),
        });
        return Ok(out);
    }
    let mut rgs = vec![0usize; n];
    rgs_visit(&mut rgs, 1, 0, &mut |rgs| {
        let p = SetPartition::from_rgs(rgs);
        let keep = match kind {
            PartitionKind::Set => true,
            PartitionKind::Noncrossing => p.is_noncrossing(),
            PartitionKind::Interval => p.is_interval(),
        };
        if keep {
            out.push(p);
        }
    });
    Ok(out)
}

fn rgs_visit(rgs: &mut [usize], i: usize, max: usize, visit: &mut impl FnMut(&[usize])) {
    if i == rgs.len() {
        visit(rgs);
        return;
    }
    for b in 0..=max + 1 {
        rgs[i] = b;
        rgs_visit(rgs, i + 1, max.max(b), visit);
    }
}

pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    Ok(enumerate(PartitionKind::Noncrossing, n)?
        .into_iter()
        .map(NcPartition)
        .collect())
}

/// A partition whose blocks carry a total order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedPartition {
    pub partition: SetPartition,
    /// `order[k]` is the index (into `partition.blocks()`) of the `k`-th block.
    pub order: Vec<usize>,
}

impl OrderedPartition {
    pub fn blocks_in_order(&self) -> impl Iterator<Item = &[usize]> {
        self.order.iter().map(|&i| self.partition.blocks[i].as_slice())
    }
}

/// Every partition of the kind with every ordering of its blocks.
pub fn enumerate_ordered(kind: PartitionKind, n: usize) -> Result<Vec<OrderedPartition>> {
    let mut out = Vec::new();
    for p in enumerate(kind, n)? {
        for order in permutations(p.block_count()) {
            out.push(OrderedPartition {
                partition: p.clone(),
                order,
            });
        }
    }
    Ok(out)
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Maximal runs of a subset `S ⊆ [n]` and of its complement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectedComponents {
    pub runs: Vec<Vec<usize>>,
    pub complement_runs: Vec<Vec<usize>>,
}

pub fn connected_components(subset: &[usize], n: usize) -> Result<ConnectedComponents> {
    let mut inside = vec![false; n + 1];
    for &s in subset {
        if s == 0 || s > n {
            return Err(Error::IndexOutOfRange { index: s, degree: n });
        }
        inside[s] = true;
    }
    Ok(runs_of(&inside[1..]))
}

/// Runs of a membership vector indexed from position 1.
pub(crate) fn runs_of(inside: &[bool]) -> ConnectedComponents {
    let mut runs = Vec::new();
    let mut complement_runs = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut current_in = None;
    for (i, &flag) in inside.iter().enumerate() {
        if current_in != Some(flag) && !current.is_empty() {
            let done = std::mem::take(&mut current);
            if current_in == Some(true) {
                runs.push(done);
            } else {
                complement_runs.push(done);
            }
        }
        current_in = Some(flag);
        current.push(i + 1);
    }
    if !current.is_empty() {
        if current_in == Some(true) {
            runs.push(current);
        } else {
            complement_runs.push(current);
        }
    }
    ConnectedComponents {
        runs,
        complement_runs,
    }
}

/// Block containment structure of a noncrossing partition: the parent of a
/// block is the innermost block whose span strictly encloses it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NestingForest {
    parent: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn parent(&self, block: usize) -> Option<usize> {
        self.parent[block]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&b| self.parent[b].is_none())
            .collect()
    }

    pub fn children(&self, block: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&b| self.parent[b] == Some(block))
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    fn subtree_size(&self, block: usize) -> usize {
        1 + self
            .children(block)
            .into_iter()
            .map(|c| self.subtree_size(c))
            .sum::<usize>()
    }

    /// Product over nodes of the size of the subtree rooted there.
    pub fn tree_factorial(&self) -> u64 {
        (0..self.parent.len())
            .map(|b| self.subtree_size(b) as u64)
            .product()
    }
}

pub fn nesting_forest(p: &NcPartition) -> NestingForest {
    let blocks = p.blocks();
    let span = |b: &Vec<usize>| (b[0], *b.last().unwrap());
    let parent = blocks
        .iter()
        .map(|b| {
            let (lo, hi) = span(b);
            blocks
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    let (clo, chi) = span(c);
                    clo < lo && hi < chi
                })
                .min_by_key(|(_, c)| {
                    let (clo, chi) = span(c);
                    chi - clo
                })
                .map(|(i, _)| i)
        })
        .collect();
    NestingForest { parent }
}

pub fn tree_factorial(forest: &NestingForest) -> u64 {
    forest.tree_factorial()
}

type MobiusTable = Arc<HashMap<SetPartition, Rational>>;

fn mobius_table(n: usize) -> Result<MobiusTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, MobiusTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let mut lattice = enumerate(PartitionKind::Noncrossing, n)?;
    // coarser elements first, so every strict upper bound is already known
    lattice.sort_by_key(SetPartition::block_count);
    let mut values: Vec<Rational> = Vec::with_capacity(lattice.len());
    for (i, p) in lattice.iter().enumerate() {
        let mu = if p.block_count() == 1 {
            int(1)
        } else {
            let mut acc = Rational::zero();
            for (j, q) in lattice[..i].iter().enumerate() {
                if q.block_count() < p.block_count() && p.refines(q) {
                    acc += &values[j];
                }
            }
            -acc
        };
        values.push(mu);
    }
    let table: MobiusTable = Arc::new(lattice.into_iter().zip(values).collect());
    cache.lock().unwrap().insert(n, table.clone());
    Ok(table)
}

/// `μ_NC(π, 1_n)`, by Möbius recursion over the noncrossing lattice.
pub fn mobius_nc(p: &NcPartition) -> Result<Rational> {
    let table = mobius_table(p.n())?;
    Ok(table[p.partition()].clone())
}

/// A pair `(π¹, π²)` with `π¹ ⊢ S`, `π² ⊢ [n]−S` and `π¹ ∪ π²` noncrossing,
/// satisfying the boundary-alternation condition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AncSplitting {
    pub n: usize,
    pub subset: Vec<usize>,
    pub pi1: Vec<Vec<usize>>,
    pub pi2: Vec<Vec<usize>>,
}

impl fmt::Display for AncSplitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |bs: &[Vec<usize>]| {
            if bs.is_empty() {
                "∅".to_string()
            } else {
                bs.iter()
                    .map(|b| {
                        let v: Vec<String> = b.iter().map(usize::to_string).collect();
                        format!("{{{}}}", v.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join("/")
            }
        };
        write!(f, "({}, {})", show(&self.pi1), show(&self.pi2))
    }
}

/// Checks `(π¹, π²) ∈ ANC_n^S` where `S` is the support of `π¹`.
pub fn is_adapted(pi1: &[Vec<usize>], pi2: &[Vec<usize>], n: usize) -> bool {
    let mut blocks: Vec<Vec<usize>> = pi1.iter().chain(pi2).cloned().collect();
    if blocks.iter().any(Vec::is_empty) {
        return false;
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    if SetPartition::new(n, blocks.clone()).is_err() || !blocks_noncrossing(&blocks) {
        return false;
    }
    let side_and_block = |x: usize| -> (usize, usize) {
        let i = blocks.iter().position(|b| b.contains(&x)).unwrap();
        (usize::from(i >= pi1.len()), i)
    };
    (1..n).all(|i| {
        let (p, bi) = side_and_block(i);
        let (q, bj) = side_and_block(i + 1);
        bi == bj || p != q
    })
}

/// `ANC_n^S`: all adapted splittings for `S ⊆ [n]`.
pub fn adapted_splittings(subset: &[usize], n: usize) -> Result<Vec<AncSplitting>> {
    let mut inside = vec![false; n + 1];
    for &s in subset {
        if s == 0 || s > n {
            return Err(Error::IndexOutOfRange { index: s, degree: n });
        }
        inside[s] = true;
    }
    let mut sorted: Vec<usize> = (1..=n).filter(|&i| inside[i]).collect();
    sorted.dedup();
    let mut out = Vec::new();
    for p in enumerate(PartitionKind::Noncrossing, n)? {
        let (mut pi1, mut pi2) = (Vec::new(), Vec::new());
        let mut pure = true;
        for b in p.blocks() {
            let ins = b.iter().filter(|&&x| inside[x]).count();
            if ins == b.len() {
                pi1.push(b.clone());
            } else if ins == 0 {
                pi2.push(b.clone());
            } else {
                pure = false;
                break;
            }
        }
        if pure && is_adapted(&pi1, &pi2, n) {
            out.push(AncSplitting {
                n,
                subset: sorted.clone(),
                pi1,
                pi2,
            });
        }
    }
    Ok(out)
}
