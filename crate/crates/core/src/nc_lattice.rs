//! The lattice NC(n) of noncrossing partitions under reverse refinement.
//!
//! Elements are canonical [`NcPartition`]s. The bottom element `0_n` is the
//! partition into singletons and the top `1_n` is the single block.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{check_cap, check_ground_set, Limits};
use crate::partition::{PartitionRepr, SetPartition};
use crate::permutation::Permutation;

/// Shift `s` with `kreweras(kreweras(p)) == rotate(p, s)` for every `p`.
pub const KREWERAS_SQUARE_SHIFT: i64 = -1;

/// A noncrossing partition of `{1..n}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct NcPartition(SetPartition);

impl TryFrom<PartitionRepr> for NcPartition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        NcPartition::new(r.n, r.blocks)
    }
}

impl From<NcPartition> for PartitionRepr {
    fn from(p: NcPartition) -> Self {
        p.0.into()
    }
}

impl TryFrom<SetPartition> for NcPartition {
    type Error = Error;
    fn try_from(p: SetPartition) -> Result<Self> {
        if p.is_noncrossing() {
            Ok(NcPartition(p))
        } else {
            Err(Error::invalid(format!("{p} is crossing")))
        }
    }
}

impl AsRef<SetPartition> for NcPartition {
    fn as_ref(&self) -> &SetPartition {
        &self.0
    }
}

impl From<NcPartition> for SetPartition {
    fn from(p: NcPartition) -> Self {
        p.0
    }
}

impl NcPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        SetPartition::new(n, blocks)?.try_into()
    }

    /// `0_n`, all singletons.
    pub fn bottom(n: usize) -> Self {
        NcPartition(SetPartition::finest(n))
    }

    /// `1_n`, one block.
    pub fn top(n: usize) -> Self {
        NcPartition(SetPartition::coarsest(n))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.0.blocks()
    }

    pub fn num_blocks(&self) -> usize {
        self.0.num_blocks()
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_finest()
    }

    pub fn is_top(&self) -> bool {
        self.0.is_coarsest()
    }

    pub fn as_set_partition(&self) -> &SetPartition {
        &self.0
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of blocks of each size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockProfile {
    pub n: usize,
    /// Block size -> number of blocks of that size; sizes with no block are absent.
    pub counts: BTreeMap<usize, usize>,
}

impl BlockProfile {
    pub fn count(&self, size: usize) -> usize {
        self.counts.get(&size).copied().unwrap_or(0)
    }
}

pub fn catalan(n: usize) -> BigUint {
    binomial(BigUint::from(2 * n), BigUint::from(n)) / BigUint::from(n + 1)
}

/// All of NC(n), sorted lexicographically by canonical block list.
pub fn enumerate_nc(n: usize, limits: Limits) -> Result<Vec<NcPartition>> {
    check_ground_set(n)?;
    check_cap("enumerate_nc", n, limits.nc)?;
    Ok(nc_partitions(n))
}

/// Unchecked enumeration for callers that have already validated `n`.
///
/// Elements are placed left to right. Open blocks sit on a stack ordered by
/// their most recent element; extending a block closes every block above it,
/// since any later element of those would cross the extended block.
pub(crate) fn nc_partitions(n: usize) -> Vec<NcPartition> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, open: &mut Vec<usize>, next: usize, out: &mut Vec<NcPartition>) {
        if i == n {
            out.push(NcPartition(SetPartition::from_labels(labels)));
            return;
        }
        // extend an open block
        for pos in 0..open.len() {
            let saved = open.clone();
            let block = open[pos];
            open.truncate(pos);
            open.push(block);
            labels.push(block);
            go(i + 1, n, labels, open, next, out);
            labels.pop();
            *open = saved;
        }
        // start a new block
        open.push(next);
        labels.push(next);
        go(i + 1, n, labels, open, next + 1, out);
        labels.pop();
        open.pop();
    }

    let mut out = Vec::new();
    go(0, n, &mut Vec::with_capacity(n), &mut Vec::new(), 0, &mut out);
    out.sort_unstable();
    out
}

/// Validates `blocks` as a partition of `{1..n}` and tests for crossings.
pub fn is_noncrossing(n: usize, blocks: &[Vec<usize>]) -> Result<bool> {
    Ok(SetPartition::new(n, blocks.to_vec())?.is_noncrossing())
}

fn same_n(a: &NcPartition, b: &NcPartition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::invalid(format!(
            "partitions of different ground sets ({} vs {})",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

/// Reverse refinement order: every block of `a` lies in a block of `b`.
pub fn leq(a: &NcPartition, b: &NcPartition) -> Result<bool> {
    same_n(a, b)?;
    Ok(a.0.refines(&b.0))
}

/// Greatest lower bound; the blockwise intersections of two noncrossing
/// partitions are already noncrossing.
pub fn meet(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_n(a, b)?;
    Ok(NcPartition(a.0.meet(&b.0)))
}

/// Least upper bound: the join in the lattice of all set partitions, then
/// merge crossing blocks until none remain.
pub fn join(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_n(a, b)?;
    Ok(NcPartition(noncrossing_closure(a.0.classical_join(&b.0))))
}

/// Smallest noncrossing coarsening of `p`.
pub(crate) fn noncrossing_closure(p: SetPartition) -> SetPartition {
    let n = p.n();
    let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
    'outer: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks_cross(&blocks[i], &blocks[j]) {
                    let merged = blocks.swap_remove(j);
                    blocks[i].extend(merged);
                    blocks[i].sort_unstable();
                    continue 'outer;
                }
            }
        }
        break;
    }
    SetPartition::from_blocks_unchecked(n, blocks)
}

/// Two disjoint sorted blocks cross iff their merged sequence alternates
/// membership at least four times (a pattern `a b a b`).
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut runs = 0;
    let mut last: Option<bool> = None;
    while i < a.len() || j < b.len() {
        let from_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        if from_a {
            i += 1;
        } else {
            j += 1;
        }
        if last != Some(from_a) {
            runs += 1;
            if runs >= 4 {
                return true;
            }
            last = Some(from_a);
        }
    }
    false
}

/// Kreweras complement, read off as the cycles of `p^{-1} ∘ γ` where `p` is
/// the permutation whose cycles are the blocks in increasing order and `γ` is
/// the long cycle `1 -> 2 -> ... -> n -> 1`.
pub fn kreweras(p: &NcPartition) -> NcPartition {
    let n = p.n();
    let gamma = Permutation::long_cycle(n);
    let complement = partition_permutation(p.as_set_partition()).inverse().compose(&gamma);
    NcPartition(SetPartition::from_blocks_unchecked(n, complement.cycles()))
}

pub(crate) fn partition_permutation(p: &SetPartition) -> Permutation {
    let mut images: Vec<usize> = (1..=p.n()).collect();
    for block in p.blocks() {
        for (k, &x) in block.iter().enumerate() {
            images[x - 1] = block[(k + 1) % block.len()];
        }
    }
    Permutation::new(images).expect("blocks partition the ground set")
}

/// Relabels `i` as `((i - 1 + s) mod n) + 1`.
pub fn rotate(p: &NcPartition, s: i64) -> NcPartition {
    let n = p.n() as i64;
    let shift = s.rem_euclid(n);
    NcPartition(p.0.relabel(|i| ((i as i64 - 1 + shift) % n) as usize + 1))
}

/// `μ(p, 0_n)` from the block-size product formula: each block of size `k`
/// contributes `(-1)^(k-1) Cat_(k-1)`.
pub fn mobius_to_zero(p: &NcPartition) -> BigInt {
    p.0.block_sizes().fold(BigInt::one(), |acc, k| {
        let c = BigInt::from(catalan(k - 1));
        if k % 2 == 0 {
            -acc * c
        } else {
            acc * c
        }
    })
}

/// `μ(p, 0_n)` by the defining recursion `μ(x) = -Σ_{0 <= y < x} μ(y)` over
/// the interval `[0_n, p]`.
pub fn mobius_oracle(p: &NcPartition, limits: Limits) -> Result<BigInt> {
    check_cap("mobius_oracle", p.n(), limits.mobius_oracle)?;
    let mut interval: Vec<NcPartition> = nc_partitions(p.n())
        .into_iter()
        .filter(|x| x.0.refines(&p.0))
        .collect();
    // finer elements first: a linear extension of the order
    interval.sort_by_key(|x| std::cmp::Reverse(x.num_blocks()));
    let mut mu: Vec<BigInt> = Vec::with_capacity(interval.len());
    for (i, x) in interval.iter().enumerate() {
        if x.is_bottom() {
            mu.push(BigInt::one());
            continue;
        }
        let below: BigInt = (0..i)
            .filter(|&j| interval[j] != *x && interval[j].0.refines(&x.0))
            .map(|j| &mu[j])
            .sum();
        mu.push(-below);
    }
    let last = interval.iter().position(|x| x == p).expect("p lies in its own interval");
    Ok(std::mem::replace(&mut mu[last], BigInt::zero()))
}

pub fn block_profile(p: &NcPartition) -> BlockProfile {
    let mut counts = BTreeMap::new();
    for k in p.0.block_sizes() {
        *counts.entry(k).or_insert(0) += 1;
    }
    BlockProfile { n: p.n(), counts }
}
