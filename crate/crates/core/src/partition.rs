//! Canonical set partitions of `{1, ..., n}`.
//!
//! [`SetPartition`] is the common representation shared by the three lattice
//! families: blocks are strictly increasing and ordered by their minimum, so
//! structural equality is partition equality and the derived `Ord` is the
//! lexicographic order on the block lists.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set for which [`SetPartition::pair_mask`] fits in a `u128`.
pub const PAIR_MASK_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Wire form: `{"n": 8, "blocks": [[1],[2,8],[3,5,6],[4],[7]]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct PartitionRepr {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionRepr> for SetPartition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        SetPartition::new(r.n, r.blocks)
    }
}

impl From<SetPartition> for PartitionRepr {
    fn from(p: SetPartition) -> Self {
        PartitionRepr {
            n: p.n,
            blocks: p.blocks,
        }
    }
}

impl SetPartition {
    /// Validates that `blocks` partition `{1..n}` and returns the canonical form.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        crate::limits::check_ground_set(n)?;
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::invalid(format!("element {x} outside 1..={n}")));
                }
                if seen[x] {
                    return Err(Error::invalid(format!("element {x} appears twice")));
                }
                seen[x] = true;
            }
            block.sort_unstable();
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::invalid(format!("element {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds the partition in which `i + 1` lies in block `labels[i]`.
    /// Label values are arbitrary; only equality matters.
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut index_of = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let idx = *index_of.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(i + 1);
        }
        SetPartition { n, blocks }
    }

    /// Canonicalizes blocks that are already known to partition `{1..n}`.
    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// All singletons.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// A single block.
    pub fn coarsest(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_finest(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_coarsest(&self) -> bool {
        self.blocks.len() == 1
    }

    /// `labels()[i]` is the index of the block containing `i + 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x - 1] = b;
            }
        }
        labels
    }

    /// Linear-time crossing test: scanning left to right, a block may only be
    /// revisited while it is the most recently opened block still open.
    pub fn is_noncrossing(&self) -> bool {
        labels_noncrossing(&self.labels())
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        debug_assert_eq!(self.n, other.n);
        let labels = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1]))
    }

    /// Blockwise intersections: the meet in the lattice of all set partitions.
    pub fn meet(&self, other: &SetPartition) -> SetPartition {
        debug_assert_eq!(self.n, other.n);
        let a = self.labels();
        let b = other.labels();
        let combined: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x * self.n + y).collect();
        SetPartition::from_labels(&combined)
    }

    /// Transitive closure of the union of the two block relations: the join in
    /// the lattice of all set partitions.
    pub fn classical_join(&self, other: &SetPartition) -> SetPartition {
        debug_assert_eq!(self.n, other.n);
        let mut uf = UnionFind::<usize>::new(self.n);
        for block in self.blocks.iter().chain(&other.blocks) {
            for w in block.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        SetPartition::from_labels(&uf.into_labeling())
    }

    /// Applies a bijection of `{1..n}` to every element and recanonicalizes.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| f(x)).collect())
            .collect();
        SetPartition::from_blocks_unchecked(self.n, blocks)
    }

    /// Bit set of the pairs `i < j` lying in a common block. Two partitions
    /// meet at the finest partition iff their masks are disjoint.
    ///
    /// Panics if `n > PAIR_MASK_MAX_N`.
    pub fn pair_mask(&self) -> u128 {
        assert!(self.n <= PAIR_MASK_MAX_N, "pair mask needs n <= {PAIR_MASK_MAX_N}");
        let mut mask = 0u128;
        for block in &self.blocks {
            for (k, &i) in block.iter().enumerate() {
                for &j in &block[k + 1..] {
                    mask |= 1u128 << pair_index(i, j);
                }
            }
        }
        mask
    }

    /// Block sizes in canonical block order.
    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(Vec::len)
    }
}

/// Index of the pair `1 <= i < j <= 16` in `0..120`.
fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = (i - 1, j - 1);
    j * (j - 1) / 2 + i
}

pub(crate) fn labels_noncrossing(labels: &[usize]) -> bool {
    let mut last = std::collections::HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        last.insert(l, i);
    }
    let mut open: Vec<usize> = Vec::new();
    let mut started = std::collections::HashSet::new();
    for (i, &l) in labels.iter().enumerate() {
        if started.insert(l) {
            open.push(l);
        } else if open.last() != Some(&l) {
            return false;
        }
        if last[&l] == i {
            open.pop();
        }
    }
    true
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (m, x) in block.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}
