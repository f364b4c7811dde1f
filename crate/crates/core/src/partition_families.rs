//! The three partition lattices that carry a moment/cumulant theory:
//! noncrossing partitions (free), all set partitions (classical) and interval
//! partitions (Boolean).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{check_cap, check_ground_set, Limits};
use crate::nc_lattice::{nc_partitions, noncrossing_closure, NcPartition};
use crate::partition::{PartitionRepr, SetPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeFamily {
    /// Noncrossing partitions.
    Free,
    /// All set partitions.
    Classical,
    /// Interval partitions.
    Boolean,
}

impl LatticeFamily {
    pub const ALL: [LatticeFamily; 3] = [LatticeFamily::Free, LatticeFamily::Classical, LatticeFamily::Boolean];

    pub fn name(self) -> &'static str {
        match self {
            LatticeFamily::Free => "free",
            LatticeFamily::Classical => "classical",
            LatticeFamily::Boolean => "boolean",
        }
    }

    pub(crate) fn enumeration_cap(self, limits: &Limits) -> usize {
        match self {
            LatticeFamily::Free => limits.nc,
            LatticeFamily::Classical => limits.set_partitions,
            LatticeFamily::Boolean => limits.interval_partitions,
        }
    }

    /// The family's partitions of `{1..n}` in the common representation.
    pub fn partitions(self, n: usize, limits: Limits) -> Result<Vec<SetPartition>> {
        check_ground_set(n)?;
        check_cap(self.name(), n, self.enumeration_cap(&limits))?;
        Ok(self.partitions_unchecked(n))
    }

    pub(crate) fn partitions_unchecked(self, n: usize) -> Vec<SetPartition> {
        match self {
            LatticeFamily::Free => nc_partitions(n).into_iter().map(SetPartition::from).collect(),
            LatticeFamily::Classical => set_partitions(n),
            LatticeFamily::Boolean => interval_partitions(n).iter().map(IntervalPartition::to_set_partition).collect(),
        }
    }

    /// Join of two members of this family, computed in the family's lattice.
    pub(crate) fn join_unchecked(self, a: &SetPartition, b: &SetPartition) -> SetPartition {
        match self {
            LatticeFamily::Free => noncrossing_closure(a.classical_join(b)),
            LatticeFamily::Classical => a.classical_join(b),
            LatticeFamily::Boolean => IntervalPartition::from_set_unchecked(a)
                .join(&IntervalPartition::from_set_unchecked(b))
                .to_set_partition(),
        }
    }

    pub fn contains(self, p: &SetPartition) -> bool {
        match self {
            LatticeFamily::Free => p.is_noncrossing(),
            LatticeFamily::Classical => true,
            LatticeFamily::Boolean => p.blocks().iter().all(|b| b.windows(2).all(|w| w[1] == w[0] + 1)),
        }
    }
}

impl fmt::Display for LatticeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(LatticeFamily::Free),
            "classical" => Ok(LatticeFamily::Classical),
            "boolean" => Ok(LatticeFamily::Boolean),
            other => Err(Error::invalid(format!("unknown lattice family `{other}`"))),
        }
    }
}

/// A partition of `{1..n}` into consecutive intervals, stored by the
/// positions `c` at which `c` and `c + 1` fall in different blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct IntervalPartition {
    n: usize,
    cuts: Vec<usize>,
}

impl TryFrom<PartitionRepr> for IntervalPartition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        let p = SetPartition::new(r.n, r.blocks)?;
        if !LatticeFamily::Boolean.contains(&p) {
            return Err(Error::invalid(format!("{p} is not an interval partition")));
        }
        Ok(IntervalPartition::from_set_unchecked(&p))
    }
}

impl From<IntervalPartition> for PartitionRepr {
    fn from(p: IntervalPartition) -> Self {
        p.to_set_partition().into()
    }
}

impl IntervalPartition {
    pub fn from_cuts(n: usize, mut cuts: Vec<usize>) -> Result<Self> {
        check_ground_set(n)?;
        cuts.sort_unstable();
        cuts.dedup();
        if cuts.iter().any(|&c| c == 0 || c >= n) {
            return Err(Error::invalid(format!("cuts must lie in 1..{n}")));
        }
        Ok(IntervalPartition { n, cuts })
    }

    /// Block sizes in order; they sum to `n`.
    pub fn from_composition(parts: &[usize]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("composition parts must be positive"));
        }
        let n = parts.iter().sum();
        let cuts = parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .filter(|&c| c < n)
            .collect();
        IntervalPartition::from_cuts(n, cuts)
    }

    fn from_set_unchecked(p: &SetPartition) -> Self {
        let mut cuts: Vec<usize> = p.blocks().iter().map(|b| b[b.len() - 1]).filter(|&c| c < p.n()).collect();
        cuts.sort_unstable();
        IntervalPartition { n: p.n(), cuts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn to_set_partition(&self) -> SetPartition {
        let mut blocks = Vec::with_capacity(self.cuts.len() + 1);
        let mut start = 1;
        for &c in self.cuts.iter().chain(std::iter::once(&self.n)) {
            blocks.push((start..=c).collect());
            start = c + 1;
        }
        SetPartition::from_blocks_unchecked(self.n, blocks)
    }

    /// Join in the interval lattice: keep only the cuts present in both.
    pub fn join(&self, other: &IntervalPartition) -> IntervalPartition {
        debug_assert_eq!(self.n, other.n);
        let cuts = self.cuts.iter().copied().filter(|c| other.cuts.binary_search(c).is_ok()).collect();
        IntervalPartition { n: self.n, cuts }
    }
}

/// Restricted growth strings, converted and sorted lexicographically.
fn set_partitions(n: usize) -> Vec<SetPartition> {
    fn go(labels: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<SetPartition>) {
        if labels.len() == n {
            out.push(SetPartition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            go(labels, max.max(l), n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    let mut labels = vec![0];
    go(&mut labels, 0, n, &mut out);
    out.sort_unstable();
    out
}

fn interval_partitions(n: usize) -> Vec<IntervalPartition> {
    let mut out: Vec<IntervalPartition> = (0u32..1 << (n - 1))
        .map(|mask| IntervalPartition {
            n,
            cuts: (1..n).filter(|c| mask & (1 << (c - 1)) != 0).collect(),
        })
        .collect();
    out.sort_unstable_by_key(IntervalPartition::to_set_partition);
    out
}

/// All `Bell(n)` set partitions of `{1..n}`, sorted lexicographically.
pub fn enumerate_set_partitions(n: usize, limits: Limits) -> Result<Vec<SetPartition>> {
    check_ground_set(n)?;
    check_cap("enumerate_set_partitions", n, limits.set_partitions)?;
    Ok(set_partitions(n))
}

/// All `2^(n-1)` interval partitions of `{1..n}`, sorted lexicographically by blocks.
pub fn enumerate_interval_partitions(n: usize, limits: Limits) -> Result<Vec<IntervalPartition>> {
    check_ground_set(n)?;
    check_cap("enumerate_interval_partitions", n, limits.interval_partitions)?;
    Ok(interval_partitions(n))
}

/// A member of one of the three lattices, tagged with its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyPartition {
    Free(NcPartition),
    Classical(SetPartition),
    Boolean(IntervalPartition),
}

impl FamilyPartition {
    pub fn family(&self) -> LatticeFamily {
        match self {
            FamilyPartition::Free(_) => LatticeFamily::Free,
            FamilyPartition::Classical(_) => LatticeFamily::Classical,
            FamilyPartition::Boolean(_) => LatticeFamily::Boolean,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FamilyPartition::Free(p) => p.n(),
            FamilyPartition::Classical(p) => p.n(),
            FamilyPartition::Boolean(p) => p.n(),
        }
    }

    pub fn to_set_partition(&self) -> SetPartition {
        match self {
            FamilyPartition::Free(p) => p.as_set_partition().clone(),
            FamilyPartition::Classical(p) => p.clone(),
            FamilyPartition::Boolean(p) => p.to_set_partition(),
        }
    }

    /// Wraps `p` as a member of `family`, checking membership.
    pub fn new(family: LatticeFamily, p: SetPartition) -> Result<Self> {
        if !family.contains(&p) {
            return Err(Error::invalid(format!("{p} is not a {family} partition")));
        }
        Ok(match family {
            LatticeFamily::Free => FamilyPartition::Free(p.try_into()?),
            LatticeFamily::Classical => FamilyPartition::Classical(p),
            LatticeFamily::Boolean => FamilyPartition::Boolean(IntervalPartition::from_set_unchecked(&p)),
        })
    }
}

/// Least upper bound of `a` and `b` in the lattice named by `kind`.
pub fn join_family(kind: LatticeFamily, a: &FamilyPartition, b: &FamilyPartition) -> Result<FamilyPartition> {
    if a.family() != kind || b.family() != kind {
        return Err(Error::invalid(format!(
            "join in the {kind} lattice of {} and {} partitions",
            a.family(),
            b.family()
        )));
    }
    if a.n() != b.n() {
        return Err(Error::invalid(format!("partitions of different ground sets ({} vs {})", a.n(), b.n())));
    }
    Ok(match (a, b) {
        (FamilyPartition::Free(x), FamilyPartition::Free(y)) => FamilyPartition::Free(crate::nc_lattice::join(x, y)?),
        (FamilyPartition::Classical(x), FamilyPartition::Classical(y)) => FamilyPartition::Classical(x.classical_join(y)),
        (FamilyPartition::Boolean(x), FamilyPartition::Boolean(y)) => FamilyPartition::Boolean(x.join(y)),
        _ => unreachable!("families checked above"),
    })
}
