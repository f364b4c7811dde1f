//! Braid words for the dual generators and their permutation shadows.
//!
//! The band generator `a_ij` is the word `σ_i ... σ_(j-2) σ_(j-1) σ_(j-2)^-1 ... σ_i^-1`.
//! A noncrossing partition maps to the product over its blocks of the chains
//! `a_(i1 i2) a_(i2 i3) ...` along each block in increasing order.
//!
//! Braids are compared only through the projection to the symmetric group,
//! `σ_i -> (i, i+1)`. A word `w_1 w_2 ... w_m` projects to the composite
//! `t_(w_1) ∘ t_(w_2) ∘ ... ∘ t_(w_m)`; with this convention `σ_1 σ_2 ... σ_(n-1)`
//! projects to the cycle `1 -> 2 -> ... -> n -> 1` and each block projects to its
//! increasing cycle.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nc_lattice::{partition_permutation, NcPartition};
pub use crate::permutation::Permutation;

/// A word in the Artin generators; `+i` is `σ_i` and `-i` is `σ_i^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::invalid("a braid needs at least one strand"));
        }
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::invalid(format!("letter {bad} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(mut self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "concatenating braids on different strand counts");
        self.letters.extend_from_slice(&other.letters);
        self
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `a_ij` on `n` strands, for `1 <= i < j <= n`.
pub fn band_generator(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::invalid(format!("band generator a_({i},{j}) needs 1 <= i < j <= {n}")));
    }
    let (i, j) = (i as i32, j as i32);
    let letters = (i..j - 1).chain(std::iter::once(j - 1)).chain((i..j - 1).rev().map(|x| -x)).collect();
    Ok(BraidWord { strands: n, letters })
}

/// `δ_n = σ_1 σ_2 ... σ_(n-1)`.
pub fn delta(n: usize) -> BraidWord {
    BraidWord {
        strands: n,
        letters: (1..n as i32).collect(),
    }
}

/// The band generators `a_(v_1 v_2) a_(v_2 v_3) ...` along consecutive
/// vertices, as index pairs with the smaller index first.
pub fn band_chain(vertices: &[usize]) -> Vec<(usize, usize)> {
    vertices.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
}

/// Band-generator factors of `a_p`, blocks in canonical order.
pub fn band_factors(p: &NcPartition) -> Vec<(usize, usize)> {
    p.blocks().iter().flat_map(|b| band_chain(b)).collect()
}

/// Word for the given blocks, each chained along the vertex order given.
pub fn braid_for_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<BraidWord> {
    let mut word = BraidWord::identity(n);
    for block in blocks {
        for (i, j) in band_chain(block) {
            word = word.concat(&band_generator(i, j, n)?);
        }
    }
    Ok(word)
}

/// `a_p`: the simple element of the dual braid monoid attached to `p`.
pub fn partition_to_braid(p: &NcPartition) -> BraidWord {
    braid_for_blocks(p.n(), p.blocks()).expect("canonical blocks lie in 1..=n")
}

/// Projection to the symmetric group.
pub fn braid_to_permutation(w: &BraidWord) -> Permutation {
    let n = w.strands;
    w.letters.iter().fold(Permutation::identity(n), |acc, &l| {
        let i = l.unsigned_abs() as usize;
        acc.compose(&Permutation::transposition(n, i, i + 1))
    })
}

/// Each block becomes the cycle through its elements in increasing order.
pub fn partition_to_permutation(p: &NcPartition) -> Permutation {
    partition_permutation(p.as_set_partition())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc(n: usize, blocks: &[&[usize]]) -> NcPartition {
        NcPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn band_generator_words() {
        for i in 1..5 {
            assert_eq!(band_generator(i, i + 1, 5).unwrap().letters(), &[i as i32]);
        }
        assert_eq!(band_generator(1, 3, 3).unwrap().letters(), &[1, 2, -1]);
        let a14 = band_generator(1, 4, 4).unwrap();
        assert_eq!(a14.letters(), &[1, 2, 3, -2, -1]);
        assert_eq!(a14.len(), 5);
        assert!(band_generator(2, 2, 4).is_err());
        assert!(band_generator(3, 5, 4).is_err());
        assert!(band_generator(0, 2, 4).is_err());
    }

    #[test]
    fn partition_words() {
        assert!(partition_to_braid(&NcPartition::bottom(5)).is_empty());
        let p = nc(8, &[&[1], &[2, 8], &[3, 5, 6], &[4], &[7]]);
        assert_eq!(band_factors(&p), vec![(2, 8), (3, 5), (5, 6)]);
        let expect = band_generator(2, 8, 8)
            .unwrap()
            .concat(&band_generator(3, 5, 8).unwrap())
            .concat(&band_generator(5, 6, 8).unwrap());
        assert_eq!(partition_to_braid(&p), expect);
        for n in 1..=6 {
            assert_eq!(partition_to_braid(&NcPartition::top(n)), delta(n));
        }
    }

    #[test]
    fn projections() {
        assert_eq!(braid_to_permutation(&BraidWord::identity(4)), Permutation::identity(4));
        let a13 = BraidWord::new(3, vec![1, 2, -1]).unwrap();
        assert_eq!(braid_to_permutation(&a13), Permutation::transposition(3, 1, 3));
        assert_eq!(braid_to_permutation(&delta(4)), Permutation::new(vec![2, 3, 4, 1]).unwrap());
        assert_eq!(partition_to_permutation(&NcPartition::bottom(4)), Permutation::identity(4));
        assert_eq!(partition_to_permutation(&nc(3, &[&[1, 3], &[2]])), Permutation::transposition(3, 1, 3));
        let p = nc(8, &[&[1], &[2, 8], &[3, 5, 6], &[4], &[7]]);
        assert_eq!(partition_to_permutation(&p).to_string(), "(2 8)(3 5 6)");
    }

    #[test]
    fn word_validation_and_display() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert_eq!(BraidWord::new(3, vec![1, 2, -1]).unwrap().to_string(), "s1 s2 s1^-1");
        assert_eq!(serde_json::to_string(&BraidWord::new(3, vec![1, -2]).unwrap()).unwrap(), "[1,-2]");
    }
}
