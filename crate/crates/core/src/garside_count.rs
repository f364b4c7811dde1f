//! Counting normal sequences of simple braids in the dual braid monoid.
//!
//! A pair `(a, b)` of noncrossing partitions is normal when the Kreweras
//! complement of `a` meets `b` at `0_n`. The incidence matrix `M_n` records
//! this relation over NC(n), and the number of normal sequences of length `d`
//! is the sum of the entries of `M_n^(d-1)`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{check_cap, check_ground_set, Limits};
use crate::linalg::{bareiss_determinant, rational_determinant};
use crate::nc_lattice::{block_profile, catalan, kreweras, meet, nc_partitions, NcPartition};

/// `true` iff `kreweras(a) ∧ b = 0_n`.
pub fn normal_pair(a: &NcPartition, b: &NcPartition) -> Result<bool> {
    Ok(meet(&kreweras(a), b)?.is_bottom())
}

/// Dense 0/1 matrix indexed by an enumeration of NC(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    order: Vec<NcPartition>,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    /// Builds `M_n` over an arbitrary ordering of NC(n).
    pub fn with_order(n: usize, order: Vec<NcPartition>) -> Result<Self> {
        check_ground_set(n)?;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != nc_partitions(n) {
            return Err(Error::invalid(format!("order is not an enumeration of NC({n})")));
        }
        Ok(Self::build(n, order))
    }

    fn build(n: usize, order: Vec<NcPartition>) -> Self {
        let size = order.len();
        let complement_masks: Vec<u128> = order.iter().map(|p| kreweras(p).as_set_partition().pair_mask()).collect();
        let masks: Vec<u128> = order.iter().map(|p| p.as_set_partition().pair_mask()).collect();
        let mut entries = Vec::with_capacity(size * size);
        for km in &complement_masks {
            entries.extend(masks.iter().map(|m| u8::from(km & m == 0)));
        }
        IncidenceMatrix { n, order, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows (and columns): `Cat_n`.
    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[NcPartition] {
        &self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let s = self.size();
        &self.entries[i * s..(i + 1) * s]
    }

    pub fn index_of(&self, p: &NcPartition) -> Option<usize> {
        self.order.iter().position(|q| q == p)
    }

    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == 1).count()
    }

    /// `(1, ..., 1) M^(d-1)`, by repeated vector-matrix products.
    pub fn count_vector(&self, d: usize) -> Result<Vec<BigUint>> {
        if d == 0 {
            return Err(Error::invalid("sequence length d must be at least 1"));
        }
        let size = self.size();
        let mut v = vec![BigUint::one(); size];
        for _ in 1..d {
            let mut next = vec![BigUint::zero(); size];
            for (i, vi) in v.iter().enumerate() {
                for (j, &e) in self.row(i).iter().enumerate() {
                    if e == 1 {
                        next[j] += vi;
                    }
                }
            }
            v = next;
        }
        Ok(v)
    }

    pub fn count(&self, d: usize) -> Result<BigUint> {
        Ok(self.count_vector(d)?.into_iter().sum())
    }

    pub fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.size())
            .map(|i| self.row(i).iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// Signed determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.to_integer_rows())
    }

    /// Perron root of the matrix by power iteration on `M + I`.
    ///
    /// Starts from the all-ones vector and stops once successive Rayleigh
    /// quotients differ by less than `tol`.
    pub fn spectral_radius(&self, tol: f64, max_iterations: usize) -> Result<SpectralEstimate> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::invalid("tolerance must be positive"));
        }
        let size = self.size();
        let shifted = |x: &[f64]| -> Vec<f64> {
            (0..size)
                .map(|i| x[i] + self.row(i).iter().zip(x).filter(|(&e, _)| e == 1).map(|(_, v)| v).sum::<f64>())
                .collect()
        };
        let mut x = vec![1.0 / (size as f64).sqrt(); size];
        let mut estimate = f64::NAN;
        let mut change = f64::INFINITY;
        for iteration in 1..=max_iterations {
            let y = shifted(&x);
            let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() - 1.0;
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            x = y.into_iter().map(|v| v / norm).collect();
            change = (rayleigh - estimate).abs();
            estimate = rayleigh;
            if change < tol {
                let (lower, upper) = self.collatz_wielandt_bounds(&x);
                return Ok(SpectralEstimate {
                    radius: estimate,
                    achieved_tolerance: change,
                    iterations: iteration,
                    collatz_wielandt_lower: lower,
                    collatz_wielandt_upper: upper,
                    max_row_sum: (0..size).map(|i| self.row(i).iter().map(|&e| e as usize).sum::<usize>()).max().unwrap_or(0) as f64,
                });
            }
        }
        Err(Error::NonConvergence {
            iterations: max_iterations,
            last_estimate: estimate,
            last_change: change,
        })
    }

    /// `min_i (Mx)_i / x_i` and `max_i (Mx)_i / x_i` over coordinates with
    /// `x_i > 0`; for a nonnegative `x` these bracket the spectral radius.
    fn collatz_wielandt_bounds(&self, x: &[f64]) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, &xi) in x.iter().enumerate() {
            if xi <= 0.0 {
                continue;
            }
            let mx: f64 = self.row(i).iter().zip(x).filter(|(&e, _)| e == 1).map(|(_, v)| v).sum();
            lo = lo.min(mx / xi);
            hi = hi.max(mx / xi);
        }
        (lo, hi)
    }

    /// CSV export: a header of partitions in JSON block notation, then one
    /// line of 0/1 entries per row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<String> = self
            .order
            .iter()
            .map(|p| serde_json::to_string(p.blocks()).expect("blocks serialize"))
            .collect();
        let io_err = |e: csv::Error| Error::invalid(format!("csv output failed: {e}"));
        w.write_record(&header).map_err(io_err)?;
        for i in 0..self.size() {
            w.write_record(self.row(i).iter().map(|e| e.to_string())).map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::invalid(format!("csv output failed: {e}")))?;
        Ok(())
    }
}

/// Result of [`spectral_radius`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub radius: f64,
    /// Difference between the last two Rayleigh quotients.
    pub achieved_tolerance: f64,
    pub iterations: usize,
    /// Collatz–Wielandt bounds from the final iterate.
    pub collatz_wielandt_lower: f64,
    pub collatz_wielandt_upper: f64,
    pub max_row_sum: f64,
}

/// Counts of normal sequences of length `d`, keyed by their last partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    pub n: usize,
    pub d: usize,
    pub values: BTreeMap<NcPartition, BigUint>,
}

impl CountVector {
    pub fn total(&self) -> BigUint {
        self.values.values().sum()
    }

    pub fn get(&self, p: &NcPartition) -> Option<&BigUint> {
        self.values.get(p)
    }
}

/// `M_n` over the lexicographic enumeration of NC(n).
pub fn incidence_matrix(n: usize, limits: Limits) -> Result<IncidenceMatrix> {
    check_ground_set(n)?;
    check_cap("incidence_matrix", n, limits.incidence)?;
    Ok(IncidenceMatrix::build(n, nc_partitions(n)))
}

/// Number of normal sequences of length `d` in NC(n).
///
/// `d = 1` needs no matrix, so it is bounded by the enumeration cap only.
pub fn count_braids(n: usize, d: usize, limits: Limits) -> Result<BigUint> {
    if d == 1 {
        return Ok(BigUint::from(single_letter_order(n, limits)?.len()));
    }
    incidence_matrix(n, limits)?.count(d)
}

fn single_letter_order(n: usize, limits: Limits) -> Result<Vec<NcPartition>> {
    check_ground_set(n)?;
    check_cap("count_braids", n, limits.nc)?;
    Ok(nc_partitions(n))
}

pub fn count_by_last(n: usize, d: usize, limits: Limits) -> Result<CountVector> {
    if d == 1 {
        let values = single_letter_order(n, limits)?.into_iter().map(|p| (p, BigUint::one())).collect();
        return Ok(CountVector { n, d, values });
    }
    let m = incidence_matrix(n, limits)?;
    let v = m.count_vector(d)?;
    Ok(CountVector {
        n,
        d,
        values: m.order.into_iter().zip(v).collect(),
    })
}

pub fn determinant_exact(n: usize, limits: Limits) -> Result<BigInt> {
    check_ground_set(n)?;
    check_cap("determinant_exact", n, limits.determinant)?;
    Ok(IncidenceMatrix::build(n, nc_partitions(n)).determinant())
}

/// `∏_{k=2}^{n} Cat_(k-1)^C(2n-k-1, n-1)`.
pub fn determinant_formula(n: usize) -> Result<BigUint> {
    check_ground_set(n)?;
    Ok((2..=n).fold(BigUint::one(), |acc, k| {
        let e = binomial(2 * n - k - 1, n - 1);
        acc * catalan(k - 1).pow(e as u32)
    }))
}

/// Determinant of `Φ(x, y) = phi(x ∧ y)` over NC(n).
pub fn meet_matrix_det(n: usize, phi: impl Fn(&NcPartition) -> BigRational, limits: Limits) -> Result<BigRational> {
    check_ground_set(n)?;
    check_cap("meet_matrix_det", n, limits.meet_matrix)?;
    let elems = nc_partitions(n);
    let mut cache: HashMap<NcPartition, BigRational> = HashMap::new();
    let mut rows = Vec::with_capacity(elems.len());
    for x in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for y in &elems {
            let m = meet(x, y)?;
            let v = cache.entry(m).or_insert_with_key(|k| phi(k)).clone();
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rational_determinant(&rows))
}

pub fn spectral_radius(n: usize, tol: f64, limits: Limits) -> Result<SpectralEstimate> {
    check_ground_set(n)?;
    check_cap("spectral_radius", n, limits.spectral)?;
    IncidenceMatrix::build(n, nc_partitions(n)).spectral_radius(tol, limits.power_iterations)
}

/// `Σ_{π ∈ NC(n)} p_k(π)`, the total number of size-`k` blocks over NC(n).
pub fn part_size_total(n: usize, k: usize, limits: Limits) -> Result<BigUint> {
    check_ground_set(n)?;
    if k == 0 || k > n {
        return Err(Error::invalid(format!("block size {k} outside 1..={n}")));
    }
    check_cap("part_size_total", n, limits.nc)?;
    Ok(nc_partitions(n).iter().map(|p| BigUint::from(block_profile(p).count(k))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn normal_pair_extremes() {
        for n in 1..=5 {
            for p in nc_partitions(n) {
                assert!(normal_pair(&NcPartition::top(n), &p).unwrap());
                assert!(normal_pair(&p, &NcPartition::bottom(n)).unwrap());
            }
        }
        let pairs = nc_partitions(3)
            .iter()
            .flat_map(|a| nc_partitions(3).into_iter().map(move |b| (a.clone(), b)))
            .filter(|(a, b)| normal_pair(a, b).unwrap())
            .count();
        assert_eq!(pairs, 15);
    }

    #[test]
    fn incidence_structure() {
        for n in 2..=6 {
            let m = incidence_matrix(n, l()).unwrap();
            let bottom = m.index_of(&NcPartition::bottom(n)).unwrap();
            let top = m.index_of(&NcPartition::top(n)).unwrap();
            for i in 0..m.size() {
                assert_eq!(m.entry(i, bottom), 1);
                assert_eq!(m.entry(top, i), 1);
                assert_eq!(m.entry(bottom, i), u8::from(i == bottom));
                assert_eq!(m.entry(i, top), u8::from(i == top));
            }
        }
        assert_eq!(incidence_matrix(2, l()).unwrap().count_ones(), 3);
        assert_eq!(incidence_matrix(3, l()).unwrap().count_ones(), 15);
        assert!(incidence_matrix(10, l()).is_err());
    }

    #[test]
    fn with_order_rejects_non_enumerations() {
        let mut order = nc_partitions(3);
        assert!(IncidenceMatrix::with_order(3, order.clone()).is_ok());
        order.pop();
        assert!(IncidenceMatrix::with_order(3, order).is_err());
    }

    #[test]
    fn counts_small() {
        for n in 1..=7 {
            assert_eq!(count_braids(n, 1, l()).unwrap(), catalan(n));
        }
        assert_eq!(count_braids(4, 3, l()).unwrap(), BigUint::from(556u32));
        assert!(count_braids(3, 0, l()).is_err());
    }

    #[test]
    fn count_by_last_totals() {
        let c = count_by_last(3, 1, l()).unwrap();
        assert!(c.values.values().all(|v| v.is_one()));
        let c = count_by_last(3, 2, l()).unwrap();
        assert_eq!(c.total(), BigUint::from(15u32));
        let c5 = count_by_last(5, 4, l()).unwrap();
        assert_eq!(c5.total(), count_braids(5, 4, l()).unwrap());
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant_formula(1).unwrap(), BigUint::one());
        assert_eq!(determinant_formula(2).unwrap(), BigUint::one());
        assert_eq!(determinant_formula(3).unwrap(), BigUint::from(2u32));
        assert_eq!(
            determinant_formula(5).unwrap(),
            BigUint::from(2u32).pow(15) * BigUint::from(5u32).pow(5) * BigUint::from(14u32)
        );
        assert_eq!(determinant_exact(2, l()).unwrap().magnitude(), &BigUint::one());
        assert_eq!(determinant_exact(3, l()).unwrap().magnitude(), &BigUint::from(2u32));
        for n in 4..=5 {
            assert_eq!(determinant_exact(n, l()).unwrap().magnitude(), &determinant_formula(n).unwrap());
        }
        assert!(determinant_exact(9, l()).is_err());
    }

    #[test]
    fn meet_matrix_examples() {
        let one = |_: &NcPartition| BigRational::one();
        for n in 2..=4 {
            assert!(meet_matrix_det(n, one, l()).unwrap().is_zero());
        }
        let indicator = |p: &NcPartition| if p.is_bottom() { BigRational::one() } else { BigRational::zero() };
        let d = meet_matrix_det(3, indicator, l()).unwrap();
        assert_eq!(d.abs(), BigRational::from_integer(BigInt::from(2)));
        assert!(meet_matrix_det(7, indicator, l()).is_err());
    }

    #[test]
    fn spectral_small() {
        // M_2 + I is a Jordan block, so convergence is only O(1/k) here
        let e = spectral_radius(2, 1e-9, l()).unwrap();
        assert!((e.radius - 1.0).abs() < 1e-3);
        let e = spectral_radius(3, 1e-9, l()).unwrap();
        assert!((e.radius - 2.0).abs() < 1e-6);
        assert!(spectral_radius(3, 0.0, l()).is_err());
    }

    #[test]
    fn part_size_examples() {
        assert_eq!(part_size_total(4, 4, l()).unwrap(), BigUint::one());
        assert_eq!(part_size_total(3, 2, l()).unwrap(), BigUint::from(3u32));
        assert_eq!(part_size_total(5, 2, l()).unwrap(), BigUint::from(35u32));
        assert!(part_size_total(3, 4, l()).is_err());
        assert!(part_size_total(3, 0, l()).is_err());
    }

    #[test]
    fn csv_export() {
        let m = incidence_matrix(2, l()).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "\"[[1],[2]]\",\"[[1,2]]\"\n1,0\n1,1\n");
    }
}
