//! Moment/cumulant transforms over the free, classical and Boolean partition
//! lattices, cumulants of products of independent variables, and the formal
//! series relation `R(z M(z)) = M(z)` between free cumulants and moments.
//!
//! Everything here is exact rational arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::{check_cap, check_ground_set, Limits};
use crate::partition::SetPartition;
use crate::partition_families::LatticeFamily;

/// Renders `p/q`, with `q = 1` for integers.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("`{s}` is not an integer or rational"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::invalid(format!("`{s}` has a zero denominator")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqRole {
    Moments,
    Cumulants,
}

/// A finite 1-indexed sequence of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeq {
    terms: Vec<BigRational>,
    role: SeqRole,
}

impl ExactSeq {
    pub fn new(terms: Vec<BigRational>, role: SeqRole) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("a sequence needs at least one term"));
        }
        Ok(ExactSeq { terms, role })
    }

    pub fn from_integers(terms: &[i64], role: SeqRole) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigRational::from_integer(BigInt::from(t))).collect(), role)
    }

    /// Comma-separated integers or rationals, e.g. `1,2,5/3`.
    pub fn parse(s: &str, role: SeqRole) -> Result<Self> {
        let terms = s.split(',').filter(|t| !t.trim().is_empty()).map(parse_rational).collect::<Result<_>>()?;
        Self::new(terms, role)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn role(&self) -> SeqRole {
        self.role
    }

    /// Term `l`, 1-indexed.
    pub fn get(&self, l: usize) -> Option<&BigRational> {
        l.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn terms(&self) -> &[BigRational] {
        &self.terms
    }

    /// The first `n` terms.
    pub fn truncate(&self, n: usize) -> Result<ExactSeq> {
        if n == 0 || n > self.len() {
            return Err(Error::invalid(format!("cannot truncate a length-{} sequence to {n}", self.len())));
        }
        Ok(ExactSeq {
            terms: self.terms[..n].to_vec(),
            role: self.role,
        })
    }

    fn expect_role(&self, role: SeqRole) -> Result<()> {
        if self.role != role {
            return Err(Error::invalid(format!("expected {role:?}, got {:?}", self.role)));
        }
        Ok(())
    }
}

impl Serialize for ExactSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(format_rational))
    }
}

impl fmt::Display for ExactSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A truncated power series `1 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<BigRational>,
}

impl FormalSeries {
    /// `coeffs[0]` must be exactly 1.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        match coeffs.first() {
            Some(c) if c.is_one() => Ok(FormalSeries { coeffs }),
            _ => Err(Error::invalid("series must have constant term 1")),
        }
    }

    /// `1 + Σ_l t_l z^l`, truncated at the length of `t`.
    pub fn from_seq(t: &ExactSeq) -> Self {
        let mut coeffs = Vec::with_capacity(t.len() + 1);
        coeffs.push(BigRational::one());
        coeffs.extend(t.terms.iter().cloned());
        FormalSeries { coeffs }
    }

    /// The constant series 1 truncated at order `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        FormalSeries { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> Option<&BigRational> {
        self.coeffs.get(l)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients `1..=N` as a sequence; `None` for order 0.
    pub fn to_seq(&self, role: SeqRole) -> Option<ExactSeq> {
        ExactSeq::new(self.coeffs[1..].to_vec(), role).ok()
    }
}

impl Serialize for FormalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

/// Product of `a` and `b` truncated after degree `order`.
fn mul_truncated(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Powers `W^0, ..., W^order` of `W = z M(z)`, each truncated at `order`.
fn powers_of_z_times(m: &FormalSeries) -> Vec<Vec<BigRational>> {
    let order = m.order();
    let mut w = vec![BigRational::zero(); order + 1];
    w[1..].clone_from_slice(&m.coeffs[..order]);
    let mut powers = Vec::with_capacity(order + 1);
    powers.push(FormalSeries::one(order).coeffs);
    for l in 1..=order {
        let next = mul_truncated(&powers[l - 1], &w, order);
        powers.push(next);
    }
    powers
}

/// `true` iff `R(z M(z)) = M(z)` through the common truncation order.
pub fn series_compose_check(m: &FormalSeries, r: &FormalSeries) -> Result<bool> {
    if m.order() != r.order() {
        return Err(Error::invalid(format!(
            "truncation orders differ ({} vs {})",
            m.order(),
            r.order()
        )));
    }
    let order = m.order();
    let powers = powers_of_z_times(m);
    let mut composed = vec![BigRational::zero(); order + 1];
    for (l, rl) in r.coeffs.iter().enumerate() {
        for (k, c) in powers[l].iter().enumerate() {
            composed[k] += rl * c;
        }
    }
    Ok(composed == m.coeffs)
}

/// The unique `R` with `R(z M(z)) = M(z)` through the order of `m`.
///
/// `[z^n] (z M)^n = 1`, so coefficient `n` of the composition fixes `R_n`
/// once `R_1..R_(n-1)` are known.
pub fn series_solve_r(m: &FormalSeries) -> FormalSeries {
    let order = m.order();
    let powers = powers_of_z_times(m);
    let mut r = FormalSeries::one(order).coeffs;
    for n in 1..=order {
        let mut rest = BigRational::zero();
        for l in 1..n {
            rest += &r[l] * &powers[l][n];
        }
        r[n] = &m.coeffs[n] - rest;
    }
    FormalSeries { coeffs: r }
}

/// `T_π = ∏_{blocks B} t_|B|`.
pub fn partition_weight(p: &SetPartition, t: &ExactSeq) -> Result<BigRational> {
    let mut w = BigRational::one();
    for size in p.block_sizes() {
        let term = t
            .get(size)
            .ok_or_else(|| Error::invalid(format!("block of size {size} but only {} terms", t.len())))?;
        w *= term;
    }
    Ok(w)
}

fn check_order(family: LatticeFamily, order: usize, limits: &Limits) -> Result<()> {
    check_ground_set(order)?;
    check_cap("moment-cumulant transform", order, family.enumeration_cap(limits))
}

/// `M_n = Σ_{π in family(n)} R_π` for `n = 1..=len(r)`.
pub fn moments_from_cumulants(r: &ExactSeq, family: LatticeFamily, limits: Limits) -> Result<ExactSeq> {
    r.expect_role(SeqRole::Cumulants)?;
    check_order(family, r.len(), &limits)?;
    let terms = (1..=r.len())
        .map(|n| {
            family
                .partitions_unchecked(n)
                .iter()
                .map(|p| partition_weight(p, r))
                .sum::<Result<BigRational>>()
        })
        .collect::<Result<_>>()?;
    ExactSeq::new(terms, SeqRole::Moments)
}

/// Inverse of [`moments_from_cumulants`], by the triangular recursion
/// `R_n = M_n - Σ_{π ≠ 1_n} R_π`.
pub fn cumulants_from_moments(m: &ExactSeq, family: LatticeFamily, limits: Limits) -> Result<ExactSeq> {
    m.expect_role(SeqRole::Moments)?;
    check_order(family, m.len(), &limits)?;
    let mut r = ExactSeq {
        terms: Vec::with_capacity(m.len()),
        role: SeqRole::Cumulants,
    };
    for n in 1..=m.len() {
        let mut rest = BigRational::zero();
        for p in family.partitions_unchecked(n) {
            if !p.is_coarsest() {
                rest += partition_weight(&p, &r)?;
            }
        }
        r.terms.push(m.get(n).unwrap() - rest);
    }
    Ok(r)
}

fn check_tuple_guard(family: LatticeFamily, order: usize, k: usize, limits: &Limits) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("need at least one factor"));
    }
    check_ground_set(order)?;
    check_cap("tuple factors", k, limits.tuple_factors)?;
    let cap = match family {
        LatticeFamily::Boolean => limits.tuple_order_boolean,
        _ => limits.tuple_order,
    };
    check_cap("tuple order", order, cap)
}

/// Cumulants of the product of independent variables with the given
/// cumulant sequences: for each `n <= order`, the sum over `k`-tuples of
/// partitions in `family` whose join is `1_n` of `∏_i R^(i)_{π_i}`.
///
/// The tuple sum is accumulated factor by factor, grouping partial tuples by
/// their running join.
pub fn product_cumulants(rs: &[ExactSeq], family: LatticeFamily, order: usize, limits: Limits) -> Result<ExactSeq> {
    check_tuple_guard(family, order, rs.len(), &limits)?;
    for r in rs {
        r.expect_role(SeqRole::Cumulants)?;
        if r.len() < order {
            return Err(Error::invalid(format!("factor has {} terms, need {order}", r.len())));
        }
    }
    let mut terms = Vec::with_capacity(order);
    for n in 1..=order {
        let parts = family.partitions_unchecked(n);
        let weights: Vec<Vec<BigRational>> = rs
            .iter()
            .map(|r| parts.iter().map(|p| partition_weight(p, r)).collect::<Result<_>>())
            .collect::<Result<_>>()?;

        let mut acc: HashMap<SetPartition, BigRational> = HashMap::new();
        for (p, w) in parts.iter().zip(&weights[0]) {
            if !w.is_zero() {
                *acc.entry(p.clone()).or_insert_with(BigRational::zero) += w;
            }
        }
        for factor in &weights[1..] {
            let mut next: HashMap<SetPartition, BigRational> = HashMap::new();
            for (running, w) in &acc {
                for (p, wp) in parts.iter().zip(factor) {
                    if wp.is_zero() {
                        continue;
                    }
                    let j = family.join_unchecked(running, p);
                    *next.entry(j).or_insert_with(BigRational::zero) += w * wp;
                }
            }
            acc = next;
        }
        terms.push(acc.remove(&SetPartition::coarsest(n)).unwrap_or_else(BigRational::zero));
    }
    ExactSeq::new(terms, SeqRole::Cumulants)
}

/// Number of `k`-tuples of partitions in `family(n)` whose join is `1_n`,
/// by enumerating tuples. Once a prefix already joins to `1_n`, every
/// completion counts, so the remaining factors are not enumerated.
pub fn count_joining_tuples(family: LatticeFamily, n: usize, k: usize, limits: Limits) -> Result<BigUint> {
    check_tuple_guard(family, n, k, &limits)?;
    let parts = family.partitions_unchecked(n);
    let size = BigUint::from(parts.len());

    fn go(family: LatticeFamily, parts: &[SetPartition], size: &BigUint, running: &SetPartition, left: usize) -> BigUint {
        if running.is_coarsest() {
            return size.pow(left as u32);
        }
        if left == 0 {
            return BigUint::zero();
        }
        parts
            .iter()
            .map(|p| go(family, parts, size, &family.join_unchecked(running, p), left - 1))
            .sum()
    }

    Ok(go(family, &parts, &size, &SetPartition::finest(n), k))
}
