use dualgarside::free_cumulants::{
    count_joining_tuples, cumulants_from_moments, moments_from_cumulants, product_cumulants, series_compose_check,
    series_solve_r, ExactSeq, FormalSeries, SeqRole,
};
use dualgarside::garside_count::count_braids;
use dualgarside::partition_families::LatticeFamily;
use dualgarside::Limits;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn l() -> Limits {
    Limits::default()
}

fn seq(terms: &[(i64, i64)], role: SeqRole) -> ExactSeq {
    ExactSeq::new(terms.iter().map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))).collect(), role).unwrap()
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-5i64..=5, 1i64..=4), len)
}

fn family() -> impl Strategy<Value = LatticeFamily> {
    prop_oneof![Just(LatticeFamily::Free), Just(LatticeFamily::Classical), Just(LatticeFamily::Boolean)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip(t in rationals(6), f in family()) {
        let r = seq(&t, SeqRole::Cumulants);
        let m = moments_from_cumulants(&r, f, l()).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, f, l()).unwrap(), r);
    }

    #[test]
    fn series_route_agrees_with_triangular_solve(t in rationals(6)) {
        let m = seq(&t, SeqRole::Moments);
        let r = cumulants_from_moments(&m, LatticeFamily::Free, l()).unwrap();
        let series = series_solve_r(&FormalSeries::from_seq(&m));
        prop_assert_eq!(series.to_seq(SeqRole::Cumulants).unwrap(), r.clone());
        prop_assert!(series_compose_check(&FormalSeries::from_seq(&m), &FormalSeries::from_seq(&r)).unwrap());
    }

    /// Free cumulants add under free additive convolution; the moments of
    /// r1 + r2 recover r1 + r2.
    #[test]
    fn additive_cumulants(a in rationals(6), b in rationals(6)) {
        let r1 = seq(&a, SeqRole::Cumulants);
        let r2 = seq(&b, SeqRole::Cumulants);
        let sum = ExactSeq::new(r1.terms().iter().zip(r2.terms()).map(|(x, y)| x + y).collect(), SeqRole::Cumulants).unwrap();
        let m = moments_from_cumulants(&sum, LatticeFamily::Free, l()).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, LatticeFamily::Free, l()).unwrap(), sum);
    }

    #[test]
    fn product_is_symmetric_in_factors(a in rationals(5), b in rationals(5), c in rationals(5), f in family()) {
        let (x, y, z) = (seq(&a, SeqRole::Cumulants), seq(&b, SeqRole::Cumulants), seq(&c, SeqRole::Cumulants));
        let p1 = product_cumulants(&[x.clone(), y.clone(), z.clone()], f, 5, l()).unwrap();
        let p2 = product_cumulants(&[z, x, y], f, 5, l()).unwrap();
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn product_moments_multiply(a in rationals(5), b in rationals(5), f in family()) {
        let (x, y) = (seq(&a, SeqRole::Cumulants), seq(&b, SeqRole::Cumulants));
        let p = product_cumulants(&[x.clone(), y.clone()], f, 5, l()).unwrap();
        let lhs = moments_from_cumulants(&p, f, l()).unwrap();
        let mx = moments_from_cumulants(&x, f, l()).unwrap();
        let my = moments_from_cumulants(&y, f, l()).unwrap();
        let rhs: Vec<BigRational> = mx.terms().iter().zip(my.terms()).map(|(u, v)| u * v).collect();
        prop_assert_eq!(lhs.terms(), rhs.as_slice());
    }
}

#[test]
fn all_ones_product_counts_joining_tuples() {
    for family in LatticeFamily::ALL {
        let max_n = if family == LatticeFamily::Boolean { 8 } else { 5 };
        for k in 1..=3 {
            let ones = ExactSeq::from_integers(&vec![1; max_n], SeqRole::Cumulants).unwrap();
            let p = product_cumulants(&vec![ones; k], family, max_n, l()).unwrap();
            for n in 1..=max_n {
                let count = count_joining_tuples(family, n, k, l()).unwrap();
                assert_eq!(p.get(n).unwrap(), &BigRational::from_integer(count.into()), "{family}, n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn joining_pairs_are_normal_pairs() {
    for n in 1..=6 {
        assert_eq!(count_joining_tuples(LatticeFamily::Free, n, 2, l()).unwrap(), count_braids(n, 2, l()).unwrap());
    }
}

#[test]
fn boolean_joining_tuples_by_cut_sets() {
    // interval partitions are subsets of n - 1 cuts and the join intersects
    // them, so k-tuples joining to 1_n are k-tuples of cut sets with empty
    // common intersection: (2^k - 1)^(n-1)
    for n in 1..=8u32 {
        for k in (1..=4u32).filter(|k| (n - 1) * k <= 18) {
            let expected = BigUint::from(2u32.pow(k) - 1).pow(n - 1);
            assert_eq!(count_joining_tuples(LatticeFamily::Boolean, n as usize, k as usize, l()).unwrap(), expected);
        }
    }
}

#[test]
fn product_with_truncation() {
    let r = ExactSeq::from_integers(&[2, -1, 3, 5, 7, 11], SeqRole::Cumulants).unwrap();
    let p = product_cumulants(std::slice::from_ref(&r), LatticeFamily::Free, 4, l()).unwrap();
    assert_eq!(p, r.truncate(4).unwrap());
}

#[test]
fn serialization_uses_fraction_strings() {
    let r = seq(&[(1, 2), (-3, 1)], SeqRole::Cumulants);
    assert_eq!(serde_json::to_string(&r).unwrap(), r#"["1/2","-3/1"]"#);
    let s = FormalSeries::from_seq(&r);
    assert_eq!(serde_json::to_string(&s).unwrap(), r#"["1/1","1/2","-3/1"]"#);
}
