use dualgarside::nc_lattice::catalan;
use dualgarside::partition_families::{
    enumerate_interval_partitions, enumerate_set_partitions, join_family, FamilyPartition, LatticeFamily,
};
use dualgarside::{Limits, SetPartition};
use num_bigint::BigUint;
use num_integer::binomial;

fn l() -> Limits {
    Limits::default()
}

#[test]
fn family_sizes() {
    // Bell numbers by the recurrence B_(n+1) = Σ C(n,k) B_k
    let mut bell = vec![1u64];
    for n in 0..9u64 {
        bell.push((0..=n).map(|k| binomial(n, k) * bell[k as usize]).sum());
    }
    for n in 1..=9 {
        assert_eq!(enumerate_set_partitions(n, l()).unwrap().len() as u64, bell[n], "n = {n}");
    }
    for n in 1..=16 {
        assert_eq!(enumerate_interval_partitions(n, l()).unwrap().len(), 1 << (n - 1));
    }
    for n in 1..=9 {
        assert_eq!(BigUint::from(LatticeFamily::Free.partitions(n, l()).unwrap().len()), catalan(n));
    }
}

#[test]
fn inclusions() {
    for n in 1..=7 {
        let free = LatticeFamily::Free.partitions(n, l()).unwrap();
        let classical = LatticeFamily::Classical.partitions(n, l()).unwrap();
        let boolean = LatticeFamily::Boolean.partitions(n, l()).unwrap();
        assert!(boolean.iter().all(|p| free.contains(p)));
        assert!(free.iter().all(|p| classical.contains(p)));
        for p in &classical {
            assert_eq!(LatticeFamily::Free.contains(p), free.contains(p));
            assert_eq!(LatticeFamily::Boolean.contains(p), boolean.contains(p));
        }
    }
}

/// The join inside each family is the least common upper bound among the
/// family's own members, found by scanning.
#[test]
fn joins_are_least_upper_bounds() {
    for family in LatticeFamily::ALL {
        for n in 1..=5 {
            let all = family.partitions(n, l()).unwrap();
            for a in &all {
                for b in &all {
                    let uppers: Vec<&SetPartition> = all.iter().filter(|c| a.refines(c) && b.refines(c)).collect();
                    let least: Vec<&&SetPartition> = uppers.iter().filter(|c| uppers.iter().all(|u| c.refines(u))).collect();
                    assert_eq!(least.len(), 1);
                    let fa = FamilyPartition::new(family, a.clone()).unwrap();
                    let fb = FamilyPartition::new(family, b.clone()).unwrap();
                    let j = join_family(family, &fa, &fb).unwrap();
                    assert_eq!(j.family(), family);
                    assert_eq!(&j.to_set_partition(), *least[0], "{family}: {a} v {b}");
                }
            }
        }
    }
}

#[test]
fn mixed_family_join_rejected() {
    let p = SetPartition::finest(3);
    let a = FamilyPartition::new(LatticeFamily::Free, p.clone()).unwrap();
    let b = FamilyPartition::new(LatticeFamily::Boolean, p).unwrap();
    assert!(join_family(LatticeFamily::Free, &a, &b).is_err());
    let crossing = SetPartition::new(4, vec![vec![1, 3], vec![2, 4]]).unwrap();
    assert!(FamilyPartition::new(LatticeFamily::Free, crossing.clone()).is_err());
    assert!(FamilyPartition::new(LatticeFamily::Classical, crossing).is_ok());
}

#[test]
fn caps() {
    assert!(enumerate_set_partitions(10, l()).is_err());
    assert!(enumerate_interval_partitions(17, l()).is_err());
    assert!(enumerate_set_partitions(0, l()).is_err());
}
