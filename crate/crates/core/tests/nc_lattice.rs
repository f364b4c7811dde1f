use dualgarside::nc_lattice::{
    block_profile, enumerate_nc, is_noncrossing, join, kreweras, leq, meet, mobius_to_zero, rotate,
    KREWERAS_SQUARE_SHIFT,
};
use dualgarside::{Limits, NcPartition, SetPartition};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// Blocks as label vectors: `labels[i]` is the block index of point `i`.
fn labels_of(n_points: usize, blocks: &[Vec<usize>], offset: usize, stride: usize, base: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        for &x in block {
            out.push(((x - 1) * stride + offset, b + base));
        }
    }
    debug_assert!(out.iter().all(|(p, _)| *p < n_points));
    out
}

/// Noncrossing test by chords: consecutive elements of each block form
/// chords, and the partition is noncrossing iff no two chords from different
/// blocks interleave.
fn chords_noncrossing(points: &[(usize, usize)]) -> bool {
    let mut by_block: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &(p, b) in points {
        by_block.entry(b).or_default().push(p);
    }
    let mut chords = Vec::new();
    for (b, mut ps) in by_block {
        ps.sort_unstable();
        for w in ps.windows(2) {
            chords.push((w[0], w[1], b));
        }
    }
    for (i, &(a, b, x)) in chords.iter().enumerate() {
        for &(c, d, y) in &chords[i + 1..] {
            if x != y && ((a < c && c < b && b < d) || (c < a && a < d && d < b)) {
                return false;
            }
        }
    }
    true
}

/// All set partitions of 1..=n as block lists, by restricted growth strings.
fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        out.push(blocks);
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_prefix = rgs[..i].iter().max().unwrap();
            if rgs[i] <= *max_prefix {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn refines(fine: &[Vec<usize>], coarse: &[Vec<usize>]) -> bool {
    fine.iter().all(|b| coarse.iter().any(|c| b.iter().all(|x| c.contains(x))))
}

/// The coarsest partition `q` of the primed points such that `p ∪ q` is
/// noncrossing on `1 < 1' < 2 < 2' < ... < n < n'`.
fn kreweras_oracle(n: usize, p: &[Vec<usize>], candidates: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let base = labels_of(2 * n, p, 0, 2, 0);
    let valid: Vec<&Vec<Vec<usize>>> = candidates
        .iter()
        .filter(|q| {
            let mut pts = base.clone();
            pts.extend(labels_of(2 * n, q, 1, 2, p.len()));
            chords_noncrossing(&pts)
        })
        .collect();
    let coarsest = *valid.iter().min_by_key(|q| q.len()).expect("some partition is compatible");
    assert!(valid.iter().all(|q| refines(q, coarsest)), "no unique coarsest compatible partition");
    coarsest.clone()
}

fn canonical(n: usize, blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    SetPartition::new(n, blocks).unwrap().blocks().to_vec()
}

#[test]
fn enumeration_matches_chord_filter() {
    for n in 1..=7 {
        let mut expected: Vec<Vec<Vec<usize>>> = all_set_partitions(n)
            .into_iter()
            .filter(|p| chords_noncrossing(&labels_of(n, p, 0, 1, 0)))
            .map(|p| canonical(n, p))
            .collect();
        expected.sort();
        let got: Vec<Vec<Vec<usize>>> = enumerate_nc(n, Limits::default()).unwrap().iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(got, expected, "n = {n}");
    }
}

#[test]
fn kreweras_matches_interleaving_oracle() {
    for n in 1..=7 {
        let candidates: Vec<Vec<Vec<usize>>> = enumerate_nc(n, Limits::default()).unwrap().iter().map(|p| p.blocks().to_vec()).collect();
        for p in enumerate_nc(n, Limits::default()).unwrap() {
            let expected = canonical(n, kreweras_oracle(n, p.blocks(), &candidates));
            assert_eq!(kreweras(&p).blocks(), expected.as_slice(), "p = {}", p.as_set_partition());
        }
    }
}

#[test]
fn kreweras_of_eight_point_example() {
    let n = 8;
    let p = NcPartition::new(n, vec![vec![1], vec![2, 8], vec![3, 5, 6], vec![4], vec![7]]).unwrap();
    let candidates: Vec<Vec<Vec<usize>>> = enumerate_nc(n, Limits::default()).unwrap().iter().map(|p| p.blocks().to_vec()).collect();
    let expected = canonical(n, kreweras_oracle(n, p.blocks(), &candidates));
    assert_eq!(kreweras(&p).blocks(), expected.as_slice());
    assert_eq!(kreweras(&p).as_set_partition().to_string(), "{{1,8},{2,6,7},{3,4},{5}}");
}

#[test]
fn kreweras_of_twelve_point_figure() {
    let n = 12;
    let p = NcPartition::new(
        n,
        vec![vec![1, 5, 12], vec![2, 3], vec![6, 8, 9], vec![4], vec![7], vec![10], vec![11]],
    )
    .unwrap();
    let candidates: Vec<Vec<Vec<usize>>> = enumerate_nc(n, Limits::default()).unwrap().iter().map(|p| p.blocks().to_vec()).collect();
    let oracle = canonical(n, kreweras_oracle(n, p.blocks(), &candidates));
    let k = kreweras(&p);
    assert_eq!(k.blocks(), oracle.as_slice());
    // red polygons as drawn
    let drawn = canonical(n, vec![vec![1, 3, 4], vec![2], vec![5, 9, 10, 11], vec![6, 7], vec![8], vec![12]]);
    assert_eq!(k.blocks(), drawn.as_slice());
    assert_eq!(kreweras(&k), rotate(&p, KREWERAS_SQUARE_SHIFT));
}

#[test]
fn block_counts_add_to_n_plus_one() {
    for n in 1..=8 {
        for p in enumerate_nc(n, Limits::default()).unwrap() {
            assert_eq!(p.num_blocks() + kreweras(&p).num_blocks(), n + 1);
        }
    }
}

#[test]
fn mobius_column_sums_vanish() {
    for n in 2..=8 {
        let total: BigInt = enumerate_nc(n, Limits::default()).unwrap().iter().map(mobius_to_zero).sum();
        assert!(total.is_zero(), "n = {n}");
    }
}

#[test]
fn rotation_commutes_with_meet() {
    for n in 1..=5 {
        let all = enumerate_nc(n, Limits::default()).unwrap();
        for s in -(n as i64)..=(n as i64) {
            for a in &all {
                let ra = rotate(a, s);
                assert!(is_noncrossing(n, ra.blocks()).unwrap());
                for b in &all {
                    assert_eq!(rotate(&meet(a, b).unwrap(), s), meet(&ra, &rotate(b, s)).unwrap());
                }
            }
        }
    }
}

#[test]
fn block_profiles_sum_to_n() {
    for p in enumerate_nc(7, Limits::default()).unwrap() {
        let profile = block_profile(&p);
        let total: usize = (1..=7).map(|k| k * profile.count(k)).sum();
        assert_eq!(total, 7);
    }
}

fn nc_pair() -> impl Strategy<Value = (NcPartition, NcPartition, NcPartition)> {
    (1usize..=7).prop_flat_map(|n| {
        let all = enumerate_nc(n, Limits::default()).unwrap();
        let len = all.len();
        (0..len, 0..len, 0..len).prop_map(move |(i, j, k)| (all[i].clone(), all[j].clone(), all[k].clone()))
    })
}

proptest! {
    #[test]
    fn lattice_laws((a, b, c) in nc_pair()) {
        let m = meet(&a, &b).unwrap();
        let j = join(&a, &b).unwrap();
        prop_assert_eq!(&m, &meet(&b, &a).unwrap());
        prop_assert_eq!(&j, &join(&b, &a).unwrap());
        prop_assert!(leq(&m, &a).unwrap() && leq(&m, &b).unwrap());
        prop_assert!(leq(&a, &j).unwrap() && leq(&b, &j).unwrap());
        prop_assert_eq!(meet(&a, &j).unwrap(), a.clone());
        prop_assert_eq!(join(&a, &m).unwrap(), a.clone());
        prop_assert_eq!(meet(&m, &c).unwrap(), meet(&a, &meet(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(join(&j, &c).unwrap(), join(&a, &join(&b, &c).unwrap()).unwrap());
        // join is least among noncrossing upper bounds
        if leq(&a, &c).unwrap() && leq(&b, &c).unwrap() {
            prop_assert!(leq(&j, &c).unwrap());
        }
    }

    #[test]
    fn kreweras_reverses_meet_and_join((a, b, _c) in nc_pair()) {
        let km = kreweras(&meet(&a, &b).unwrap());
        let kj = join(&kreweras(&a), &kreweras(&b)).unwrap();
        prop_assert_eq!(km, kj);
    }

    #[test]
    fn serde_round_trip((a, _b, _c) in nc_pair()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: NcPartition = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}
