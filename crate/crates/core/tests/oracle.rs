mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use subshift_k::abelian::IntMatrix;
use subshift_k::past::{past_partition, PartitionChain};
use subshift_k::shift::{Caps, ShiftPresentation};

fn class_of_point(chain: &PartitionChain, p: &ShiftPresentation, x: &subshift_k::shift::EventuallyPeriodicPoint, l: usize) -> usize {
    let c = p.context_of(x).unwrap();
    let idx = chain.system().index_of(&c).expect("context of a point is realizable");
    chain.level(l).unwrap().class_of[idx]
}

#[test]
fn predecessor_sets_match_membership_testing() {
    let caps = Caps::default();
    for (name, p) in corpus() {
        for x in sample_points(&p) {
            let c = p.context_of(&x).unwrap();
            for k in 0..=4 {
                let fast: BTreeSet<_> = p.predecessor_set(&c, k, &caps).unwrap().into_iter().collect();
                assert_eq!(fast, brute_pasts(&p, &x, k), "{name}: P_{k} of {x:?}");
            }
        }
    }
}

#[test]
fn partitions_match_word_enumeration() {
    let caps = Caps::default();
    for (name, p) in corpus() {
        let chain = PartitionChain::build(&p, 5, &caps).unwrap();
        for l in 0..=4 {
            let mut seen: BTreeMap<usize, Vec<BTreeSet<_>>> = BTreeMap::new();
            let mut by_signature: BTreeMap<Vec<BTreeSet<_>>, usize> = BTreeMap::new();
            for x in sample_points(&p) {
                let class = class_of_point(&chain, &p, &x, l);
                let sig = brute_signature(&p, &x, l);
                if let Some(prev) = seen.insert(class, sig.clone()) {
                    assert_eq!(prev, sig, "{name}: class {class} at level {l} mixes pasts");
                }
                if let Some(&other) = by_signature.get(&sig) {
                    assert_eq!(other, class, "{name}: equal pasts split at level {l}");
                }
                by_signature.insert(sig, class);
            }
            // every class is realized by a point with its own signature
            let level = chain.level(l).unwrap();
            let mut witnessed = BTreeSet::new();
            for (i, members) in level.classes.iter().enumerate() {
                let sigs: BTreeSet<_> = members
                    .iter()
                    .map(|&c| {
                        let x = p.witness(&chain.contexts()[c], &caps).unwrap();
                        assert!(member(&p, x.preperiod().letters(), x.period().letters()), "{name}: witness");
                        brute_signature(&p, &x, l)
                    })
                    .collect();
                assert_eq!(sigs.len(), 1, "{name}: class {i} at level {l} is not past-uniform");
                witnessed.insert(sigs.into_iter().next().unwrap());
            }
            assert_eq!(witnessed.len(), level.m(), "{name}: level {l} classes share pasts");
            assert_eq!(past_partition(&p, l, &caps).unwrap(), *level);
        }
    }
}

fn check_square(name: &str, what: &str, k: usize, l: usize, left: IntMatrix, right: IntMatrix) {
    assert_eq!(left, right, "{name}: {what} fails at k={k}, l={l}");
}

#[test]
fn tower_diagrams_commute() {
    let caps = Caps::default();
    for (name, p) in corpus() {
        let chain = PartitionChain::build(&p, 10, &caps).unwrap();
        let surjective = p.sigma_surjective(&caps).unwrap();
        for l in 0..8 {
            for k in 0..=l {
                let here = chain.restricted_maps(k, l).unwrap();
                let next = chain.restricted_maps(k, l + 1).unwrap();
                let up = chain.restricted_maps(k + 1, l + 1).unwrap();
                check_square(name, "A-I square", k, l, &next.a * &here.i, &up.i * &here.a);
                if k < l {
                    let side = chain.restricted_maps(k + 1, l).unwrap();
                    let d = here.delta.clone().unwrap();
                    check_square(name, "delta-I square", k, l, &side.i * &d, &next.delta.clone().unwrap() * &here.i);
                    if surjective {
                        check_square(name, "delta-A square", k, l, &side.a * &d, &up.delta.clone().unwrap() * &here.a);
                    }
                }
            }
            let i0 = chain.restricted_maps(0, l).unwrap().i;
            let i0_next = chain.restricted_maps(0, l + 1).unwrap().i;
            check_square(
                name,
                "B square",
                0,
                l,
                &i0_next * &chain.matrix_b(l).unwrap(),
                &chain.matrix_b(l + 1).unwrap() * &i0,
            );
        }
    }
}

/// Off σ-surjective shifts the square `A_{k+1}^l δ_k^l = δ_{k+1}^{l+1} A_k^l`
/// breaks: `δ` kills the class of `10^∞` (no predecessors), while `A` sends
/// it to the class of `0^∞` via `1·0^∞`, and that class has pasts of every length.
#[test]
fn delta_a_square_fails_without_surjectivity() {
    let chain = PartitionChain::build(&finite_two(), 4, &Caps::default()).unwrap();
    let here = chain.restricted_maps(0, 1).unwrap();
    let side = chain.restricted_maps(1, 1).unwrap();
    let up = chain.restricted_maps(1, 2).unwrap();
    let left = &side.a * &here.delta.unwrap();
    let right = &up.delta.unwrap() * &here.a;
    assert_eq!(left, IntMatrix::from_rows(&[vec![1, 0]]));
    assert_eq!(right, IntMatrix::from_rows(&[vec![1, 1]]));
}

#[test]
fn refinement_rows_have_a_single_one() {
    for (name, p) in corpus() {
        let chain = PartitionChain::build(&p, 6, &Caps::default()).unwrap();
        for l in 0..6 {
            let i = chain.matrix_i(l).unwrap();
            for r in 0..i.rows() {
                let ones = i.row(r).iter().filter(|x| **x == 1.into()).count();
                let zeros = i.row(r).iter().filter(|x| **x == 0.into()).count();
                assert_eq!((ones, zeros), (1, i.cols() - 1), "{name}: I_{l} row {r}");
            }
        }
    }
}

#[test]
fn surjective_shifts_have_full_index_sets() {
    for (name, p) in corpus() {
        if !p.sigma_surjective(&Caps::default()).unwrap() {
            continue;
        }
        let chain = PartitionChain::build(&p, 5, &Caps::default()).unwrap();
        for l in 0..5 {
            for k in 0..=l {
                let m = chain.index_set_m(k, l).unwrap();
                assert_eq!(m, (0..chain.level(l).unwrap().m()).collect::<Vec<_>>(), "{name}");
            }
            for k in 0..l {
                let d = chain.restricted_maps(k, l).unwrap().delta.unwrap();
                assert_eq!(d, IntMatrix::identity(d.rows()), "{name}");
            }
        }
    }
}
