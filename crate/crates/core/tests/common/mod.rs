//! Shared corpus and brute-force oracles. The oracles read only the raw
//! presentation data (forbidden words, adjacency, graph edges, point lists)
//! and never go through contexts or partitions.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subshift_k::shift::{Alphabet, EventuallyPeriodicPoint, ShiftPresentation, SoficGraph, Word};

pub fn w(letters: &[usize]) -> Word {
    Word::from(letters.to_vec())
}

pub fn pt(pre: &[usize], per: &[usize]) -> EventuallyPeriodicPoint {
    EventuallyPeriodicPoint::new(w(pre), w(per)).unwrap()
}

fn binary() -> Alphabet {
    Alphabet::numbered(2).unwrap()
}

pub fn golden_mean() -> ShiftPresentation {
    ShiftPresentation::sft_matrix(vec![vec![true, true], vec![true, false]]).unwrap()
}

pub fn full(n: usize) -> ShiftPresentation {
    ShiftPresentation::full_shift(n).unwrap()
}

pub fn even_shift() -> ShiftPresentation {
    ShiftPresentation::sofic(
        SoficGraph::from_named(&["a", "b"], &[("a", "a", "1"), ("a", "b", "0"), ("b", "a", "0")]).unwrap(),
    )
}

pub fn finite(points: &[EventuallyPeriodicPoint]) -> ShiftPresentation {
    ShiftPresentation::finite(binary(), points.iter().cloned()).unwrap()
}

pub fn single_point() -> ShiftPresentation {
    ShiftPresentation::finite(Alphabet::numbered(1).unwrap(), [pt(&[], &[0])]).unwrap()
}

pub fn finite_two() -> ShiftPresentation {
    finite(&[pt(&[], &[0]), pt(&[1], &[0])])
}

/// The five finite shift spaces of the operator-model corpus.
pub fn finite_corpus() -> Vec<(&'static str, ShiftPresentation)> {
    vec![
        ("single point", single_point()),
        ("{0^inf, 10^inf}", finite_two()),
        ("2-cycle", finite(&[pt(&[], &[0, 1]), pt(&[], &[1, 0])])),
        ("2-cycle with 0^inf", finite(&[pt(&[], &[0, 1]), pt(&[], &[1, 0]), pt(&[], &[0])])),
        ("3-point chain", finite(&[pt(&[], &[0]), pt(&[1], &[0]), pt(&[1, 1], &[0])])),
    ]
}

pub fn sft_corpus() -> Vec<(&'static str, ShiftPresentation)> {
    vec![
        ("full-2", full(2)),
        ("full-3", full(3)),
        ("golden mean", golden_mean()),
        ("no 11", ShiftPresentation::sft(binary(), [w(&[1, 1])]).unwrap()),
        ("no 111", ShiftPresentation::sft(binary(), [w(&[1, 1, 1])]).unwrap()),
        ("no 010, 11", ShiftPresentation::sft(binary(), [w(&[0, 1, 0]), w(&[1, 1])]).unwrap()),
    ]
}

pub fn sofic_corpus() -> Vec<(&'static str, ShiftPresentation)> {
    vec![
        ("even shift", even_shift()),
        (
            "non-resolving sofic",
            ShiftPresentation::sofic(
                SoficGraph::from_named(
                    &["p", "q"],
                    &[("p", "p", "0"), ("p", "q", "0"), ("p", "q", "1"), ("q", "p", "0")],
                )
                .unwrap(),
            ),
        ),
        (
            "charge-2 sofic",
            ShiftPresentation::sofic(
                SoficGraph::from_named(
                    &["p", "q", "r"],
                    &[("p", "q", "1"), ("q", "p", "0"), ("q", "r", "1"), ("r", "q", "0")],
                )
                .unwrap(),
            ),
        ),
    ]
}

pub fn corpus() -> Vec<(&'static str, ShiftPresentation)> {
    let mut all = sft_corpus();
    all.extend(sofic_corpus());
    all.extend(finite_corpus());
    all
}

/// `pre · per^∞ ∈ X`, decided from the raw presentation data.
pub fn member(p: &ShiftPresentation, pre: &[usize], per: &[usize]) -> bool {
    match p {
        ShiftPresentation::Sft(s) => {
            let forbidden: Vec<Vec<usize>> = s.forbidden().map(|f| f.letters().to_vec()).collect();
            avoids(&forbidden, pre, per)
        }
        ShiftPresentation::SftMatrix(m) => {
            let adj = m.adjacency();
            let forbidden: Vec<Vec<usize>> = (0..adj.len())
                .flat_map(|i| (0..adj.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !adj[i][j])
                .map(|(i, j)| vec![i, j])
                .collect();
            avoids(&forbidden, pre, per)
        }
        ShiftPresentation::Sofic(g) => sofic_member(g, pre, per),
        ShiftPresentation::Finite(f) => {
            let x = pt(pre, per);
            f.points().any(|y| *y == x)
        }
    }
}

fn avoids(forbidden: &[Vec<usize>], pre: &[usize], per: &[usize]) -> bool {
    let longest = forbidden.iter().map(Vec::len).max().unwrap_or(0);
    let mut s = pre.to_vec();
    while s.len() < pre.len() + per.len() + longest {
        s.extend_from_slice(per);
    }
    (0..pre.len() + per.len()).all(|i| forbidden.iter().all(|f| !s[i..].starts_with(f)))
}

/// Subset simulation: the point is accepted iff the set of states reached
/// after reading `pre · per^j` is nonempty for every `j`.
fn sofic_member(g: &SoficGraph, pre: &[usize], per: &[usize]) -> bool {
    let step = |set: &BTreeSet<usize>, a: usize| -> BTreeSet<usize> {
        g.edges()
            .iter()
            .filter(|e| e.label == a && set.contains(&e.from))
            .map(|e| e.to)
            .collect()
    };
    let mut set: BTreeSet<usize> = (0..g.num_states()).collect();
    for &a in pre {
        set = step(&set, a);
    }
    let mut seen = BTreeSet::new();
    loop {
        if set.is_empty() {
            return false;
        }
        if !seen.insert(set.clone()) {
            return true;
        }
        for &a in per {
            set = step(&set, a);
        }
    }
}

/// `P_k(x)` by testing every word of length `k`.
pub fn brute_pasts(p: &ShiftPresentation, x: &EventuallyPeriodicPoint, k: usize) -> BTreeSet<Word> {
    p.alphabet()
        .words_of_length(k)
        .into_iter()
        .filter(|u| {
            let mut pre = u.letters().to_vec();
            pre.extend_from_slice(x.preperiod().letters());
            member(p, &pre, x.period().letters())
        })
        .collect()
}

pub fn brute_signature(p: &ShiftPresentation, x: &EventuallyPeriodicPoint, l: usize) -> Vec<BTreeSet<Word>> {
    (0..=l).map(|k| brute_pasts(p, x, k)).collect()
}

/// Points `pre · per^∞` of `X` with short preperiod and period.
pub fn sample_points(p: &ShiftPresentation) -> Vec<EventuallyPeriodicPoint> {
    let n = p.alphabet().len();
    let (max_pre, max_per) = if n <= 2 { (4, 3) } else { (2, 2) };
    let a = p.alphabet();
    let mut out = BTreeSet::new();
    for pre in a.words_up_to(max_pre) {
        for per in a.words_up_to(max_per).into_iter().filter(|w| !w.is_empty()) {
            if member(p, pre.letters(), per.letters()) {
                out.insert(EventuallyPeriodicPoint::new(pre.clone(), per).unwrap());
            }
        }
    }
    out.into_iter().collect()
}

/// Groups sample points by their brute-force signature up to level `l`.
pub fn brute_partition(p: &ShiftPresentation, l: usize) -> BTreeMap<Vec<BTreeSet<Word>>, Vec<EventuallyPeriodicPoint>> {
    let mut groups: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for x in sample_points(p) {
        groups.entry(brute_signature(p, &x, l)).or_default().push(x);
    }
    groups
}

/// Random 0/1 matrices of the given size with no zero row or column.
pub fn random_essential(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<bool>> {
    loop {
        let m: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.45)).collect()).collect();
        let rows_ok = m.iter().all(|r| r.iter().any(|&b| b));
        let cols_ok = (0..n).all(|j| m.iter().any(|r| r[j]));
        if rows_ok && cols_ok {
            return m;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
