//! One check per acceptance criterion. Each returns a short summary on
//! success and the first discrepancy on failure.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use subshift_k::abelian::{
    cokernel, compare_triples, dimension_triple, k_groups, kernel, smith_normal_form, IntMatrix, Verdict,
};
use subshift_k::model::{verify_prop_structure, verify_representation, verify_structure, FiniteModel};
use subshift_k::past::{past_partition, PartitionChain};
use subshift_k::shift::{Caps, ShiftPresentation};
use subshift_k::transforms::{higher_block, split_letters, symbolic_expansion, BipartiteExpression};

use super::*;

pub type Check = Result<String, String>;

fn caps() -> Caps {
    Caps::default()
}

fn groups(p: &ShiftPresentation) -> Result<(String, String), String> {
    let chain = PartitionChain::build(p, 12, &caps()).map_err(|e| e.to_string())?;
    let k = k_groups(&chain).map_err(|e| e.to_string())?;
    Ok((k.k0.to_string(), k.k1.to_string()))
}

fn expect_groups(name: &str, p: &ShiftPresentation, k0: &str, k1: &str) -> Result<(), String> {
    let got = groups(p)?;
    if got != (k0.to_string(), k1.to_string()) {
        return Err(format!("{name}: expected ({k0}, {k1}), got {got:?}"));
    }
    Ok(())
}

/// Worked K-groups of full shifts, the golden mean shift and a single point.
pub fn worked_k_groups() -> Check {
    expect_groups("full-2", &full(2), "0", "0")?;
    expect_groups("full-3", &full(3), "Z/2", "0")?;
    expect_groups("full-4", &full(4), "Z/3", "0")?;
    expect_groups("golden mean", &golden_mean(), "0", "0")?;
    expect_groups("single point", &single_point(), "Z", "Z")?;
    Ok("full-2/3/4: 0, Z/2, Z/3; golden mean 0, 0; point Z, Z".into())
}

fn bool_matrix(adj: &[Vec<bool>]) -> IntMatrix {
    IntMatrix::from_fn(adj.len(), adj.len(), |i, j| BigInt::from(adj[i][j] as u8))
}

/// `K₀` from the tower against `coker(I − Aᵀ)` of the adjacency matrix.
pub fn cuntz_krieger_cross_check() -> Check {
    let mut matrices = vec![vec![vec![true, true], vec![true, false]]];
    matrices.extend((2..=4).map(|n| vec![vec![true; n]; n]));
    let mut r = rng(0xC0FFEE);
    for _ in 0..10 {
        let n = r.gen_range(1..=5);
        matrices.push(random_essential(&mut r, n));
    }
    for adj in &matrices {
        let p = ShiftPresentation::sft_matrix(adj.clone()).map_err(|e| e.to_string())?;
        let a = bool_matrix(adj);
        let direct = cokernel(&(&IntMatrix::identity(adj.len()) - &a.transpose()));
        let chain = PartitionChain::build(&p, 12, &caps()).map_err(|e| e.to_string())?;
        let k = k_groups(&chain).map_err(|e| format!("{a}: {e}"))?;
        if k.k0 != direct {
            return Err(format!("{a}: tower gives {}, coker(I - A^T) = {direct}", k.k0));
        }
    }
    Ok(format!("{} adjacency matrices agree", matrices.len()))
}

/// Lemma square, both δ squares and the `B` square for `0 ≤ k ≤ ℓ < 8`.
pub fn tower_diagrams() -> Check {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, p) in corpus() {
        let chain = PartitionChain::build(&p, 10, &caps()).map_err(|e| e.to_string())?;
        for l in 0..8 {
            for k in 0..=l {
                let maps = |k, l| chain.restricted_maps(k, l).map_err(|e| e.to_string());
                let (here, next, up) = (maps(k, l)?, maps(k, l + 1)?, maps(k + 1, l + 1)?);
                let mut square = |what: &str, left: IntMatrix, right: IntMatrix| {
                    checked += 1;
                    if left != right {
                        failures.push(format!("{name}: {what} at k={k}, l={l}: {left} vs {right}"));
                    }
                };
                square("A-I square", &next.a * &here.i, &up.i * &here.a);
                if k < l {
                    let side = maps(k + 1, l)?;
                    let d = here.delta.clone().expect("k < l");
                    square("delta-I square", &side.i * &d, &next.delta.clone().expect("k < l+1") * &here.i);
                    square("delta-A square", &side.a * &d, &up.delta.clone().expect("k+1 < l+1") * &here.a);
                }
            }
            let i0 = chain.restricted_maps(0, l).map_err(|e| e.to_string())?.i;
            let i0_next = chain.restricted_maps(0, l + 1).map_err(|e| e.to_string())?.i;
            let b = chain.matrix_b(l).map_err(|e| e.to_string())?;
            let b_next = chain.matrix_b(l + 1).map_err(|e| e.to_string())?;
            checked += 1;
            if &i0_next * &b != &b_next * &i0 {
                failures.push(format!("{name}: B square at l={l}"));
            }
        }
    }
    match failures.first() {
        None => Ok(format!("{checked} squares commute")),
        Some(first) => {
            let kinds: BTreeSet<&str> = failures
                .iter()
                .filter_map(|f| f.split(": ").nth(1))
                .map(|k| k.split(" at ").next().unwrap_or(k))
                .collect();
            let names: BTreeSet<&str> = failures.iter().filter_map(|f| f.split(": ").next()).collect();
            Err(format!(
                "{} of {checked} squares fail ({}) on [{}]; first: {first}",
                failures.len(),
                kinds.into_iter().collect::<Vec<_>>().join(", "),
                names.into_iter().collect::<Vec<_>>().join("; ")
            ))
        }
    }
}

/// 2- and 3-block recodings keep `K₀`, `K₁` and are never told apart.
pub fn conjugacy_invariance() -> Check {
    let mut count = 0;
    let mut inputs = sft_corpus();
    inputs.extend(sofic_corpus());
    for (name, p) in inputs {
        let chain = PartitionChain::build(&p, 12, &caps()).map_err(|e| e.to_string())?;
        let (k, triple) = (
            k_groups(&chain).map_err(|e| e.to_string())?,
            dimension_triple(&chain).map_err(|e| e.to_string())?,
        );
        for n in [2, 3] {
            let q = higher_block(&p, n, &caps()).map_err(|e| e.to_string())?.presentation;
            let chain_q = PartitionChain::build(&q, 12, &caps()).map_err(|e| e.to_string())?;
            let kq = k_groups(&chain_q).map_err(|e| format!("{name} {n}-block: {e}"))?;
            if (kq.k0.clone(), kq.k1.clone()) != (k.k0.clone(), k.k1.clone()) {
                return Err(format!("{name} {n}-block: ({}, {}) vs ({}, {})", kq.k0, kq.k1, k.k0, k.k1));
            }
            let tq = dimension_triple(&chain_q).map_err(|e| e.to_string())?;
            if let Verdict::Distinguished { witness } = compare_triples(&triple, &tq, 4) {
                return Err(format!("{name} {n}-block distinguished: {witness}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} recodings agree"))
}

/// Symbolic expansion keeps `K₀`.
pub fn expansion_invariance() -> Check {
    for (name, p) in [("full-3", full(3)), ("golden mean", golden_mean())] {
        let q = symbolic_expansion(&p, "0", "*", &caps()).map_err(|e| e.to_string())?.presentation;
        let (a, b) = (groups(&p)?, groups(&q)?);
        if a.0 != b.0 {
            return Err(format!("{name}: K0 {} vs expanded {}", a.0, b.0));
        }
    }
    Ok("full-3 and golden mean keep K0 under expansion".into())
}

/// Side of each level-`ℓ` class of the union shift, read off witness points.
fn class_sides(chain: &PartitionChain, f: &BipartiteExpression, l: usize) -> Result<Vec<bool>, String> {
    let p = chain.presentation();
    let level = chain.level(l).map_err(|e| e.to_string())?;
    level
        .classes
        .iter()
        .enumerate()
        .map(|(i, members)| {
            let sides: BTreeSet<bool> = members
                .iter()
                .map(|&c| {
                    let x = p.witness(&chain.contexts()[c], &caps()).map_err(|e| e.to_string())?;
                    Ok(f.is_first_side(x.letter(0)))
                })
                .collect::<Result<_, String>>()?;
            if sides.len() != 1 {
                return Err(format!("level {l} class {i} meets both sides"));
            }
            Ok(sides.into_iter().next().unwrap())
        })
        .collect()
}

/// Union shift of a bipartite expression: one-sided classes, antidiagonal step
/// map, and the squared step on side one reproducing the original `K₀`.
pub fn bipartite_structure() -> Check {
    for (name, p) in [("full-2", full(2)), ("golden mean", golden_mean())] {
        let f = BipartiteExpression::standard(p.alphabet()).map_err(|e| e.to_string())?;
        let split = split_letters(&p, &f, &caps()).map_err(|e| e.to_string())?;
        let chain = PartitionChain::build(&split.union, 12, &caps()).map_err(|e| e.to_string())?;
        let l0 = chain.stable_level().ok_or(format!("{name}: union tower did not stabilise"))?;
        for l in 1..chain.lmax() {
            let sides = class_sides(&chain, &f, l).map_err(|e| format!("{name}: {e}"))?;
            let step = chain.matrix_a_sum(l).map_err(|e| e.to_string())?;
            let next_sides = class_sides(&chain, &f, l + 1).map_err(|e| format!("{name}: {e}"))?;
            for i in 0..step.rows() {
                for j in 0..step.cols() {
                    if step[(i, j)] != BigInt::from(0) && next_sides[i] == sides[j] {
                        return Err(format!("{name}: step map at level {l} keeps side at ({i},{j})"));
                    }
                }
            }
        }
        let sides = class_sides(&chain, &f, l0).map_err(|e| format!("{name}: {e}"))?;
        let step = chain.matrix_a_sum(l0).map_err(|e| e.to_string())?;
        let first: Vec<usize> = (0..sides.len()).filter(|&i| sides[i]).collect();
        let squared = (&step * &step).select(&first, &first);
        let union_k0 = cokernel(&(&IntMatrix::identity(first.len()) - &squared));
        let original = PartitionChain::build(&p, 12, &caps()).map_err(|e| e.to_string())?;
        let k0 = k_groups(&original).map_err(|e| e.to_string())?.k0;
        if union_k0 != k0 {
            return Err(format!("{name}: side-one squared step gives {union_k0}, original K0 {k0}"));
        }
    }
    Ok("full-2 and golden mean: sides separate, step antidiagonal, K0 recovered".into())
}

/// Operator identities on the five finite shift spaces at `L = 3`.
pub fn operator_identities() -> Check {
    let mut total = 0;
    for (name, p) in finite_corpus() {
        let m = FiniteModel::new(&p).map_err(|e| e.to_string())?;
        let reports = [
            verify_representation(&m, 3),
            verify_structure(&m, 3),
            verify_prop_structure(&m, 3).map_err(|e| format!("{name}: {e}"))?,
        ];
        for r in &reports {
            if let Some(item) = r.items.iter().find(|i| i.failed > 0) {
                return Err(format!("{name}: {} failed {} times", item.name, item.failed));
            }
            total += r.items.iter().map(|i| i.checked).sum::<usize>();
        }
    }
    Ok(format!("{total} exact identities hold"))
}

/// Partitions and predecessor sets against word enumeration, `ℓ, k ≤ 4`.
pub fn oracle_equivalence() -> Check {
    let mut points = 0;
    for (name, p) in corpus() {
        let chain = PartitionChain::build(&p, 5, &caps()).map_err(|e| e.to_string())?;
        let samples = sample_points(&p);
        points += samples.len();
        for x in &samples {
            let c = p.context_of(x).map_err(|e| e.to_string())?;
            for k in 0..=4 {
                let fast: BTreeSet<_> = p.predecessor_set(&c, k, &caps()).map_err(|e| e.to_string())?.into_iter().collect();
                if fast != brute_pasts(&p, x, k) {
                    return Err(format!("{name}: P_{k} of {x:?}"));
                }
            }
        }
        for l in 0..=4 {
            let level = past_partition(&p, l, &caps()).map_err(|e| e.to_string())?;
            let mut class_sig: BTreeMap<usize, Vec<BTreeSet<_>>> = BTreeMap::new();
            for x in &samples {
                let idx = chain.system().index_of(&p.context_of(x).map_err(|e| e.to_string())?);
                let class = level.class_of[idx.ok_or(format!("{name}: unrealized context"))?];
                let sig = brute_signature(&p, x, l);
                if class_sig.insert(class, sig.clone()).is_some_and(|s| s != sig) {
                    return Err(format!("{name}: level {l} class {class} mixes pasts"));
                }
            }
            let distinct: BTreeSet<_> = class_sig.values().collect();
            if distinct.len() != class_sig.len() {
                return Err(format!("{name}: level {l} splits equal pasts"));
            }
            let brute_classes = brute_partition(&p, l).len();
            if brute_classes != class_sig.len() {
                return Err(format!("{name}: level {l} sample has {brute_classes} past classes, tower {}", class_sig.len()));
            }
        }
    }
    Ok(format!("{points} sample points agree"))
}

fn random_unimodular(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..(3 * n) {
        if n < 2 {
            break;
        }
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j {
            continue;
        }
        let c: i64 = r.gen_range(-2..=2);
        let e = IntMatrix::from_fn(n, n, |a, b| {
            BigInt::from(if a == b { 1 } else if a == i && b == j { c } else { 0 })
        });
        u = &e * &u;
    }
    u
}

/// Smith forms, rank–nullity and unimodular invariance on random matrices.
pub fn integer_algebra() -> Check {
    let mut r = rng(0x5EED_0009);
    for t in 0..200 {
        let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let m = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(r.gen_range(-5i64..=5)));
        let snf = smith_normal_form(&m);
        if !snf.verify(&m) {
            return Err(format!("case {t}: Smith form of {m} does not verify"));
        }
        if snf.rank() + kernel(&m).rank != cols {
            return Err(format!("case {t}: rank-nullity fails for {m}"));
        }
        let moved = &(&random_unimodular(&mut r, rows) * &m) * &random_unimodular(&mut r, cols);
        if cokernel(&moved) != cokernel(&m) {
            return Err(format!("case {t}: cokernel changes under unimodular moves of {m}"));
        }
    }
    Ok("200 random matrices".into())
}

