use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{cokernel, kernel, require_stable, smith_normal_form, FgAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::past::PartitionChain;

/// Finite data of the dimension triple: the stable stage `Z^m` with its
/// coordinatewise cone, the step map `ΣA`, and the coordinates whose classes
/// have nonempty pasts of every length (where `δ` acts as the identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StationarySystem {
    pub rank: usize,
    pub step_map: IntMatrix,
    /// Generators of the positive cone: the standard basis vectors.
    pub positive_cone_gens: Vec<usize>,
    pub delta_mask: Vec<bool>,
}

impl StationarySystem {
    pub fn new(step_map: IntMatrix, delta_mask: Vec<bool>) -> Result<Self> {
        if !step_map.is_square() || delta_mask.len() != step_map.rows() {
            return Err(Error::OutOfRange("step map must be square and match the mask".into()));
        }
        Ok(StationarySystem {
            rank: step_map.rows(),
            positive_cone_gens: (0..step_map.rows()).collect(),
            step_map,
            delta_mask,
        })
    }

    pub fn mask_indices(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.delta_mask[i]).collect()
    }

    /// The step map on the masked coordinates.
    pub fn core(&self) -> IntMatrix {
        let idx = self.mask_indices();
        self.step_map.select(&idx, &idx)
    }

    pub fn k0(&self) -> FgAbelianGroup {
        cokernel(&(&IntMatrix::identity(self.rank) - &self.step_map))
    }

    pub fn k1(&self) -> FgAbelianGroup {
        FgAbelianGroup::free(kernel(&(&IntMatrix::identity(self.rank) - &self.step_map)).rank)
    }
}

/// `ΣA` at the stable level, checked identical at every later level.
pub fn dimension_triple(chain: &PartitionChain) -> Result<StationarySystem> {
    let l0 = require_stable(chain)?;
    let step = chain.matrix_a_sum(l0)?;
    for l in l0 + 1..chain.lmax() {
        if chain.matrix_a_sum(l)? != step {
            return Err(Error::Inconsistent(format!(
                "step map differs between stable levels {l0} and {l}"
            )));
        }
    }
    StationarySystem::new(step, chain.eventual_mask(l0)?)
}

/// Coefficients of `det(λI − A)`, leading coefficient first (Faddeev–LeVerrier).
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let mut coeffs = vec![BigInt::one()];
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = &(a * &m) + &IntMatrix::identity(n).scale(&coeffs[k - 1]);
        std::mem::swap(&mut m, &mut next);
        let am = a * &m;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs.push(-trace / BigInt::from(k));
    }
    coeffs
}

impl IntMatrix {
    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows(), self.cols(), |i, j| &self[(i, j)] * c)
    }
}

fn nonzero_charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let mut c = characteristic_polynomial(a);
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn eventual_rank(a: &IntMatrix) -> usize {
    smith_normal_form(&a.pow(a.rows() as u32)).rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `step₂ = P · step₁ · Pᵀ` with `perm[i]` the image of coordinate `i`.
    Permutation { perm: Vec<usize> },
    /// Nonnegative `R`, `S` with `A·R = R·B`, `S·A = B·S`, `R·S = A^lag`, `S·R = B^lag`
    /// on the cores.
    ShiftEquivalence { lag: u32, r: IntMatrix, s: IntMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    EquivalentCertificate { certificate: Certificate },
    Distinguished { witness: String },
    Inconclusive { reason: String },
}

fn find_permutation(s1: &StationarySystem, s2: &StationarySystem) -> Option<Vec<usize>> {
    fn extend(
        s1: &StationarySystem,
        s2: &StationarySystem,
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == s1.rank {
            return true;
        }
        for t in 0..s2.rank {
            if used[t] || s1.delta_mask[i] != s2.delta_mask[t] {
                continue;
            }
            let fits = s1.step_map[(i, i)] == s2.step_map[(t, t)]
                && (0..i).all(|j| {
                    s1.step_map[(i, j)] == s2.step_map[(t, perm[j])]
                        && s1.step_map[(j, i)] == s2.step_map[(perm[j], t)]
                });
            if fits {
                perm.push(t);
                used[t] = true;
                if extend(s1, s2, perm, used) {
                    return true;
                }
                perm.pop();
                used[t] = false;
            }
        }
        false
    }
    if s1.rank != s2.rank {
        return None;
    }
    let mut perm = Vec::with_capacity(s1.rank);
    let mut used = vec![false; s2.rank];
    extend(s1, s2, &mut perm, &mut used).then_some(perm)
}

/// Largest `rows·cols` searched for a 0/1 shift equivalence.
const SEARCH_CELLS: usize = 12;

/// 0/1 matrices `X` (`rows × cols`) with `left·X = X·right`.
fn intertwiners(left: &IntMatrix, right: &IntMatrix) -> Vec<IntMatrix> {
    let (r, c) = (left.rows(), right.rows());
    (0u32..1 << (r * c))
        .map(|bits| IntMatrix::from_fn(r, c, |i, j| BigInt::from((bits >> (i * c + j)) & 1)))
        .filter(|x| !x.is_zero() && &(left * x) == &(x * right))
        .collect()
}

fn find_shift_equivalence(a: &IntMatrix, b: &IntMatrix, max_lag: u32) -> Option<Certificate> {
    if a.rows() * b.rows() > SEARCH_CELLS || a.rows() == 0 || b.rows() == 0 {
        return None;
    }
    let rs = intertwiners(a, b);
    let ss = intertwiners(b, a);
    for lag in 1..=max_lag.max(1) {
        let (al, bl) = (a.pow(lag), b.pow(lag));
        for r in &rs {
            for s in &ss {
                if &(r * s) == &al && &(s * r) == &bl {
                    return Some(Certificate::ShiftEquivalence {
                        lag,
                        r: r.clone(),
                        s: s.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Compares two stationary systems through invariants of the dimension
/// triple and the K-groups, then searches for an explicit isomorphism.
pub fn compare_triples(s1: &StationarySystem, s2: &StationarySystem, depth: usize) -> Verdict {
    let differ = |what: &str, x: String, y: String| Verdict::Distinguished {
        witness: format!("{what}: {x} vs {y}"),
    };
    let (k0a, k0b) = (s1.k0(), s2.k0());
    if k0a != k0b {
        return differ("K0", k0a.to_string(), k0b.to_string());
    }
    let (k1a, k1b) = (s1.k1(), s2.k1());
    if k1a != k1b {
        return differ("K1", k1a.to_string(), k1b.to_string());
    }
    let (c1, c2) = (s1.core(), s2.core());
    let (r1, r2) = (eventual_rank(&c1), eventual_rank(&c2));
    if r1 != r2 {
        return differ("eventual rank", r1.to_string(), r2.to_string());
    }
    let (p1, p2) = (nonzero_charpoly(&c1), nonzero_charpoly(&c2));
    if p1 != p2 {
        let show = |p: &[BigInt]| format!("{p:?}");
        return differ("nonzero characteristic polynomial", show(&p1), show(&p2));
    }
    for n in 1..=depth.max(1) as u32 {
        let g1 = cokernel(&(&IntMatrix::identity(c1.rows()) - &c1.pow(n)));
        let g2 = cokernel(&(&IntMatrix::identity(c2.rows()) - &c2.pow(n)));
        if g1 != g2 {
            return differ(&format!("coker(I - core^{n})"), g1.to_string(), g2.to_string());
        }
    }
    if let Some(perm) = find_permutation(s1, s2) {
        return Verdict::EquivalentCertificate {
            certificate: Certificate::Permutation { perm },
        };
    }
    let full = |s: &StationarySystem| s.delta_mask.iter().all(|&b| b);
    if full(s1) && full(s2) {
        if let Some(c) = find_shift_equivalence(&s1.step_map, &s2.step_map, depth as u32) {
            return Verdict::EquivalentCertificate { certificate: c };
        }
    }
    Verdict::Inconclusive {
        reason: "all computed invariants agree but no isomorphism was found".into(),
    }
}
