use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::matrix::{IntMatrix, JsonInt};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Recomputes `U·M·V = D`, unimodularity, diagonality and the divisibility chain.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let diag = self.diagonal();
        let is_diagonal = (0..self.d.rows())
            .all(|i| (0..self.d.cols()).all(|j| i == j || self.d[(i, j)].is_zero()));
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        is_diagonal
            && chain
            && diag.iter().all(|x| !x.is_negative())
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
            && &(&self.u * m) * &self.v == self.d
    }
}

fn min_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if !a[(i, j)].is_zero()
                && best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
            {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = BigInt::one();
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                }
            }
            // restore a smallest pivot in row/column t
            let mut best = (t, t);
            for i in t..r {
                if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                    best = (t, j);
                }
            }
            a.swap_rows(t, best.0);
            u.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
            v.swap_cols(t, best.1);
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u, d: a, v }
}

/// A finitely generated abelian group `Z^r + Z/d₁ + … + Z/d_k`, `dᵢ ≥ 2`, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    free_rank: usize,
    torsion: Vec<JsonInt>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(JsonInt::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let g = GroupJson::deserialize(d)?;
        Ok(FgAbelianGroup {
            free_rank: g.free_rank,
            torsion: g
                .torsion
                .into_iter()
                .map(JsonInt::into_bigint)
                .collect::<Result<_, _>>()
                .map_err(serde::de::Error::custom)?,
        })
    }
}

/// `Z^rows / im(M)`.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    FgAbelianGroup {
        free_rank: m.rows() - rank,
        torsion: diag.into_iter().filter(|d| d > &BigInt::one()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
}

/// An integral basis of `ker(M) ⊆ Z^cols`.
pub fn kernel(m: &IntMatrix) -> Kernel {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    Kernel {
        rank: basis.len(),
        basis,
    }
}
