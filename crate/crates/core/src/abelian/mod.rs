//! Exact integer linear algebra and the K-groups of a stabilised tower.

mod matrix;
mod snf;
mod triple;

pub use matrix::IntMatrix;
pub use snf::{cokernel, kernel, smith_normal_form, FgAbelianGroup, Kernel, SmithForm};
pub use triple::{
    characteristic_polynomial, compare_triples, dimension_triple, Certificate, StationarySystem,
    Verdict,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::past::PartitionChain;

/// `coker(B^ℓ)` and `rank ker(B^ℓ)` at one level, without claiming a limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub b: IntMatrix,
    pub cokernel: FgAbelianGroup,
    pub kernel_rank: usize,
}

impl LevelReport {
    pub fn at(chain: &PartitionChain, level: usize) -> Result<Self> {
        let b = chain.matrix_b(level)?;
        Ok(LevelReport {
            level,
            cokernel: cokernel(&b),
            kernel_rank: kernel(&b).rank,
            b,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGroups {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    /// The stable level whose `B` was used.
    pub level: usize,
    pub b: IntMatrix,
}

fn partial_reports(chain: &PartitionChain) -> Result<Vec<LevelReport>> {
    (0..chain.lmax()).map(|l| LevelReport::at(chain, l)).collect()
}

/// The stable level, or `NotStabilized` carrying every per-level report.
pub(crate) fn require_stable(chain: &PartitionChain) -> Result<usize> {
    chain.stable_level().ok_or_else(|| match partial_reports(chain) {
        Ok(partial) => Error::NotStabilized {
            lmax: chain.lmax(),
            partial,
        },
        Err(e) => e,
    })
}

/// `K₀ = coker(B)` and `K₁ = ker(B)` at the stable level, checked equal at
/// every later level of the tower.
pub fn k_groups(chain: &PartitionChain) -> Result<KGroups> {
    let l0 = require_stable(chain)?;
    let first = LevelReport::at(chain, l0)?;
    for l in l0 + 1..chain.lmax() {
        let r = LevelReport::at(chain, l)?;
        if r.cokernel != first.cokernel || r.kernel_rank != first.kernel_rank {
            return Err(Error::Inconsistent(format!(
                "K-groups differ between stable levels {l0} and {l}"
            )));
        }
    }
    Ok(KGroups {
        k0: first.cokernel,
        k1: FgAbelianGroup::free(first.kernel_rank),
        level: l0,
        b: first.b,
    })
}
