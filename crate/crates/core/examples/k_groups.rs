//! K-groups of a few standard shift spaces.

use subshift_k::abelian::k_groups;
use subshift_k::past::PartitionChain;
use subshift_k::shift::{Caps, ShiftPresentation};

fn main() -> subshift_k::Result<()> {
    let golden = ShiftPresentation::sft_matrix(vec![vec![true, true], vec![true, false]])?;
    let shifts = [
        ("full 2-shift", ShiftPresentation::full_shift(2)?),
        ("full 3-shift", ShiftPresentation::full_shift(3)?),
        ("full 4-shift", ShiftPresentation::full_shift(4)?),
        ("golden mean", golden),
    ];
    for (name, p) in &shifts {
        let chain = PartitionChain::build(p, 12, &Caps::default())?;
        let k = k_groups(&chain)?;
        println!("{name:<14} K0 = {:<4} K1 = {:<4} (stable at level {})", k.k0, k.k1, k.level);
    }
    Ok(())
}
