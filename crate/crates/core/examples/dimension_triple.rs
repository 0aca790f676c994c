//! Dimension triples of a shift and of its 2-block recoding, compared.

use subshift_k::abelian::{compare_triples, dimension_triple};
use subshift_k::past::PartitionChain;
use subshift_k::shift::{Caps, ShiftPresentation};
use subshift_k::transforms::higher_block;

fn main() -> subshift_k::Result<()> {
    let caps = Caps::default();
    let golden = ShiftPresentation::sft_matrix(vec![vec![true, true], vec![true, false]])?;
    let recoded = higher_block(&golden, 2, &caps)?.presentation;
    let a = dimension_triple(&PartitionChain::build(&golden, 12, &caps)?)?;
    let b = dimension_triple(&PartitionChain::build(&recoded, 12, &caps)?)?;
    println!("golden mean: step {} mask {:?}", a.step_map, a.delta_mask);
    println!("2-block:     step {} mask {:?}", b.step_map, b.delta_mask);
    println!("{}", serde_json::to_string_pretty(&compare_triples(&a, &b, 4)).unwrap());
    let f3 = dimension_triple(&PartitionChain::build(&ShiftPresentation::full_shift(3)?, 12, &caps)?)?;
    println!("{}", serde_json::to_string(&compare_triples(&a, &f3, 4)).unwrap());
    Ok(())
}
