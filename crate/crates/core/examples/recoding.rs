//! Higher-block recoding, symbolic expansion and letter splitting.

use subshift_k::shift::io::pretty_json;
use subshift_k::shift::{Caps, ShiftPresentation};
use subshift_k::transforms::{higher_block, split_letters, symbolic_expansion, BipartiteExpression};

fn main() -> subshift_k::Result<()> {
    let caps = Caps::default();
    let golden = ShiftPresentation::sft_matrix(vec![vec![true, true], vec![true, false]])?;

    let blocks = higher_block(&golden, 2, &caps)?;
    println!("2-block recoding:\n{}", pretty_json(&blocks.presentation));

    let expanded = symbolic_expansion(&ShiftPresentation::full_shift(2)?, "0", "*", &caps)?;
    println!("expansion of the full 2-shift at 0:\n{}", pretty_json(&expanded.presentation));

    let f = BipartiteExpression::standard(golden.alphabet())?;
    let split = split_letters(&golden, &f, &caps)?;
    println!("union shift alphabet: {:?}", split.union.alphabet().symbols());
    println!("second shift alphabet: {:?}", split.second.alphabet().symbols());
    Ok(())
}
