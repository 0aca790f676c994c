//! The past-equivalence tower of a finite shift with a wandering point.

use subshift_k::past::PartitionChain;
use subshift_k::shift::{Alphabet, Caps, EventuallyPeriodicPoint, ShiftPresentation, Word};

fn main() -> subshift_k::Result<()> {
    let zero = EventuallyPeriodicPoint::periodic(Word::from(vec![0]))?;
    let one_zero = EventuallyPeriodicPoint::new(Word::from(vec![1]), Word::from(vec![0]))?;
    let p = ShiftPresentation::finite(Alphabet::numbered(2)?, [zero, one_zero])?;
    let chain = PartitionChain::build(&p, 4, &Caps::default())?;
    println!("m(l) = {:?}, {:?}", chain.m_sequence(), chain.stabilization());
    for l in 0..3 {
        let level = chain.level(l)?;
        for (i, members) in level.classes.iter().enumerate() {
            let names: Vec<String> = members.iter().map(|&c| chain.render_context(&chain.contexts()[c])).collect();
            println!("level {l} class {i}: {}", names.join(" "));
        }
        let maps = chain.restricted_maps(0, l)?;
        println!("  I = {}  sumA = {}  B = {}", chain.matrix_i(l)?, chain.matrix_a_sum(l)?, chain.matrix_b(l)?);
        if let Some(d) = maps.delta {
            println!("  delta_0^{l} = {d}");
        }
    }
    Ok(())
}
