//! State-set contexts and predecessor sets of the even shift.

use subshift_k::shift::{Caps, EventuallyPeriodicPoint, ShiftPresentation, SoficGraph, Word};

fn main() -> subshift_k::Result<()> {
    let graph = SoficGraph::from_named(&["a", "b"], &[("a", "a", "1"), ("a", "b", "0"), ("b", "a", "0")])?;
    let p = ShiftPresentation::sofic(graph);
    let caps = Caps::default();
    for c in p.realizable_contexts(&caps)? {
        let x = p.witness(&c, &caps)?;
        let pasts: Vec<String> = p
            .predecessor_set(&c, 2, &caps)?
            .iter()
            .map(|w| p.alphabet().render(w))
            .collect();
        println!("{c:?}: witness {x:?}, P_2 = {{{}}}", pasts.join(","));
    }
    let ones = EventuallyPeriodicPoint::periodic(Word::from(vec![p.alphabet().index_of("1").unwrap()]))?;
    println!("context of 1^inf: {:?}", p.context_of(&ones)?);
    Ok(())
}
