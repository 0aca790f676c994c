//! Generators of the finite operator model and the identity checks.

use subshift_k::model::{verify_prop_structure, verify_representation, verify_structure, FiniteModel};
use subshift_k::shift::{Alphabet, EventuallyPeriodicPoint, ShiftPresentation, Word};

fn main() -> subshift_k::Result<()> {
    let zero = EventuallyPeriodicPoint::periodic(Word::from(vec![0]))?;
    let one_zero = EventuallyPeriodicPoint::new(Word::from(vec![1]), Word::from(vec![0]))?;
    let p = ShiftPresentation::finite(Alphabet::numbered(2)?, [zero, one_zero])?;
    let m = FiniteModel::new(&p)?;
    let t1 = m.op_t(&Word::from(vec![1]))?;
    println!("T_1 = {t1}");
    println!("T_1 T_1* = {}", &t1 * &t1.adjoint());
    let counts: Vec<String> = m.fn_preimage_count(1).values().iter().map(ToString::to_string).collect();
    println!("#preimages after one step: {}", counts.join(", "));
    for report in [verify_representation(&m, 3), verify_structure(&m, 3), verify_prop_structure(&m, 3)?] {
        for item in &report.items {
            println!("{:>5} checked, {} failed: {}", item.checked, item.failed, item.name);
        }
    }
    Ok(())
}
