//! Smith normal form, cokernel and kernel of an integer matrix.

use subshift_k::abelian::{cokernel, kernel, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("M = {m}");
    println!("D = {}  (U M V = D verified: {})", snf.d, snf.verify(&m));
    println!("coker M = {}", cokernel(&m));
    let k = kernel(&m);
    println!("ker M has rank {} with basis {:?}", k.rank, k.basis);
}
