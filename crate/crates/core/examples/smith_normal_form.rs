// Smith and Hermite normal forms with their unimodular certificates.

use num_bigint::BigInt;
use toric_fsig::linalg::{cokernel_invariants, hermite_normal_form, smith_normal_form, IntMat};

pub fn run_example() -> toric_fsig::Result<()> {
    let a = IntMat::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    println!("diagonal {:?}", snf.diagonal());
    let inv = cokernel_invariants(&a);
    println!("coker = Z^{} + torsion {:?}", inv.free_rank, inv.invariant_factors);

    let (h, u) = hermite_normal_form(&a);
    assert_eq!(u.mul(&a), h);
    assert!(u.is_unimodular());
    println!("hermite form rows {:?}", h.to_i64_rows().unwrap());
    println!("det = {}", a.determinant());
    assert_eq!(a.determinant(), BigInt::from(-144));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
