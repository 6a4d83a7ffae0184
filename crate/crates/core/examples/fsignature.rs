// Finite-level ratios a_e/q^d next to the exact F-signature.

use toric_fsig::divisor::class_group;
use toric_fsig::frobenius::DEFAULT_CAP;
use toric_fsig::fsignature::{
    convergence_report, exact_signature_volume, signature_sequence, singh_determinantal_signature,
};
use toric_fsig::toric::builtin;

pub fn run_example() -> toric_fsig::Result<()> {
    let spec = builtin("an:3")?;
    let cg = class_group(&spec)?;
    let exact = exact_signature_volume(&spec)?;
    let seq = signature_sequence(&spec, &cg, 2, 6, None, DEFAULT_CAP)?;
    let report = convergence_report(&seq, Some(&exact), Some(3))?;
    for row in &report.rows {
        println!(
            "q={:<3} s_e={:<10} |s_e - s|={:<10} envelope {}",
            row.q,
            row.s_e,
            row.deviation.as_ref().unwrap(),
            row.envelope.as_ref().unwrap()
        );
    }
    println!("s(an:3) = {} by {}", exact.value, exact.method);

    let quadric = exact_signature_volume(&builtin("quadric")?)?;
    let singh = singh_determinantal_signature(2, 3)?;
    println!("s(quadric) = {} by volume, {} by Singh's formula", quadric.value, singh.value);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
