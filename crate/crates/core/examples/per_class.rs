// Every torsion class shows up in F^e_*R with frequency tending to s(R).

use toric_fsig::toric::builtin;
use toric_fsig::verify::{verify_per_class_convergence, VerifyOptions};

pub fn run_example() -> toric_fsig::Result<()> {
    let table = verify_per_class_convergence(&builtin("an:5")?, 2, 6, &VerifyOptions::default())?;
    for c in &table.classes {
        let ratios: Vec<String> = c.rows.iter().map(|r| r.3.to_string()).collect();
        println!("class {}: {}", c.class, ratios.join("  "));
    }
    println!("s(R) = {}, worst deviation at q=64: {}", table.exact_signature, table.max_deviation_at_last());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
