// Splitting F^e_*R(D) into divisorial summands, one per coset of L in (1/q)L.

use toric_fsig::divisor::{class_group, WeilDivisor};
use toric_fsig::frobenius::{box_count_oracle, decompose, DecomposeOptions, FrobeniusContext, DEFAULT_CAP};
use toric_fsig::toric::builtin;

pub fn run_example() -> toric_fsig::Result<()> {
    let spec = builtin("an:2")?;
    let cg = class_group(&spec)?;
    let ctx = FrobeniusContext::new(2, 1)?;
    let opts = DecomposeOptions { cap: DEFAULT_CAP, detail: true };
    let dec = decompose(&spec, &cg, &WeilDivisor::zero(2), &ctx, &opts)?;
    for s in dec.detail.as_deref().unwrap_or_default() {
        println!("coset {:?}/{}  ->  R({})", s.coords, ctx.q(), s.divisor);
    }
    for (class, k) in &dec.summands {
        println!("class {class}: {k}");
    }

    // free rank against the independent monomial count, a few levels deep
    let spec = builtin("veronese:3")?;
    let cg = class_group(&spec)?;
    for e in 1..=4 {
        let ctx = FrobeniusContext::new(3, e)?;
        let dec = decompose(&spec, &cg, &WeilDivisor::zero(2), &ctx, &DecomposeOptions::default())?;
        let oracle = box_count_oracle(&spec, &ctx, DEFAULT_CAP)?;
        println!("veronese:3 q={:<3} free rank {:<5} box count {oracle}", ctx.q(), dec.free_rank());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
