// Divisor class groups of the built-in rings.

use toric_fsig::divisor::{class_group, ClassOrder, WeilDivisor};
use toric_fsig::toric::builtin;

pub fn run_example() -> toric_fsig::Result<()> {
    for name in ["an:4", "veronese:3", "quadric", "poly:2"] {
        let spec = builtin(name)?;
        let cg = class_group(&spec)?;
        println!(
            "{name:<11} free rank {}  invariant factors {:?}  |tors| = {}",
            cg.free_rank(),
            cg.invariant_factors(),
            cg.torsion_cardinality()
        );
        // the first facet divisor generates the group in every case here
        let mut first = vec![0; spec.num_facets()];
        first[0] = 1;
        let c = cg.class_of(&WeilDivisor::new(first));
        match cg.order_of_class(&c) {
            ClassOrder::Finite(k) => println!("            class {c} has order {k}"),
            ClassOrder::Infinite => println!("            class {c} has infinite order"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
