// Checks |tors Cl(R)| <= 1/s(R) across the built-in corpus and prints the CSV report.

use toric_fsig::report::{to_csv, CorpusReport};
use toric_fsig::verify::{corpus_rings, run_corpus, VerifyOptions};

pub fn run_example() -> toric_fsig::Result<()> {
    let rings = corpus_rings()?;
    let opts = VerifyOptions { q_max: Some(32), ..VerifyOptions::default() };
    let run = run_corpus(&rings, &[2, 3], 5, &opts);
    for v in &run.verdicts {
        let kind = if v.equality { "equality" } else { "strict" };
        println!("{:<11} p={}  {} <= {}  {kind}", v.ring, v.p, v.torsion_cardinality, v.bound());
    }
    assert!(run.is_success());
    print!("{}", to_csv(&CorpusReport::from(&run).verdicts)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
