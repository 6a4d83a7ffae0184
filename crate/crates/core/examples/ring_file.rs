// A ring given by its lattice and facets rather than a built-in name.
//
// The lattice spanned by (1,2) and (0,3) inside the positive quadrant is the
// invariant ring of Z/3 acting with weights (1,2): an A_2 singularity.

use toric_fsig::ringfile::RingFile;
use toric_fsig::verify::{verify_ring, VerifyOptions};

const RING: &str = r#"{
  "name": "a2-file",
  "dim": 2,
  "lattice_basis": [[1, 2], [0, 3]],
  "facets": [["1/1", "0/1"], ["0/1", "1/1"]]
}"#;

const BROKEN: &str = r#"
name = "not-pointed"
dim = 2
lattice_basis = [[1, 0], [0, 1]]
facets = [[1, 0]]
"#;

pub fn run_example() -> toric_fsig::Result<()> {
    let spec = RingFile::from_json(RING)?.to_spec()?;
    let v = verify_ring(&spec, 2, 4, &VerifyOptions::default())?;
    println!(
        "{}: |tors| = {}, s(R) = {}, equality = {}",
        v.ring, v.torsion_cardinality, v.exact_signature, v.equality
    );
    for w in &v.witnesses {
        println!("  q={:<3} a_e={:<4} n_e={:<4} rank={}", w.q, w.a_e, w.n_e, w.rank);
    }

    match RingFile::from_toml(BROKEN)?.to_spec() {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("a half-plane is not a pointed cone"),
    }
    println!("{}", RingFile::from_spec(&spec).to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
