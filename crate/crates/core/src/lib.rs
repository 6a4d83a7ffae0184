//! Prime-characteristic invariants of normal toric rings.
//!
//! A ring `R = k[L ∩ C]` is given by a lattice and the facets of a pointed
//! cone ([`toric::RingSpec`]). From that data the crate computes
//!
//! - the divisor class group `Cl(R)` and its torsion ([`divisor`]),
//! - the splitting of `F^e_*R(D)` into divisorial summands ([`frobenius`]),
//! - F-signature sequences and exact values ([`fsignature`]),
//! - the comparison `|tors(Cl(R))| <= 1/s(R)` over a corpus ([`verify`]).
//!
//! ```
//! use toric_fsig::{divisor::class_group, fsignature::exact_signature_volume, toric::builtin};
//!
//! let ring = builtin("an:3").unwrap();
//! let cg = class_group(&ring).unwrap();
//! assert_eq!(cg.torsion_cardinality(), 3.into());
//! let s = exact_signature_volume(&ring).unwrap();
//! assert_eq!(s.value.to_string(), "1/3");
//! ```

pub mod cli;
pub mod divisor;
pub mod error;
pub mod frobenius;
pub mod fsignature;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod ringfile;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
