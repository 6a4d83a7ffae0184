//! Ring-definition files.
//!
//! ```json
//! {
//!   "name": "a2",
//!   "dim": 2,
//!   "lattice_basis": [[1, 1], [0, 3]],
//!   "facets": [["1/1", "0/1"], ["0/1", "1/1"]]
//! }
//! ```
//!
//! Facet entries are rationals written `"a/b"`; plain integers (as numbers or
//! strings) are accepted on input. The same fields may be given in TOML when
//! the file name ends in `.toml`.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::toric::{FacetFunctional, Lattice, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub name: String,
    pub dim: usize,
    pub lattice_basis: Vec<Vec<i64>>,
    pub facets: Vec<Vec<RationalEntry>>,
}

/// Exact `"a/b"` rendering, also for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl RationalEntry {
    fn value(&self) -> Result<BigRational> {
        match self {
            RationalEntry::Int(x) => Ok(BigRational::from_integer((*x).into())),
            RationalEntry::Text(s) => parse_rational(s),
        }
    }
}

impl RingFile {
    pub fn from_spec(spec: &RingSpec) -> RingFile {
        let basis = spec
            .lattice()
            .basis()
            .to_i64_rows()
            .expect("lattice basis fits in i64");
        RingFile {
            name: spec.name().to_string(),
            dim: spec.dim(),
            lattice_basis: basis,
            facets: spec
                .facets()
                .iter()
                .map(|f| f.covector.iter().map(|x| RationalEntry::Text(fmt_rational(x))).collect())
                .collect(),
        }
    }

    /// Builds the ring without validating it.
    pub fn to_spec_unchecked(&self) -> Result<RingSpec> {
        if self.lattice_basis.len() != self.dim || self.lattice_basis.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Parse(format!(
                "lattice_basis of `{}` must be {} rows of length {}",
                self.name, self.dim, self.dim
            )));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Ok(FacetFunctional::new(f.iter().map(RationalEntry::value).collect::<Result<_>>()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingSpec::new_unchecked(
            self.name.clone(),
            Lattice::from_rows(&self.lattice_basis),
            facets,
        ))
    }

    /// Builds and validates the ring.
    pub fn to_spec(&self) -> Result<RingSpec> {
        let spec = self.to_spec_unchecked()?;
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidRing {
                name: self.name.clone(),
                violations: violations.iter().map(ToString::to_string).collect(),
            });
        }
        Ok(spec)
    }

    pub fn from_json(s: &str) -> Result<RingFile> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_toml(s: &str) -> Result<RingFile> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring file serializes")
    }

    pub fn load(path: &Path) -> Result<RingFile> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "toml") {
            RingFile::from_toml(&text)
        } else {
            RingFile::from_json(&text)
        }
    }
}
