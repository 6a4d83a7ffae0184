//! Normal affine semigroup rings `k[S]`, `S = L ∩ C`.
//!
//! A ring is described by a full-rank lattice `L ⊆ Z^d` and the primitive
//! inward facet functionals of a pointed full-dimensional cone `C`. No
//! generators are ever computed; everything downstream only needs membership
//! tests and facet pairings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, IntMat};
use crate::polytope::{self, HalfSpace, Point};

/// Full-rank sublattice of `Z^d`, stored by its Hermite-normalized basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: IntMat,
}

impl Lattice {
    /// Takes basis rows as given; call [`Lattice::normalized`] or go through
    /// [`RingSpec::new`] to bring them into Hermite form.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let cols = rows.first().map_or(dim, |r| r.len());
        let ok = rows.iter().all(|r| r.len() == cols);
        let basis = if ok {
            IntMat::from_rows(cols, rows)
        } else {
            // keep the dimension mismatch visible to validate()
            IntMat::zeros(dim, 0)
        };
        Lattice { dim, basis }
    }

    pub fn standard(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn is_square(&self) -> bool {
        self.basis.rows() == self.dim && self.basis.cols() == self.dim
    }

    /// |det(basis)|, the index of `L` in `Z^d`. Zero for a degenerate basis.
    pub fn covolume(&self) -> BigInt {
        if !self.is_square() {
            return BigInt::zero();
        }
        self.basis.determinant().abs()
    }

    /// Same lattice with its basis replaced by the Hermite normal form.
    pub fn normalized(&self) -> Lattice {
        if !self.is_square() {
            return self.clone();
        }
        let (h, _) = hermite_normal_form(&self.basis);
        Lattice { dim: self.dim, basis: h }
    }

    /// Coordinates `c` with `u = Σ c_j b_j`, or `None` if `u ∉ L`.
    ///
    /// Requires a Hermite-normalized full-rank basis (upper triangular).
    pub(crate) fn coords_of(&self, u: &[i64]) -> Option<Vec<i64>> {
        let d = self.dim;
        let mut rest: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let mut c = Vec::with_capacity(d);
        for j in 0..d {
            let pivot = self.basis.get(j, j);
            if pivot.is_zero() {
                return None;
            }
            let (q, r) = rest[j].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for k in j..d {
                let v = &q * self.basis.get(j, k);
                rest[k] -= v;
            }
            c.push(q.to_i64()?);
        }
        Some(c)
    }
}

/// Rational linear functional on `R^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetFunctional {
    pub covector: Vec<BigRational>,
}

impl FacetFunctional {
    pub fn new(covector: Vec<BigRational>) -> Self {
        FacetFunctional { covector }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        FacetFunctional {
            covector: xs.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn eval(&self, u: &[i64]) -> BigRational {
        self.covector
            .iter()
            .zip(u)
            .fold(BigRational::zero(), |acc, (f, &x)| acc + f * BigInt::from(x))
    }

    /// Values on the rows of `basis` (rationals in general).
    fn values_on(&self, basis: &IntMat) -> Vec<BigRational> {
        (0..basis.rows())
            .map(|j| {
                self.covector
                    .iter()
                    .zip(basis.row(j))
                    .fold(BigRational::zero(), |acc, (f, b)| acc + f * b)
            })
            .collect()
    }
}

impl fmt::Display for FacetFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.covector.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A failed well-formedness condition of a [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BasisShape,
    SingularBasis,
    FacetLength { facet: usize },
    NotIntegerValued { facet: usize },
    NotPrimitive { facet: usize },
    NotPointed,
    NotFullDimensional,
    Redundant { facet: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BasisShape => write!(f, "lattice basis is not a d x d matrix"),
            Violation::SingularBasis => write!(f, "lattice basis is singular"),
            Violation::FacetLength { facet } => write!(f, "facet {facet}: covector length is not d"),
            Violation::NotIntegerValued { facet } => {
                write!(f, "facet {facet}: functional not integer-valued on L")
            }
            Violation::NotPrimitive { facet } => write!(f, "facet {facet}: functional not primitive on L"),
            Violation::NotPointed => write!(f, "cone not pointed"),
            Violation::NotFullDimensional => write!(f, "cone not full-dimensional"),
            Violation::Redundant { facet } => write!(f, "facet {facet}: redundant inequality"),
        }
    }
}

/// A normal affine semigroup ring presented by lattice and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    name: String,
    lattice: Lattice,
    facets: Vec<FacetFunctional>,
}

impl RingSpec {
    /// Builds and validates a ring. The lattice basis is Hermite-normalized.
    pub fn new(name: impl Into<String>, lattice: Lattice, facets: Vec<FacetFunctional>) -> Result<Self> {
        let spec = RingSpec::new_unchecked(name, lattice, facets);
        let violations = spec.validate();
        if violations.is_empty() {
            Ok(spec)
        } else {
            Err(Error::InvalidRing {
                name: spec.name,
                violations: violations.iter().map(ToString::to_string).collect(),
            })
        }
    }

    /// Builds a ring without checking it. Most operations assume a valid
    /// spec; use [`RingSpec::validate`] before relying on one.
    pub fn new_unchecked(name: impl Into<String>, lattice: Lattice, facets: Vec<FacetFunctional>) -> Self {
        RingSpec {
            name: name.into(),
            lattice: lattice.normalized(),
            facets,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same ring under another name.
    pub fn renamed(&self, name: impl Into<String>) -> RingSpec {
        RingSpec {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn facets(&self) -> &[FacetFunctional] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn covolume(&self) -> BigInt {
        self.lattice.covolume()
    }

    /// Checks every structural invariant; empty means well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let d = self.lattice.dim;
        let mut out = Vec::new();
        if !self.lattice.is_square() {
            out.push(Violation::BasisShape);
            return out;
        }
        if self.lattice.covolume().is_zero() {
            out.push(Violation::SingularBasis);
            return out;
        }
        for (i, f) in self.facets.iter().enumerate() {
            if f.covector.len() != d {
                out.push(Violation::FacetLength { facet: i });
            }
        }
        if !out.is_empty() {
            return out;
        }

        for (i, f) in self.facets.iter().enumerate() {
            let vals = f.values_on(&self.lattice.basis);
            if vals.iter().any(|v| !v.is_integer()) {
                out.push(Violation::NotIntegerValued { facet: i });
                continue;
            }
            // gcd of the values on L via Hermite form of the column of values
            let col: Vec<Vec<BigInt>> = vals.iter().map(|v| vec![v.to_integer()]).collect();
            let (h, _) = hermite_normal_form(&IntMat::from_vec(d, 1, col.into_iter().flatten().collect()));
            let g = h.get(0, 0);
            if !g.is_one() {
                // a zero functional is never primitive either
                out.push(Violation::NotPrimitive { facet: i });
            }
        }

        let covectors: Vec<Vec<BigRational>> = self.facets.iter().map(|f| f.covector.clone()).collect();
        if polytope::rank(&covectors) < d {
            out.push(Violation::NotPointed);
            return out;
        }

        let h = self.unit_box_constraints();
        let verts = polytope::vertices(&h, d);
        if polytope::affine_rank(&verts) != Some(d) {
            out.push(Violation::NotFullDimensional);
            return out;
        }
        let mut faces: Vec<Vec<Point>> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let face: Vec<Point> = verts
                .iter()
                .filter(|v| polytope::dot(&f.covector, v).is_zero())
                .cloned()
                .collect();
            let genuine = d == 0 || polytope::affine_rank(&face) == Some(d - 1);
            if !genuine || faces.contains(&face) {
                out.push(Violation::Redundant { facet: i });
            }
            faces.push(face);
        }
        out
    }

    /// Constraints `0 <= facet_i(u) <= 1` describing the closure of the
    /// fundamental box of the cone.
    pub(crate) fn unit_box_constraints(&self) -> Vec<HalfSpace> {
        let one = BigRational::one();
        let zero = BigRational::zero();
        self.facets
            .iter()
            .flat_map(|f| {
                [
                    HalfSpace {
                        normal: f.covector.iter().map(|x| -x).collect(),
                        bound: zero.clone(),
                    },
                    HalfSpace {
                        normal: f.covector.clone(),
                        bound: one.clone(),
                    },
                ]
            })
            .collect()
    }

    fn check_len(&self, u: &[i64]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.len(),
            });
        }
        Ok(())
    }

    /// Whether `u` lies in `L`.
    pub fn in_lattice(&self, u: &[i64]) -> Result<bool> {
        self.check_len(u)?;
        Ok(self.lattice.coords_of(u).is_some())
    }

    /// Semigroup membership: `u ∈ L` and every facet is nonnegative on `u`.
    pub fn contains(&self, u: &[i64]) -> Result<bool> {
        self.check_len(u)?;
        if self.lattice.coords_of(u).is_none() {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|f| !f.eval(u).is_negative()))
    }

    /// Integer matrix `M[i][j] = facet_i(b_j)` of facet pairings with the
    /// lattice basis. This is the divisor map in lattice coordinates.
    pub fn pairing_matrix(&self) -> Result<IntMat> {
        let d = self.dim();
        let m = self.facets.len();
        let mut out = IntMat::zeros(m, d);
        for (i, f) in self.facets.iter().enumerate() {
            for (j, v) in f.values_on(&self.lattice.basis).into_iter().enumerate() {
                if !v.is_integer() {
                    return Err(Error::InvalidRing {
                        name: self.name.clone(),
                        violations: vec![Violation::NotIntegerValued { facet: i }.to_string()],
                    });
                }
                out.set(i, j, v.to_integer());
            }
        }
        Ok(out)
    }

    /// Facet values of a lattice point, as exact integers.
    pub fn pairings(&self, u: &[i64]) -> Result<Vec<i64>> {
        self.check_len(u)?;
        if self.lattice.coords_of(u).is_none() {
            return Err(Error::NotInLattice(u.to_vec()));
        }
        self.facets
            .iter()
            .map(|f| {
                f.eval(u)
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Overflow(format!("pairing of {u:?}")))
            })
            .collect()
    }
}

/// Built-in ring families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `k[x_1..x_d]`
    Polynomial(u32),
    /// `k[x,y,z]/(xy - z^n) ≅ k[x^n, xy, y^n]`
    AnSingularity(u32),
    /// `n`-th Veronese subring of `k[x,y]`
    Veronese(u32),
    /// `k[w,x,y,z]/(wx - yz)`
    QuadricCone,
}

impl Family {
    /// Parses `family[:param]`, e.g. `an:4`, `veronese:3`, `poly:2`, `quadric`.
    pub fn parse(s: &str) -> Result<Family> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let num = |p: Option<&str>| -> Result<u32> {
            let p = p.ok_or_else(|| Error::ParamOutOfRange(format!("`{name}` needs a parameter")))?;
            p.parse::<u32>()
                .map_err(|_| Error::ParamOutOfRange(format!("bad parameter `{p}` for `{name}`")))
        };
        match name {
            "poly" | "polynomial" => Ok(Family::Polynomial(num(param)?)),
            "an" | "an_singularity" => Ok(Family::AnSingularity(num(param)?)),
            "veronese" => Ok(Family::Veronese(num(param)?)),
            "quadric" | "quadric_cone" => match param {
                None => Ok(Family::QuadricCone),
                Some(_) => Err(Error::ParamOutOfRange("`quadric` takes no parameter".into())),
            },
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Polynomial(d) => format!("poly:{d}"),
            Family::AnSingularity(n) => format!("an:{n}"),
            Family::Veronese(n) => format!("veronese:{n}"),
            Family::QuadricCone => "quadric".to_string(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub const MAX_POLYNOMIAL_DIM: u32 = 8;

/// Constructs and validates a built-in ring.
pub fn builtin_ring(family: Family) -> Result<RingSpec> {
    let name = family.name();
    match family {
        Family::Polynomial(d) => {
            if d == 0 || d > MAX_POLYNOMIAL_DIM {
                return Err(Error::ParamOutOfRange(format!(
                    "polynomial dimension must be in 1..={MAX_POLYNOMIAL_DIM}, got {d}"
                )));
            }
            let d = d as usize;
            let facets = (0..d)
                .map(|i| FacetFunctional::from_ints(&(0..d).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
                .collect();
            RingSpec::new(name, Lattice::standard(d), facets)
        }
        Family::AnSingularity(n) => {
            if n < 2 {
                return Err(Error::ParamOutOfRange(format!("an_singularity needs n >= 2, got {n}")));
            }
            let n = i64::from(n);
            let lattice = Lattice::from_rows(&[vec![1, 1], vec![0, n]]);
            RingSpec::new(name, lattice, coordinate_facets(2))
        }
        Family::Veronese(n) => {
            if n < 2 {
                return Err(Error::ParamOutOfRange(format!("veronese needs n >= 2, got {n}")));
            }
            let n = i64::from(n);
            let lattice = Lattice::from_rows(&[vec![1, n - 1], vec![0, n]]);
            RingSpec::new(name, lattice, coordinate_facets(2))
        }
        Family::QuadricCone => {
            let mut facets = coordinate_facets(3);
            facets.push(FacetFunctional::from_ints(&[1, 1, -1]));
            RingSpec::new(name, Lattice::standard(3), facets)
        }
    }
}

/// Parses `family[:param]` and builds the ring.
pub fn builtin(s: &str) -> Result<RingSpec> {
    builtin_ring(Family::parse(s)?)
}

fn coordinate_facets(d: usize) -> Vec<FacetFunctional> {
    (0..d)
        .map(|i| FacetFunctional::from_ints(&(0..d).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
        .collect()
}
