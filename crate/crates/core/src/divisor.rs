//! Torus-invariant Weil divisors and the divisor class group.
//!
//! For a ring given by lattice `L` and facets `f_1..f_m`, a Weil divisor is
//! an integer vector indexed by facets, the principal divisor of the monomial
//! `u ∈ L` is `(f_i(u))_i`, and `Cl(R)` is the cokernel of the pairing map
//! `L → Z^m`. Classes are kept in the coordinates given by the Smith form of
//! that map, so equal classes have identical representatives.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMat};
use crate::toric::RingSpec;

/// Integer combination of the facet prime divisors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeilDivisor {
    pub coeffs: Vec<i64>,
}

impl WeilDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        WeilDivisor { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        WeilDivisor { coeffs: vec![0; m] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for WeilDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &WeilDivisor {
    type Output = WeilDivisor;
    fn add(self, rhs: &WeilDivisor) -> WeilDivisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        WeilDivisor::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeilDivisor {
    type Output = WeilDivisor;
    fn sub(self, rhs: &WeilDivisor) -> WeilDivisor {
        self + &(-rhs)
    }
}

impl Neg for &WeilDivisor {
    type Output = WeilDivisor;
    fn neg(self) -> WeilDivisor {
        WeilDivisor::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul<&WeilDivisor> for i64 {
    type Output = WeilDivisor;
    fn mul(self, rhs: &WeilDivisor) -> WeilDivisor {
        WeilDivisor::new(rhs.coeffs.iter().map(|a| self * a).collect())
    }
}

/// The divisor of the monomial `u`: its facet pairings.
pub fn principal_divisor(spec: &RingSpec, u: &[i64]) -> Result<WeilDivisor> {
    Ok(WeilDivisor::new(spec.pairings(u)?))
}

/// A divisor class in normal form.
///
/// Ordering is lexicographic on free coordinates, then torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassElement {
    pub free: Vec<i64>,
    /// Residues in `[0, d_i)` for the invariant factors `d_i`.
    pub torsion: Vec<i64>,
}

impl ClassElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for ClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .free
            .iter()
            .chain(&self.torsion)
            .map(ToString::to_string)
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Order of a class: finite, or infinite when it has a free component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ClassOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassOrder::Finite(k) => write!(f, "{k}"),
            ClassOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Cl(R) ≅ Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with a projection from divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupData {
    num_facets: usize,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    /// `(t + free_rank) × m`; torsion rows first, then free rows.
    projection: IntMat,
    moduli: Vec<i64>,
    rows_i64: Vec<Vec<i64>>,
}

/// Computes the class group as the cokernel of the pairing map.
pub fn class_group(spec: &RingSpec) -> Result<ClassGroupData> {
    let a = spec.pairing_matrix()?;
    let m = a.rows();
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();

    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    let mut factors = Vec::new();
    for i in 0..m {
        match diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => {
                torsion_rows.push(i);
                factors.push(d.clone());
            }
            _ => free_rows.push(i),
        }
    }

    let order: Vec<usize> = torsion_rows.iter().chain(&free_rows).copied().collect();
    let mut projection = IntMat::zeros(order.len(), m);
    for (r, &i) in order.iter().enumerate() {
        for j in 0..m {
            projection.set(r, j, snf.u.get(i, j).clone());
        }
    }
    let moduli = factors
        .iter()
        .map(|d| d.to_i64().ok_or_else(|| Error::Overflow(format!("invariant factor {d}"))))
        .collect::<Result<Vec<_>>>()?;
    let rows_i64 = projection
        .to_i64_rows()
        .ok_or_else(|| Error::Overflow("class group projection".into()))?;

    Ok(ClassGroupData {
        num_facets: m,
        free_rank: free_rows.len(),
        invariant_factors: factors,
        projection,
        moduli,
        rows_i64,
    })
}

impl ClassGroupData {
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn projection(&self) -> &IntMat {
        &self.projection
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    /// `|tors(Cl(R))|`, the product of the invariant factors.
    pub fn torsion_cardinality(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn zero(&self) -> ClassElement {
        ClassElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.moduli.len()],
        }
    }

    /// Class of a divisor. Panics if the divisor has the wrong length.
    pub fn class_of(&self, d: &WeilDivisor) -> ClassElement {
        assert_eq!(d.len(), self.num_facets, "divisor length mismatch");
        let mut key = vec![0i64; self.rows_i64.len()];
        self.project_into(&d.coeffs, &mut key)
            .expect("class coordinates exceed i64");
        self.split_key(&key)
    }

    /// Writes normal-form coordinates of `coeffs` into `out`: torsion
    /// residues first, then free coordinates. Returns `None` on overflow.
    pub(crate) fn project_into(&self, coeffs: &[i64], out: &mut [i64]) -> Option<()> {
        let t = self.moduli.len();
        for (k, row) in self.rows_i64.iter().enumerate() {
            let mut acc: i128 = 0;
            for (p, &c) in row.iter().zip(coeffs) {
                acc += i128::from(*p) * i128::from(c);
            }
            out[k] = if k < t {
                acc.rem_euclid(i128::from(self.moduli[k])) as i64
            } else {
                i64::try_from(acc).ok()?
            };
        }
        Some(())
    }

    pub(crate) fn key_len(&self) -> usize {
        self.rows_i64.len()
    }

    pub(crate) fn split_key(&self, key: &[i64]) -> ClassElement {
        let t = self.moduli.len();
        ClassElement {
            torsion: key[..t].to_vec(),
            free: key[t..].to_vec(),
        }
    }

    fn check(&self, c: &ClassElement) {
        assert_eq!(c.free.len(), self.free_rank, "class shape mismatch");
        assert_eq!(c.torsion.len(), self.moduli.len(), "class shape mismatch");
    }

    pub fn add(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        self.check(a);
        self.check(b);
        ClassElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.moduli)
                .map(|((x, y), m)| (x + y).rem_euclid(*m))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ClassElement) -> ClassElement {
        self.check(a);
        ClassElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.moduli)
                .map(|(x, m)| (-x).rem_euclid(*m))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64, a: &ClassElement) -> ClassElement {
        self.check(a);
        ClassElement {
            free: a.free.iter().map(|x| k * x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.moduli)
                .map(|(x, m)| (i128::from(k) * i128::from(*x)).rem_euclid(i128::from(*m)) as i64)
                .collect(),
        }
    }

    /// Least `k >= 1` with `k·c = 0`.
    pub fn order_of_class(&self, c: &ClassElement) -> ClassOrder {
        self.check(c);
        if !c.is_torsion() {
            return ClassOrder::Infinite;
        }
        let order = c
            .torsion
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&x, &m)| {
                let part = (m / x.gcd(&m)) as u64;
                acc.lcm(&part)
            });
        ClassOrder::Finite(order)
    }

    /// Every torsion class, lexicographic in the residues.
    pub fn torsion_elements(&self, cap: u64) -> Result<Vec<ClassElement>> {
        let card = self.torsion_cardinality();
        if card > BigInt::from(cap) {
            return Err(Error::CapExceeded {
                required: format!("{card} torsion classes"),
                cap,
            });
        }
        let mut out = Vec::with_capacity(card.to_usize().unwrap_or(0));
        let mut digits = vec![0i64; self.moduli.len()];
        loop {
            out.push(ClassElement {
                free: vec![0; self.free_rank],
                torsion: digits.clone(),
            });
            // odometer, last residue fastest
            let mut k = digits.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < self.moduli[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// A divisor whose class is `c`: `c = Σ class_of(e_j)·x_j` solved
    /// through the inverse of the Smith transform.
    pub fn representative(&self, spec: &RingSpec, c: &ClassElement) -> Result<WeilDivisor> {
        self.check(c);
        // Recompute U^{-1}: the columns of U^{-1} map normal-form coordinates back.
        let a = spec.pairing_matrix()?;
        let snf = smith_normal_form(&a);
        let inv = unimodular_inverse(&snf.u)?;
        let diag = snf.diagonal();
        let m = self.num_facets;
        let mut coords = vec![BigInt::zero(); m];
        let mut t = 0;
        let mut f = 0;
        for (i, slot) in coords.iter_mut().enumerate() {
            match diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => {
                    *slot = BigInt::from(c.torsion[t]);
                    t += 1;
                }
                _ => {
                    *slot = BigInt::from(c.free[f]);
                    f += 1;
                }
            }
        }
        let coeffs = inv
            .mul_vec(&coords)
            .into_iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Overflow("class representative".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeilDivisor::new(coeffs))
    }
}

/// Inverse of a unimodular matrix by fraction-free Gauss-Jordan.
fn unimodular_inverse(u: &IntMat) -> Result<IntMat> {
    use crate::linalg::hermite_normal_form;
    // U·X = I  ⇔  HNF of U is I with transform U^{-1}
    let (h, t) = hermite_normal_form(u);
    if h != IntMat::identity(u.rows()) {
        return Err(Error::Internal("matrix is not unimodular".into()));
    }
    Ok(t)
}

/// Lattice points of the divisorial ideal `R(D)` inside a box.
///
/// `bounds[k] = (lo, hi)` is the half-open range for coordinate `k`.
/// Returns every `u ∈ L` in the box with `f_i(u) >= -D_i` for all `i`.
pub fn divisorial_points(spec: &RingSpec, d: &WeilDivisor, bounds: &[(i64, i64)]) -> Result<Vec<Vec<i64>>> {
    if d.len() != spec.num_facets() {
        return Err(Error::DimensionMismatch {
            expected: spec.num_facets(),
            actual: d.len(),
        });
    }
    if bounds.len() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            actual: bounds.len(),
        });
    }
    let mut out = Vec::new();
    if bounds.iter().any(|(lo, hi)| lo >= hi) {
        return Ok(out);
    }
    let mut u: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        if spec.in_lattice(&u)? {
            let vals = spec.pairings(&u)?;
            if vals.iter().zip(&d.coeffs).all(|(v, a)| *v >= -a) {
                out.push(u.clone());
            }
        }
        let mut k = u.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            u[k] += 1;
            if u[k] < bounds[k].1 {
                break;
            }
            u[k] = bounds[k].0;
        }
    }
}
