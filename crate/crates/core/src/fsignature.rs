//! F-signature: finite-level ratios `s_e = a_e / q^d` and exact limits.
//!
//! For a normal toric ring the limit is the volume of the fundamental box
//! `{u : 0 <= f_i(u) < 1}` divided by the covolume of `L`. Determinantal
//! rings of 2×2 minors are also covered by a closed binomial formula.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::divisor::{ClassGroupData, WeilDivisor};
use crate::error::{Error, Result};
use crate::frobenius::{decompose, DecomposeOptions, FrobeniusContext};
use crate::polytope;
use crate::toric::RingSpec;

/// Largest dimension accepted by [`exact_signature_volume`].
pub const MAX_VOLUME_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSignatureEstimate {
    pub ctx: FrobeniusContext,
    pub a_e: u64,
    pub rank: BigUint,
    pub s_e: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureMethod {
    PolytopeVolume,
    SinghFormula,
}

impl fmt::Display for SignatureMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureMethod::PolytopeVolume => write!(f, "polytope_volume"),
            SignatureMethod::SinghFormula => write!(f, "singh_formula"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFSignature {
    pub value: BigRational,
    pub method: SignatureMethod,
}

/// `s_e` for `e = 1..=e_max`.
///
/// With `twist = Some(D)` the numerator is the free rank of `F^e_*R(D)`
/// instead of `F^e_*R`.
pub fn signature_sequence(
    spec: &RingSpec,
    cg: &ClassGroupData,
    p: u64,
    e_max: u32,
    twist: Option<&WeilDivisor>,
    cap: u64,
) -> Result<Vec<FSignatureEstimate>> {
    let zero = WeilDivisor::zero(spec.num_facets());
    let base = twist.unwrap_or(&zero);
    (1..=e_max)
        .map(|e| {
            let ctx = FrobeniusContext::new(p, e)?;
            let dec = decompose(spec, cg, base, &ctx, &DecomposeOptions::with_cap(cap))?;
            Ok(estimate(ctx, dec.free_rank(), spec.dim()))
        })
        .collect()
}

pub(crate) fn estimate(ctx: FrobeniusContext, a_e: u64, dim: usize) -> FSignatureEstimate {
    let rank = ctx.rank(dim);
    let s_e = BigRational::new(BigInt::from(a_e), BigInt::from(rank.clone()));
    FSignatureEstimate { ctx, a_e, rank, s_e }
}

/// Exact F-signature as `vol({0 <= f_i < 1}) / covolume(L)`.
pub fn exact_signature_volume(spec: &RingSpec) -> Result<ExactFSignature> {
    let d = spec.dim();
    if d > MAX_VOLUME_DIM {
        return Err(Error::DimensionTooLarge { dim: d, max: MAX_VOLUME_DIM });
    }
    let h = spec.unit_box_constraints();
    let verts = polytope::vertices(&h, d);
    let covectors: Vec<Vec<BigRational>> = spec.facets().iter().map(|f| f.covector.clone()).collect();
    if polytope::rank(&covectors) < d {
        return Err(Error::Internal(format!("fundamental region of `{}` is unbounded", spec.name())));
    }
    let vol = polytope::volume(&h, &verts, d);
    let cov = spec.covolume();
    if cov.is_zero() {
        return Err(Error::Internal("singular lattice".into()));
    }
    Ok(ExactFSignature {
        value: vol / BigRational::from_integer(cov),
        method: SignatureMethod::PolytopeVolume,
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(1/d!) Σ_{i=0}^{s} (-1)^i C(d+1, i) (s-i)^d`.
pub fn singh_determinantal_signature(s: u32, d: u32) -> Result<ExactFSignature> {
    if s == 0 || d == 0 {
        return Err(Error::ParamOutOfRange("Singh formula needs s >= 1 and d >= 1".into()));
    }
    let mut sum = BigInt::zero();
    for i in 0..=s {
        let term = binomial(u64::from(d) + 1, u64::from(i)) * BigInt::from(s - i).pow(d);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let fact: BigInt = (1..=u64::from(d)).map(BigInt::from).product();
    Ok(ExactFSignature {
        value: BigRational::new(sum, fact),
        method: SignatureMethod::SinghFormula,
    })
}

/// The `A_{n-1}` error envelope `(2qn + n² + 2q) / q²`.
pub fn an_envelope(q: &BigUint, n: u64) -> BigRational {
    let q = BigInt::from(q.clone());
    let n = BigInt::from(n);
    let num = BigInt::from(2) * &q * &n + &n * &n + BigInt::from(2) * &q;
    BigRational::new(num, &q * &q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub e: u32,
    pub q: BigUint,
    pub s_e: BigRational,
    pub deviation: Option<BigRational>,
    pub envelope: Option<BigRational>,
    pub within_envelope: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub exact: Option<BigRational>,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Rows whose deviation exceeds the envelope.
    pub fn violations(&self) -> Vec<&ConvergenceRow> {
        self.rows.iter().filter(|r| r.within_envelope == Some(false)).collect()
    }
}

/// Deviation of each `s_e` from the exact value.
///
/// `an_parameter = Some(n)` marks the ring as `an_singularity(n)`; each row
/// is then checked against `|s_e - 1/n| <= (2qn + n² + 2q)/q²`.
pub fn convergence_report(
    seq: &[FSignatureEstimate],
    exact: Option<&ExactFSignature>,
    an_parameter: Option<u64>,
) -> Result<ConvergenceReport> {
    if seq.is_empty() {
        return Err(Error::ParamOutOfRange("empty signature sequence".into()));
    }
    let rows = seq
        .iter()
        .map(|est| {
            let deviation = exact.map(|x| (&est.s_e - &x.value).abs());
            let (envelope, within) = match an_parameter {
                Some(n) => {
                    let env = an_envelope(est.ctx.q(), n);
                    let target = BigRational::new(BigInt::one(), BigInt::from(n));
                    let ok = (&est.s_e - target).abs() <= env;
                    (Some(env), Some(ok))
                }
                None => (None, None),
            };
            ConvergenceRow {
                e: est.ctx.e(),
                q: est.ctx.q().clone(),
                s_e: est.s_e.clone(),
                deviation,
                envelope,
                within_envelope: within,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        exact: exact.map(|x| x.value.clone()),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::class_group;
    use crate::frobenius::DEFAULT_CAP;
    use crate::toric::builtin;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn singh_values() {
        assert_eq!(singh_determinantal_signature(2, 3).unwrap().value, r(2, 3));
        assert_eq!(singh_determinantal_signature(1, 1).unwrap().value, r(1, 1));
        // only the i = 0 term survives when s = 1
        assert_eq!(singh_determinantal_signature(1, 3).unwrap().value, r(1, 6));
        assert!(singh_determinantal_signature(0, 3).is_err());
    }

    #[test]
    fn volumes() {
        for n in 2..=6 {
            let v = exact_signature_volume(&builtin(&format!("an:{n}")).unwrap()).unwrap();
            assert_eq!(v.value, r(1, n));
            let v = exact_signature_volume(&builtin(&format!("veronese:{n}")).unwrap()).unwrap();
            assert_eq!(v.value, r(1, n));
        }
        for d in 1..=3 {
            let v = exact_signature_volume(&builtin(&format!("poly:{d}")).unwrap()).unwrap();
            assert_eq!(v.value, r(1, 1));
        }
        assert_eq!(exact_signature_volume(&builtin("quadric").unwrap()).unwrap().value, r(2, 3));
        assert!(matches!(
            exact_signature_volume(&builtin("poly:5").unwrap()),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn sequences() {
        let spec = builtin("an:2").unwrap();
        let cg = class_group(&spec).unwrap();
        let s2 = signature_sequence(&spec, &cg, 2, 3, None, DEFAULT_CAP).unwrap();
        assert!(s2.iter().all(|x| x.s_e == r(1, 2)));
        assert_eq!(s2.iter().map(|x| x.a_e).collect::<Vec<_>>(), vec![2, 8, 32]);
        let s3 = signature_sequence(&spec, &cg, 3, 1, None, DEFAULT_CAP).unwrap();
        assert_eq!(s3[0].s_e, r(5, 9));

        let poly = builtin("poly:2").unwrap();
        let cg = class_group(&poly).unwrap();
        let s = signature_sequence(&poly, &cg, 5, 2, None, DEFAULT_CAP).unwrap();
        assert!(s.iter().all(|x| x.s_e == r(1, 1)));
    }

    #[test]
    fn report_envelope() {
        let spec = builtin("an:2").unwrap();
        let cg = class_group(&spec).unwrap();
        let exact = exact_signature_volume(&spec).unwrap();
        let seq = signature_sequence(&spec, &cg, 3, 1, None, DEFAULT_CAP).unwrap();
        let rep = convergence_report(&seq, Some(&exact), Some(2)).unwrap();
        assert_eq!(rep.rows[0].deviation, Some(r(1, 18)));
        assert_eq!(rep.rows[0].envelope, Some(r(22, 9)));
        assert!(rep.violations().is_empty());

        let seq = signature_sequence(&spec, &cg, 2, 1, None, DEFAULT_CAP).unwrap();
        let rep = convergence_report(&seq, Some(&exact), Some(2)).unwrap();
        assert_eq!(rep.rows[0].deviation, Some(r(0, 1)));

        let poly = builtin("poly:1").unwrap();
        let cg = class_group(&poly).unwrap();
        let seq = signature_sequence(&poly, &cg, 2, 4, None, DEFAULT_CAP).unwrap();
        let one = ExactFSignature { value: r(1, 1), method: SignatureMethod::SinghFormula };
        let rep = convergence_report(&seq, Some(&one), None).unwrap();
        assert!(rep.rows.iter().all(|x| x.deviation == Some(r(0, 1)) && x.envelope.is_none()));

        assert!(convergence_report(&[], None, None).is_err());
    }
}
