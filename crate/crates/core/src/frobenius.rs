//! Frobenius pushforwards of divisorial ideals.
//!
//! `F^e_*R(D)` splits as a direct sum over the cosets of `L` in `(1/q)L`,
//! `q = p^e`. The coset of `w` contributes the divisorial ideal `R(D_w)`
//! with `D_w(i) = ⌊f_i(w) + a_i/q⌋`. Writing `w = (1/q)·Σ c_j b_j` with
//! `c ∈ [0, q)^d` gives canonical representatives and turns the floor into
//! integer arithmetic on the pairing matrix: `D_w(i) = ⌊(Σ_j c_j M_ij + a_i) / q⌋`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::divisor::{ClassElement, ClassGroupData, WeilDivisor};
use crate::error::{Error, Result};
use crate::polytope;
use crate::toric::RingSpec;

/// Default bound on the number of points any single enumeration may visit.
pub const DEFAULT_CAP: u64 = 1 << 24;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Characteristic `p`, exponent `e` and `q = p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusContext {
    p: u64,
    e: u32,
    q: BigUint,
}

impl FrobeniusContext {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ParamOutOfRange("Frobenius exponent must be >= 1".into()));
        }
        Ok(FrobeniusContext {
            p,
            e,
            q: BigUint::from(p).pow(e),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `q^d`, the rank of `F^e_*R` over a `d`-dimensional ring.
    pub fn rank(&self, d: usize) -> BigUint {
        self.q.pow(d as u32)
    }

    fn q_i64(&self) -> Result<i64> {
        self.q
            .to_i64()
            .ok_or_else(|| Error::Overflow(format!("q = {}", self.q)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub cap: u64,
    /// Keep the per-coset list of representatives and summand divisors.
    pub detail: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            cap: DEFAULT_CAP,
            detail: false,
        }
    }
}

impl DecomposeOptions {
    pub fn with_cap(cap: u64) -> Self {
        DecomposeOptions { cap, detail: false }
    }
}

fn check_cap(required: &BigUint, cap: u64, what: &str) -> Result<u64> {
    match required.to_u64() {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::CapExceeded {
            required: format!("{required} {what}"),
            cap,
        }),
    }
}

/// One coset of `L` in `(1/q)L` and its summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSummand {
    /// Lattice-basis coordinates `c ∈ [0, q)^d`; the representative is `c·B / q`.
    pub coords: Vec<i64>,
    /// `q·w = c·B`, an ambient integer vector.
    pub numerator: Vec<i64>,
    pub divisor: WeilDivisor,
}

impl CosetSummand {
    pub fn representative(&self, q: &BigUint) -> Vec<BigRational> {
        let q = BigInt::from(q.clone());
        self.numerator
            .iter()
            .map(|&x| BigRational::new(BigInt::from(x), q.clone()))
            .collect()
    }
}

/// `F^e_*R(D)` as a multiset of divisor classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub ctx: FrobeniusContext,
    pub dim: usize,
    pub base_divisor: WeilDivisor,
    pub summands: BTreeMap<ClassElement, u64>,
    /// Cosets in lexicographic order of `coords`, when requested.
    pub detail: Option<Vec<CosetSummand>>,
}

impl FrobeniusDecomposition {
    pub fn total(&self) -> u64 {
        self.summands.values().sum()
    }

    /// Number of free summands. For `D = 0` this is `a_e(R)`; for a nonzero
    /// base divisor it is the free rank of `F^e_*R(D)` instead.
    pub fn free_rank(&self) -> u64 {
        self.summands
            .iter()
            .find(|(c, _)| c.is_zero())
            .map_or(0, |(_, &k)| k)
    }

    pub fn multiplicity_of(&self, c: &ClassElement) -> u64 {
        self.summands.get(c).copied().unwrap_or(0)
    }

    /// `n_e`: summands whose class is torsion, one term per torsion class.
    pub fn simultaneous_torsion_count(&self, cg: &ClassGroupData, cap: u64) -> Result<u64> {
        Ok(cg
            .torsion_elements(cap)?
            .iter()
            .map(|c| self.multiplicity_of(c))
            .sum())
    }
}

/// Precomputed integer data for the coset loop.
struct CosetKernel<'a> {
    d: usize,
    m: usize,
    q: i64,
    /// pairing[i][j] = f_i(b_j)
    pairing: Vec<Vec<i64>>,
    basis: Vec<Vec<i64>>,
    base: &'a [i64],
    cg: &'a ClassGroupData,
    /// mixed-radix packing of torsion-only classes
    dense: Option<usize>,
}

enum Counts {
    Dense(Vec<u64>),
    Sparse(HashMap<Vec<i64>, u64>),
}

struct Partial {
    counts: Counts,
    detail: Vec<CosetSummand>,
}

impl<'a> CosetKernel<'a> {
    fn new(spec: &RingSpec, cg: &'a ClassGroupData, base: &'a WeilDivisor, q: i64) -> Result<Self> {
        let pairing = spec
            .pairing_matrix()?
            .to_i64_rows()
            .ok_or_else(|| Error::Overflow("pairing matrix".into()))?;
        let basis = spec
            .lattice()
            .basis()
            .to_i64_rows()
            .ok_or_else(|| Error::Overflow("lattice basis".into()))?;
        let d = spec.dim();
        let m = spec.num_facets();

        // |Σ c_j M_ij + a_i| must stay well inside i64
        let limit = i128::from(i64::MAX / 4);
        for (row, a) in pairing.iter().zip(&base.coeffs) {
            let worst: i128 = row.iter().map(|x| i128::from(x.abs()) * i128::from(q)).sum::<i128>()
                + i128::from(a.abs());
            if worst > limit {
                return Err(Error::Overflow("coset pairing sums".into()));
            }
        }
        for col in 0..d {
            let worst: i128 = basis.iter().map(|r| i128::from(r[col].abs()) * i128::from(q)).sum();
            if worst > limit {
                return Err(Error::Overflow("coset numerators".into()));
            }
        }

        let dense = if cg.free_rank() == 0 {
            cg.torsion_cardinality().to_usize().filter(|&n| n <= 1 << 20)
        } else {
            None
        };
        Ok(CosetKernel {
            d,
            m,
            q,
            pairing,
            basis,
            base: &base.coeffs,
            cg,
            dense,
        })
    }

    fn pack(&self, key: &[i64]) -> usize {
        key.iter()
            .zip(self.cg.moduli())
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    fn unpack(&self, mut idx: usize) -> Vec<i64> {
        let moduli = self.cg.moduli();
        let mut key = vec![0i64; moduli.len()];
        for k in (0..moduli.len()).rev() {
            let m = moduli[k] as usize;
            key[k] = (idx % m) as i64;
            idx /= m;
        }
        key
    }

    /// Enumerates all cosets whose leading coordinate is `lead`.
    fn run_slice(&self, lead: i64, detail: bool) -> Result<Partial> {
        let (d, m, q) = (self.d, self.m, self.q);
        let mut counts = match self.dense {
            Some(n) => Counts::Dense(vec![0; n]),
            None => Counts::Sparse(HashMap::new()),
        };
        let mut out_detail = Vec::new();

        let mut c = vec![0i64; d];
        c[0] = lead;
        let mut acc: Vec<i64> = (0..m)
            .map(|i| self.base[i] + lead * self.pairing[i][0])
            .collect();
        let mut floors = vec![0i64; m];
        let mut key = vec![0i64; self.cg.key_len()];

        loop {
            for i in 0..m {
                floors[i] = acc[i].div_euclid(q);
            }
            self.cg
                .project_into(&floors, &mut key)
                .ok_or_else(|| Error::Overflow("class coordinates".into()))?;
            match &mut counts {
                Counts::Dense(v) => v[self.pack(&key)] += 1,
                Counts::Sparse(map) => {
                    if let Some(n) = map.get_mut(key.as_slice()) {
                        *n += 1;
                    } else {
                        map.insert(key.clone(), 1);
                    }
                }
            }
            if detail {
                let numerator = (0..d)
                    .map(|k| (0..d).map(|j| c[j] * self.basis[j][k]).sum())
                    .collect();
                out_detail.push(CosetSummand {
                    coords: c.clone(),
                    numerator,
                    divisor: WeilDivisor::new(floors.clone()),
                });
            }

            // odometer over coordinates 1..d, last fastest
            let mut k = d;
            loop {
                if k <= 1 {
                    return Ok(Partial {
                        counts,
                        detail: out_detail,
                    });
                }
                k -= 1;
                c[k] += 1;
                if c[k] < q {
                    for i in 0..m {
                        acc[i] += self.pairing[i][k];
                    }
                    break;
                }
                c[k] = 0;
                for i in 0..m {
                    acc[i] -= (q - 1) * self.pairing[i][k];
                }
            }
        }
    }
}

/// Decomposes `F^e_*R(D)` into divisorial summands.
///
/// Exactly `q^d` cosets are visited. The leading lattice coordinate is split
/// across worker threads; partial counts are merged in a fixed order so the
/// result does not depend on scheduling.
pub fn decompose(
    spec: &RingSpec,
    cg: &ClassGroupData,
    base: &WeilDivisor,
    ctx: &FrobeniusContext,
    opts: &DecomposeOptions,
) -> Result<FrobeniusDecomposition> {
    decompose_partitioned(spec, cg, base, ctx, opts, None)
}

/// Like [`decompose`] but with the leading-coordinate range cut into
/// `chunks` contiguous blocks that are processed independently.
pub fn decompose_partitioned(
    spec: &RingSpec,
    cg: &ClassGroupData,
    base: &WeilDivisor,
    ctx: &FrobeniusContext,
    opts: &DecomposeOptions,
    chunks: Option<usize>,
) -> Result<FrobeniusDecomposition> {
    if base.len() != spec.num_facets() {
        return Err(Error::DimensionMismatch {
            expected: spec.num_facets(),
            actual: base.len(),
        });
    }
    let d = spec.dim();
    check_cap(&ctx.rank(d), opts.cap, "cosets")?;
    let q = ctx.q_i64()?;
    let kernel = CosetKernel::new(spec, cg, base, q)?;

    let mut summands: BTreeMap<ClassElement, u64> = BTreeMap::new();
    let mut detail = opts.detail.then(Vec::new);

    if d == 0 {
        summands.insert(cg.zero(), 1);
    } else {
        let leads: Vec<i64> = (0..q).collect();
        let blocks: Vec<&[i64]> = match chunks {
            Some(k) => {
                let size = leads.len().div_ceil(k.max(1));
                leads.chunks(size.max(1)).collect()
            }
            None => leads.chunks(1).collect(),
        };
        let partials: Vec<Vec<Partial>> = blocks
            .par_iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&lead| kernel.run_slice(lead, opts.detail))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut dense_total: Option<Vec<u64>> = kernel.dense.map(|n| vec![0; n]);
        for part in partials.into_iter().flatten() {
            match part.counts {
                Counts::Dense(v) => {
                    let tot = dense_total.as_mut().expect("dense kernel");
                    for (t, x) in tot.iter_mut().zip(v) {
                        *t += x;
                    }
                }
                Counts::Sparse(map) => {
                    for (key, n) in map {
                        *summands.entry(cg.split_key(&key)).or_insert(0) += n;
                    }
                }
            }
            if let Some(det) = detail.as_mut() {
                det.extend(part.detail);
            }
        }
        if let Some(tot) = dense_total {
            for (idx, n) in tot.into_iter().enumerate() {
                if n > 0 {
                    summands.insert(cg.split_key(&kernel.unpack(idx)), n);
                }
            }
        }
    }

    Ok(FrobeniusDecomposition {
        ctx: ctx.clone(),
        dim: d,
        base_divisor: base.clone(),
        summands,
        detail,
    })
}

/// Counts monomials `u ∈ S` with `f_i(u) < q` for every facet by testing
/// every integer point of a bounding box for semigroup membership.
///
/// For rings whose facets are the coordinate functionals this is
/// `|S ∩ [0, q)^d|`, the length of `R / (m^[q] ∩ R)`. The count never
/// touches the coset machinery, so it serves as an independent check on
/// the free rank of `F^e_*R`.
pub fn box_count_oracle(spec: &RingSpec, ctx: &FrobeniusContext, cap: u64) -> Result<u64> {
    let d = spec.dim();
    let q = ctx.q_i64()?;

    // bounding box of q·P, P = {0 <= f_i <= 1}
    let verts = polytope::vertices(&spec.unit_box_constraints(), d);
    if verts.is_empty() {
        return Err(Error::Internal("empty fundamental region".into()));
    }
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut bounds = Vec::with_capacity(d);
    for k in 0..d {
        let lo = verts.iter().map(|v| (&v[k] * &qr).floor()).min().unwrap();
        let hi = verts.iter().map(|v| (&v[k] * &qr).ceil()).max().unwrap();
        let lo = lo.to_integer().to_i64().ok_or_else(|| Error::Overflow("box bound".into()))?;
        let hi = hi.to_integer().to_i64().ok_or_else(|| Error::Overflow("box bound".into()))?;
        bounds.push((lo, hi));
    }
    let volume = bounds
        .iter()
        .fold(BigUint::one(), |acc, (lo, hi)| acc * BigUint::from((hi - lo + 1) as u64));
    check_cap(&volume, cap, "box points")?;

    // f_i = g_i / den_i with integer g_i
    let mut numer: Vec<Vec<i64>> = Vec::new();
    let mut denom: Vec<i64> = Vec::new();
    for f in spec.facets() {
        let den = f
            .covector
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let row = f
            .covector
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer().to_i64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Overflow("facet numerators".into()))?;
        numer.push(row);
        denom.push(den.to_i64().ok_or_else(|| Error::Overflow("facet denominator".into()))?);
    }
    let basis = spec
        .lattice()
        .basis()
        .to_i64_rows()
        .ok_or_else(|| Error::Overflow("lattice basis".into()))?;

    let in_lattice = |u: &[i64]| -> bool {
        // triangular back-substitution against the Hermite basis
        let mut rest: Vec<i128> = u.iter().map(|&x| i128::from(x)).collect();
        for j in 0..d {
            let pivot = i128::from(basis[j][j]);
            if rest[j] % pivot != 0 {
                return false;
            }
            let c = rest[j] / pivot;
            for k in j..d {
                rest[k] -= c * i128::from(basis[j][k]);
            }
        }
        true
    };

    let leads: Vec<i64> = (bounds[0].0..=bounds[0].1).collect();
    let count: u64 = leads
        .par_iter()
        .map(|&lead| {
            let mut u: Vec<i64> = bounds.iter().map(|b| b.0).collect();
            u[0] = lead;
            let mut n = 0u64;
            loop {
                let inside = numer.iter().zip(&denom).all(|(g, &den)| {
                    let v: i128 = g.iter().zip(&u).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum();
                    v >= 0 && v < i128::from(q) * i128::from(den)
                });
                if inside && in_lattice(&u) {
                    n += 1;
                }
                let mut k = d;
                loop {
                    if k <= 1 {
                        return n;
                    }
                    k -= 1;
                    u[k] += 1;
                    if u[k] <= bounds[k].1 {
                        break;
                    }
                    u[k] = bounds[k].0;
                }
            }
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::class_group;
    use crate::toric::builtin;

    fn dec(s: &str, base: &[i64], p: u64, e: u32, detail: bool) -> (FrobeniusDecomposition, ClassGroupData) {
        let spec = builtin(s).unwrap();
        let cg = class_group(&spec).unwrap();
        let ctx = FrobeniusContext::new(p, e).unwrap();
        let opts = DecomposeOptions { cap: DEFAULT_CAP, detail };
        let d = decompose(&spec, &cg, &WeilDivisor::new(base.to_vec()), &ctx, &opts).unwrap();
        (d, cg)
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(matches!(FrobeniusContext::new(4, 1), Err(Error::NotPrime(4))));
        assert!(FrobeniusContext::new(2, 0).is_err());
        assert_eq!(FrobeniusContext::new(3, 4).unwrap().q(), &BigUint::from(81u32));
    }

    #[test]
    fn a1_at_q2_by_hand() {
        let (dec, cg) = dec("an:2", &[0, 0], 2, 1, true);
        let zero = cg.zero();
        let one = ClassElement { free: vec![], torsion: vec![1] };
        assert_eq!(dec.summands, BTreeMap::from([(zero, 2), (one.clone(), 2)]));
        assert_eq!(dec.free_rank(), 2);
        assert_eq!(dec.multiplicity_of(&one), 2);

        let detail = dec.detail.unwrap();
        let reps: Vec<Vec<i64>> = detail.iter().map(|s| s.numerator.clone()).collect();
        assert_eq!(reps, vec![vec![0, 0], vec![0, 2], vec![1, 1], vec![1, 3]]);
        let divs: Vec<Vec<i64>> = detail.iter().map(|s| s.divisor.coeffs.clone()).collect();
        assert_eq!(divs, vec![vec![0, 0], vec![0, 1], vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn a1_at_q3() {
        let (dec, _) = dec("an:2", &[0, 0], 3, 1, false);
        assert_eq!(dec.free_rank(), 5);
        assert_eq!(dec.total(), 9);
    }

    #[test]
    fn polynomial_is_free() {
        for (s, d) in [("poly:1", 1u32), ("poly:2", 2), ("poly:3", 3)] {
            let (dec, cg) = dec(s, &vec![0; d as usize], 3, 2, false);
            assert_eq!(dec.summands.len(), 1);
            assert_eq!(dec.free_rank(), 9u64.pow(d));
            assert_eq!(dec.simultaneous_torsion_count(&cg, 10).unwrap(), 9u64.pow(d));
        }
    }

    #[test]
    fn an_is_all_torsion() {
        let (dec, cg) = dec("an:3", &[0, 0], 2, 3, false);
        assert_eq!(dec.simultaneous_torsion_count(&cg, 10).unwrap(), 64);
    }

    #[test]
    fn quadric_torsion_count_is_free_rank() {
        let (dec, cg) = dec("quadric", &[0, 0, 0, 0], 2, 2, false);
        assert_eq!(dec.total(), 64);
        assert_eq!(dec.simultaneous_torsion_count(&cg, 10).unwrap(), dec.free_rank());
        assert!(dec.summands.len() > 1);
    }

    #[test]
    fn cap_and_length_errors() {
        let spec = builtin("an:2").unwrap();
        let cg = class_group(&spec).unwrap();
        let ctx = FrobeniusContext::new(2, 1).unwrap();
        let r = decompose(&spec, &cg, &WeilDivisor::zero(2), &ctx, &DecomposeOptions::with_cap(3));
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
        let r = decompose(&spec, &cg, &WeilDivisor::zero(3), &ctx, &DecomposeOptions::default());
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
        assert!(matches!(box_count_oracle(&spec, &ctx, 0), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn oracle_small_cases() {
        let spec = builtin("an:2").unwrap();
        assert_eq!(box_count_oracle(&spec, &FrobeniusContext::new(3, 1).unwrap(), DEFAULT_CAP).unwrap(), 5);
        for n in 2..=4u64 {
            let spec = builtin(&format!("an:{n}")).unwrap();
            // q = m·n with p = n for prime n
            if is_prime(n) {
                let ctx = FrobeniusContext::new(n, 2).unwrap();
                let m = n;
                assert_eq!(box_count_oracle(&spec, &ctx, DEFAULT_CAP).unwrap(), m * m * n);
            }
        }
        let spec = builtin("poly:3").unwrap();
        assert_eq!(box_count_oracle(&spec, &FrobeniusContext::new(2, 2).unwrap(), DEFAULT_CAP).unwrap(), 64);
    }

    #[test]
    fn partition_independence() {
        let spec = builtin("quadric").unwrap();
        let cg = class_group(&spec).unwrap();
        let ctx = FrobeniusContext::new(3, 2).unwrap();
        let base = WeilDivisor::new(vec![1, -2, 0, 3]);
        let opts = DecomposeOptions { cap: DEFAULT_CAP, detail: true };
        let reference = decompose(&spec, &cg, &base, &ctx, &opts).unwrap();
        for k in [1, 2, 4, 7, 100] {
            let other = decompose_partitioned(&spec, &cg, &base, &ctx, &opts, Some(k)).unwrap();
            assert_eq!(other, reference, "chunks = {k}");
        }
    }
}
