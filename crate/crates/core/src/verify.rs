//! Checks `|tors(Cl(R))| <= 1/s(R)` on explicit rings.
//!
//! The inequality itself is decided in exact arithmetic from the volume
//! formula for `s(R)`. Finite-level decompositions are attached as witness
//! rows: `a_e`, `s_e` and the torsion summand count `n_e <= q^d`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::divisor::{class_group, ClassElement, ClassGroupData, WeilDivisor};
use crate::error::{Error, Result};
use crate::frobenius::{decompose, DecomposeOptions, FrobeniusContext, DEFAULT_CAP};
use crate::fsignature::exact_signature_volume;
use crate::ringfile::RingFile;
use crate::toric::{builtin_ring, Family, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cap: u64,
    /// Skip levels with `q` above this bound.
    pub q_max: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: DEFAULT_CAP, q_max: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub e: u32,
    pub q: BigUint,
    pub a_e: u64,
    pub s_e: BigRational,
    pub n_e: u64,
    pub rank: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub ring: String,
    pub p: u64,
    pub dim: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub torsion_cardinality: BigInt,
    pub exact_signature: BigRational,
    pub inequality_holds: bool,
    pub equality: bool,
    pub witnesses: Vec<WitnessRow>,
    /// Requested levels that were dropped by the cap or `q_max`.
    pub skipped_levels: Vec<u32>,
}

impl TheoremVerdict {
    /// `1/s(R)`.
    pub fn bound(&self) -> BigRational {
        self.exact_signature.recip()
    }

    pub fn witnesses_within_rank(&self) -> bool {
        self.witnesses
            .iter()
            .all(|w| BigUint::from(w.n_e) <= w.rank)
    }
}

/// Levels `e <= e_max` whose decomposition fits the options.
fn feasible_levels(dim: usize, p: u64, e_max: u32, opts: &VerifyOptions) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut keep = Vec::new();
    let mut skip = Vec::new();
    for e in 1..=e_max {
        let ctx = FrobeniusContext::new(p, e)?;
        let q_ok = opts.q_max.map_or(true, |m| ctx.q() <= &BigUint::from(m));
        let cap_ok = ctx.rank(dim) <= BigUint::from(opts.cap);
        if q_ok && cap_ok {
            keep.push(e);
        } else {
            skip.push(e);
        }
    }
    Ok((keep, skip))
}

/// Runs the theorem check on one ring in characteristic `p`.
///
/// Levels whose `q^d` exceeds the cap are skipped and listed in the verdict;
/// if not even `e = 1` fits, the cap error is returned.
pub fn verify_ring(spec: &RingSpec, p: u64, e_max: u32, opts: &VerifyOptions) -> Result<TheoremVerdict> {
    let d = spec.dim();
    let ctx1 = FrobeniusContext::new(p, 1)?;
    if ctx1.rank(d) > BigUint::from(opts.cap) {
        return Err(Error::CapExceeded {
            required: format!("{} cosets for `{}` at p = {p}, e = 1", ctx1.rank(d), spec.name()),
            cap: opts.cap,
        });
    }
    let cg = class_group(spec)?;
    let torsion = cg.torsion_cardinality();
    let exact = exact_signature_volume(spec)?.value;

    let lhs = BigRational::from_integer(torsion.clone()) * &exact;
    let inequality_holds = lhs <= BigRational::one();
    let equality = lhs == BigRational::one();

    let (levels, skipped_levels) = feasible_levels(d, p, e_max, opts)?;
    let torsion_classes = cg.torsion_elements(opts.cap)?;
    let zero = WeilDivisor::zero(spec.num_facets());
    let witnesses = levels
        .iter()
        .map(|&e| {
            let ctx = FrobeniusContext::new(p, e)?;
            let dec = decompose(spec, &cg, &zero, &ctx, &DecomposeOptions::with_cap(opts.cap))?;
            let a_e = dec.free_rank();
            let n_e = torsion_classes.iter().map(|c| dec.multiplicity_of(c)).sum();
            let rank = ctx.rank(d);
            Ok(WitnessRow {
                e,
                q: ctx.q().clone(),
                a_e,
                s_e: BigRational::new(BigInt::from(a_e), BigInt::from(rank.clone())),
                n_e,
                rank,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TheoremVerdict {
        ring: spec.name().to_string(),
        p,
        dim: d,
        free_rank: cg.free_rank(),
        invariant_factors: cg.invariant_factors().to_vec(),
        torsion_cardinality: torsion,
        exact_signature: exact,
        inequality_holds,
        equality,
        witnesses,
        skipped_levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConvergence {
    pub class: ClassElement,
    /// `(e, q, multiplicity, multiplicity / q^d, |ratio - s(R)|)`
    pub rows: Vec<(u32, BigUint, u64, BigRational, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerClassTable {
    pub ring: String,
    pub p: u64,
    pub exact_signature: BigRational,
    pub classes: Vec<ClassConvergence>,
}

impl PerClassTable {
    /// Largest deviation over classes at the last computed level.
    pub fn max_deviation_at_last(&self) -> BigRational {
        self.classes
            .iter()
            .filter_map(|c| c.rows.last().map(|r| r.4.clone()))
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Multiplicity of every torsion class in `F^e_*R` against `s(R)`.
pub fn verify_per_class_convergence(
    spec: &RingSpec,
    p: u64,
    e_max: u32,
    opts: &VerifyOptions,
) -> Result<PerClassTable> {
    let cg = class_group(spec)?;
    let exact = exact_signature_volume(spec)?.value;
    let classes = cg.torsion_elements(opts.cap)?;
    let (levels, _) = feasible_levels(spec.dim(), p, e_max, opts)?;
    let zero = WeilDivisor::zero(spec.num_facets());
    let mut table: Vec<ClassConvergence> = classes
        .iter()
        .map(|c| ClassConvergence { class: c.clone(), rows: Vec::new() })
        .collect();
    for e in levels {
        let ctx = FrobeniusContext::new(p, e)?;
        let dec = decompose(spec, &cg, &zero, &ctx, &DecomposeOptions::with_cap(opts.cap))?;
        let rank = BigInt::from(ctx.rank(spec.dim()));
        for entry in &mut table {
            let k = dec.multiplicity_of(&entry.class);
            let ratio = BigRational::new(BigInt::from(k), rank.clone());
            let dev = (&ratio - &exact).abs();
            entry.rows.push((e, ctx.q().clone(), k, ratio, dev));
        }
    }
    Ok(PerClassTable {
        ring: spec.name().to_string(),
        p,
        exact_signature: exact,
        classes: table,
    })
}

/// The built-in rings checked by [`run_corpus`].
pub fn default_corpus() -> Vec<Family> {
    let mut out: Vec<Family> = (2..=6).map(Family::AnSingularity).collect();
    out.extend((2..=6).map(Family::Veronese));
    out.push(Family::QuadricCone);
    out.extend((1..=3).map(Family::Polynomial));
    out
}

#[derive(Clone, Debug)]
pub struct RingFailure {
    pub ring: String,
    pub p: u64,
    pub error: String,
    pub cap_exceeded: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CorpusRun {
    pub verdicts: Vec<TheoremVerdict>,
    pub failures: Vec<RingFailure>,
}

impl CorpusRun {
    pub fn violations(&self) -> Vec<&TheoremVerdict> {
        self.verdicts
            .iter()
            .filter(|v| !v.inequality_holds || !v.witnesses_within_rank())
            .collect()
    }

    pub fn is_success(&self) -> bool {
        self.failures.is_empty() && self.violations().is_empty()
    }
}

/// Verifies each ring for each prime. Failures are collected rather than
/// aborting; output is sorted by ring name, then prime.
pub fn run_corpus(rings: &[RingSpec], primes: &[u64], e_max: u32, opts: &VerifyOptions) -> CorpusRun {
    let jobs: Vec<(&RingSpec, u64)> = rings
        .iter()
        .flat_map(|r| primes.iter().map(move |&p| (r, p)))
        .collect();
    let results: Vec<(String, u64, Result<TheoremVerdict>)> = jobs
        .par_iter()
        .map(|(r, p)| (r.name().to_string(), *p, verify_ring(r, *p, e_max, opts)))
        .collect();
    let mut run = CorpusRun::default();
    for (ring, p, res) in results {
        match res {
            Ok(v) => run.verdicts.push(v),
            Err(e) => run.failures.push(RingFailure {
                ring,
                p,
                cap_exceeded: matches!(e, Error::CapExceeded { .. }),
                error: e.to_string(),
            }),
        }
    }
    run.verdicts.sort_by(|a, b| (&a.ring, a.p).cmp(&(&b.ring, b.p)));
    run.failures.sort_by(|a, b| (&a.ring, a.p).cmp(&(&b.ring, b.p)));
    run
}

/// Builds every ring of [`default_corpus`].
pub fn corpus_rings() -> Result<Vec<RingSpec>> {
    default_corpus().into_iter().map(builtin_ring).collect()
}

/// Everything needed to replay a failed check: the ring, the level, the
/// class group and the per-coset summands at that level (when small enough).
pub fn reproduction_bundle(spec: &RingSpec, p: u64, e: u32, cap: u64) -> Result<serde_json::Value> {
    let cg: ClassGroupData = class_group(spec)?;
    let ctx = FrobeniusContext::new(p, e)?;
    let opts = DecomposeOptions { cap, detail: true };
    let dec = decompose(spec, &cg, &WeilDivisor::zero(spec.num_facets()), &ctx, &opts)?;
    let detail: Vec<serde_json::Value> = dec
        .detail
        .unwrap_or_default()
        .iter()
        .map(|s| {
            json!({
                "coords": s.coords,
                "numerator": s.numerator,
                "divisor": s.divisor.coeffs,
                "class": cg.class_of(&s.divisor).to_string(),
            })
        })
        .collect();
    Ok(json!({
        "ring": RingFile::from_spec(spec),
        "p": p,
        "e": e,
        "q": ctx.q().to_string(),
        "class_group": {
            "free_rank": cg.free_rank(),
            "invariant_factors": cg.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
        },
        "cosets": detail,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::builtin;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn an_equality() {
        for n in 2..=4 {
            let v = verify_ring(&builtin(&format!("an:{n}")).unwrap(), 3, 2, &VerifyOptions::default()).unwrap();
            assert!(v.inequality_holds && v.equality);
            assert_eq!(v.exact_signature, r(1, n));
            for w in &v.witnesses {
                assert_eq!(BigUint::from(w.n_e), w.rank);
            }
        }
    }

    #[test]
    fn quadric_strict() {
        let v = verify_ring(&builtin("quadric").unwrap(), 2, 2, &VerifyOptions::default()).unwrap();
        assert!(v.inequality_holds);
        assert!(!v.equality);
        assert_eq!(v.bound(), r(3, 2));
        assert!(v.witnesses.iter().all(|w| w.n_e == w.a_e && BigUint::from(w.n_e) < w.rank));
    }

    #[test]
    fn polynomial_equality() {
        let v = verify_ring(&builtin("poly:2").unwrap(), 5, 1, &VerifyOptions::default()).unwrap();
        assert!(v.equality);
    }

    #[test]
    fn cap_behaviour() {
        let opts = VerifyOptions { cap: 1, q_max: None };
        assert!(matches!(verify_ring(&builtin("an:2").unwrap(), 2, 3, &opts), Err(Error::CapExceeded { .. })));
        let opts = VerifyOptions { cap: 100, q_max: None };
        let v = verify_ring(&builtin("an:2").unwrap(), 2, 5, &opts).unwrap();
        assert_eq!(v.witnesses.len(), 3);
        assert_eq!(v.skipped_levels, vec![4, 5]);
    }

    #[test]
    fn per_class_small() {
        let t = verify_per_class_convergence(&builtin("an:2").unwrap(), 2, 1, &VerifyOptions::default()).unwrap();
        assert_eq!(t.classes.len(), 2);
        for c in &t.classes {
            assert_eq!(c.rows[0].3, r(1, 2));
        }
        assert_eq!(t.max_deviation_at_last(), r(0, 1));

        let t = verify_per_class_convergence(&builtin("poly:2").unwrap(), 3, 2, &VerifyOptions::default()).unwrap();
        assert_eq!(t.classes.len(), 1);
        assert!(t.classes[0].rows.iter().all(|row| row.4.is_zero()));
    }

    #[test]
    fn corpus_edges() {
        let rings = corpus_rings().unwrap();
        let run = run_corpus(&rings, &[], 3, &VerifyOptions::default());
        assert!(run.verdicts.is_empty() && run.failures.is_empty());
        let run = run_corpus(&rings, &[2], 3, &VerifyOptions { cap: 0, q_max: None });
        assert!(run.verdicts.is_empty());
        assert_eq!(run.failures.len(), rings.len());
        assert!(run.failures.iter().all(|f| f.cap_exceeded));
        assert!(!run.is_success());
    }

    #[test]
    fn bundle_has_cosets() {
        let b = reproduction_bundle(&builtin("an:2").unwrap(), 2, 1, 1000).unwrap();
        assert_eq!(b["cosets"].as_array().unwrap().len(), 4);
        assert_eq!(b["q"], "2");
    }
}
