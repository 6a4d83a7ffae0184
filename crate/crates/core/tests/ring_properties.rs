mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use toric_fsig::divisor::{class_group, divisorial_points, principal_divisor, ClassOrder, WeilDivisor};
use toric_fsig::frobenius::{box_count_oracle, decompose, DecomposeOptions, FrobeniusContext, DEFAULT_CAP};
use toric_fsig::fsignature::{exact_signature_volume, signature_sequence, singh_determinantal_signature};
use toric_fsig::toric::builtin;
use toric_fsig::verify::corpus_rings;

const RINGS: [&str; 6] = ["an:2", "an:5", "veronese:3", "quadric", "poly:2", "poly:3"];

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semigroup_closed_under_addition(
        idx in 0usize..RINGS.len(),
        u in prop::collection::vec(-6i64..=6, 3),
        v in prop::collection::vec(-6i64..=6, 3),
    ) {
        let spec = builtin(RINGS[idx]).unwrap();
        let d = spec.dim();
        let (u, v) = (&u[..d], &v[..d]);
        if spec.contains(u).unwrap() && spec.contains(v).unwrap() {
            let w: Vec<i64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
            prop_assert!(spec.contains(&w).unwrap());
        }
    }

    #[test]
    fn class_of_is_a_homomorphism(
        idx in 0usize..RINGS.len(),
        a in prop::collection::vec(-9i64..=9, 4),
        b in prop::collection::vec(-9i64..=9, 4),
    ) {
        let spec = builtin(RINGS[idx]).unwrap();
        let cg = class_group(&spec).unwrap();
        let m = spec.num_facets();
        let d1 = WeilDivisor::new(a[..m].to_vec());
        let d2 = WeilDivisor::new(b[..m].to_vec());
        prop_assert_eq!(cg.class_of(&(&d1 + &d2)), cg.add(&cg.class_of(&d1), &cg.class_of(&d2)));
        prop_assert_eq!(cg.class_of(&(-&d1)), cg.neg(&cg.class_of(&d1)));
        // order divides |tors| for torsion classes
        if let ClassOrder::Finite(k) = cg.order_of_class(&cg.class_of(&d1)) {
            let t = cg.torsion_cardinality().to_u64().unwrap();
            prop_assert_eq!(t % k, 0);
        }
    }

    #[test]
    fn principal_divisors_have_trivial_class(idx in 0usize..RINGS.len(), c in prop::collection::vec(-9i64..=9, 3)) {
        let spec = builtin(RINGS[idx]).unwrap();
        let cg = class_group(&spec).unwrap();
        let basis = spec.lattice().basis().to_i64_rows().unwrap();
        let d = spec.dim();
        let u: Vec<i64> = (0..d).map(|k| (0..d).map(|j| c[j] * basis[j][k]).sum()).collect();
        let div = principal_divisor(&spec, &u).unwrap();
        prop_assert!(cg.class_of(&div).is_zero());
    }

    #[test]
    fn divisorial_points_translate(
        idx in 0usize..RINGS.len(),
        a in prop::collection::vec(-2i64..=2, 4),
        c in prop::collection::vec(-2i64..=2, 3),
    ) {
        let spec = builtin(RINGS[idx]).unwrap();
        let d = spec.dim();
        let m = spec.num_facets();
        let div = WeilDivisor::new(a[..m].to_vec());
        let basis = spec.lattice().basis().to_i64_rows().unwrap();
        let v: Vec<i64> = (0..d).map(|k| (0..d).map(|j| c[j] * basis[j][k]).sum()).collect();
        let bounds: Vec<(i64, i64)> = vec![(-3, 4); d];
        let shifted: Vec<(i64, i64)> = bounds.iter().zip(&v).map(|((lo, hi), x)| (lo + x, hi + x)).collect();

        let base = divisorial_points(&spec, &div, &bounds).unwrap();
        let moved: Vec<Vec<i64>> = base.iter().map(|u| u.iter().zip(&v).map(|(a, b)| a + b).collect()).collect();
        let twisted = &div - &principal_divisor(&spec, &v).unwrap();
        prop_assert_eq!(moved, divisorial_points(&spec, &twisted, &shifted).unwrap());
    }

    #[test]
    fn reflexive_product_contains_pointwise_sums(
        idx in 0usize..RINGS.len(),
        a in prop::collection::vec(-1i64..=2, 4),
        b in prop::collection::vec(-1i64..=2, 4),
    ) {
        let spec = builtin(RINGS[idx]).unwrap();
        let d = spec.dim();
        let m = spec.num_facets();
        let (d1, d2) = (WeilDivisor::new(a[..m].to_vec()), WeilDivisor::new(b[..m].to_vec()));
        let small = vec![(-2, 3); d];
        let big = vec![(-4, 6); d];
        let p1 = divisorial_points(&spec, &d1, &small).unwrap();
        let p2 = divisorial_points(&spec, &d2, &small).unwrap();
        let sum = divisorial_points(&spec, &(&d1 + &d2), &big).unwrap();
        for u in &p1 {
            for v in &p2 {
                let w: Vec<i64> = u.iter().zip(v).map(|(x, y)| x + y).collect();
                prop_assert!(sum.binary_search(&w).is_ok());
            }
        }
        // class-level Hom and tensor rules
        let cg = class_group(&spec).unwrap();
        prop_assert_eq!(cg.class_of(&(&d2 - &d1)), cg.add(&cg.class_of(&d2), &cg.neg(&cg.class_of(&d1))));
    }

    #[test]
    fn rank_accounting(idx in 0usize..RINGS.len(), p in prop::sample::select(vec![2u64, 3, 5]), e in 1u32..=3, a in prop::collection::vec(-4i64..=4, 4)) {
        let spec = builtin(RINGS[idx]).unwrap();
        let ctx = FrobeniusContext::new(p, e).unwrap();
        prop_assume!(ctx.rank(spec.dim()) <= 20_000u32.into());
        let cg = class_group(&spec).unwrap();
        let base = WeilDivisor::new(a[..spec.num_facets()].to_vec());
        let dec = decompose(&spec, &cg, &base, &ctx, &DecomposeOptions::default()).unwrap();
        prop_assert_eq!(BigInt::from(dec.total()), BigInt::from(ctx.rank(spec.dim())));
    }
}

#[test]
fn oracle_equivalence_over_corpus() {
    for spec in corpus_rings().unwrap() {
        let cg = class_group(&spec).unwrap();
        for p in [2u64, 3] {
            for e in 1..=4 {
                let ctx = FrobeniusContext::new(p, e).unwrap();
                if ctx.rank(spec.dim()) > 300_000u32.into() {
                    continue;
                }
                let dec = decompose(&spec, &cg, &WeilDivisor::zero(spec.num_facets()), &ctx, &DecomposeOptions::default())
                    .unwrap();
                let oracle = box_count_oracle(&spec, &ctx, DEFAULT_CAP).unwrap();
                assert_eq!(dec.free_rank(), oracle, "{} p={p} e={e}", spec.name());
            }
        }
    }
}

#[test]
fn frobenius_twist_shifts_every_summand() {
    for s in ["an:3", "veronese:2", "quadric"] {
        let spec = builtin(s).unwrap();
        let cg = class_group(&spec).unwrap();
        let m = spec.num_facets();
        let d1 = WeilDivisor::new((0..m as i64).map(|i| i - 1).collect());
        let d2 = WeilDivisor::new((0..m as i64).map(|i| 2 - i).collect());
        let ctx = FrobeniusContext::new(3, 1).unwrap();
        let q = 3;
        let opts = DecomposeOptions { cap: DEFAULT_CAP, detail: true };
        let lhs = decompose(&spec, &cg, &(&d1 + &(q * &d2)), &ctx, &opts).unwrap().detail.unwrap();
        let rhs = decompose(&spec, &cg, &d1, &ctx, &opts).unwrap().detail.unwrap();
        assert_eq!(lhs.len(), rhs.len());
        for (x, y) in lhs.iter().zip(&rhs) {
            assert_eq!(x.coords, y.coords);
            assert_eq!(x.divisor, &y.divisor + &d2, "{s}");
        }
    }
}

/// For each torsion class the smallest e0 with multiplicity >= 1 for every
/// tested e >= e0.
#[test]
fn torsion_classes_eventually_appear() {
    for s in ["an:2", "an:3", "an:6", "veronese:4", "veronese:6", "poly:2"] {
        let spec = builtin(s).unwrap();
        let cg = class_group(&spec).unwrap();
        let classes = cg.torsion_elements(64).unwrap();
        let decs: Vec<_> = (1..=6)
            .map(|e| {
                let ctx = FrobeniusContext::new(2, e).unwrap();
                decompose(&spec, &cg, &WeilDivisor::zero(spec.num_facets()), &ctx, &DecomposeOptions::default()).unwrap()
            })
            .collect();
        for c in &classes {
            let e0 = (0..decs.len())
                .find(|&i| decs[i..].iter().all(|d| d.multiplicity_of(c) >= 1))
                .map(|i| i + 1);
            println!("{s}: class {c} e0 = {e0:?}");
            assert!(e0.is_some(), "{s}: class {c} never settles");
        }
    }
}

#[test]
fn twisted_sequences_track_untwisted() {
    // s_e(R(D)) and s_e(R) for torsion D: the gap shrinks like 1/q.
    for n in [2u32, 3, 5] {
        let spec = builtin(&format!("an:{n}")).unwrap();
        let cg = class_group(&spec).unwrap();
        let plain = signature_sequence(&spec, &cg, 2, 7, None, DEFAULT_CAP).unwrap();
        for twist in [vec![1, 0], vec![0, 1], vec![2, -1]] {
            let twist = WeilDivisor::new(twist);
            let twisted = signature_sequence(&spec, &cg, 2, 7, Some(&twist), DEFAULT_CAP).unwrap();
            let gaps: Vec<BigRational> = plain.iter().zip(&twisted).map(|(a, b)| (&a.s_e - &b.s_e).abs()).collect();
            // tail maxima are non-increasing and the last gap is within 4n/q
            for e in 0..gaps.len() {
                let tail = gaps[e..].iter().max().unwrap();
                let bound = BigRational::new(BigInt::from(4 * n), BigInt::from(plain[e].ctx.q().clone()));
                assert!(tail <= &bound, "an:{n} D={twist} e={} gap {tail}", e + 1);
            }
        }
    }
}

#[test]
fn quadric_volume_by_slicing() {
    // ∫_0^1 s·s ds + ∫_1^2 (2-s)(2-s) ds: the sum s = u1 + u2 has density
    // s then 2 - s, and the admissible u3 interval has the same length.
    let slice = r(1, 3) + r(1, 3);
    assert_eq!(slice, r(2, 3));
    let quad = builtin("quadric").unwrap();
    assert_eq!(exact_signature_volume(&quad).unwrap().value, slice);
    assert_eq!(singh_determinantal_signature(2, 3).unwrap().value, slice);
}

#[test]
fn quadric_lattice_count_approaches_volume() {
    // #{u in Z^3 : 0 <= f_i(u) < N} / N^3 -> 2/3, checked by brute force
    let quad = builtin("quadric").unwrap();
    let n: i64 = 40;
    let mut count = 0i64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let s = a + b - c;
                if (0..n).contains(&s) {
                    count += 1;
                }
            }
        }
    }
    let ratio = r(count, n * n * n);
    let dev = (&ratio - r(2, 3)).abs();
    assert!(dev <= r(3, n), "deviation {dev}");
    let ctx = FrobeniusContext::new(2, 3).unwrap();
    assert_eq!(box_count_oracle(&quad, &ctx, DEFAULT_CAP).unwrap(), {
        let n = 8;
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| a + b - c))).filter(|s| (0..n).contains(s)).count() as u64
    });
}
