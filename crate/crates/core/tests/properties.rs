use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lagrange_spheres::exact::{int, rat, sample::random_element, sample::random_pair, BigRational, QuadExt};
use lagrange_spheres::geometry::{map_to_sphere, sphere_points, unmap, verify_phi_conditions, SpaceCase};
use lagrange_spheres::horospheres::{form_excess, tangency_form, verify_tangent_or_disjoint, Verdict};
use lagrange_spheres::spectra::{
    best_approximations, markoff_tree, sqrt_rational, to_significant, transfer_identity_check, Interval, Space,
    TargetNumber,
};

fn case() -> impl Strategy<Value = SpaceCase> {
    prop::sample::select(SpaceCase::ALL.to_vec())
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unmap_inverts_map(c in case(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_element(c.field(), 1000, &mut rng);
        let p = map_to_sphere(&z, c).unwrap();
        prop_assert_eq!(unmap(&p).unwrap(), z);
    }

    #[test]
    fn phi_conditions_and_transfer(c in case(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (z, w) = random_pair(c.field(), 1000, &mut rng);
        let r = verify_phi_conditions(c, &z, &w).unwrap();
        prop_assert!(r.phi_i_holds && r.phi_ii_holds);
        prop_assert!(transfer_identity_check(c, &z, &w).unwrap() > int(0));
    }

    #[test]
    fn interval_arithmetic_encloses(a in small_rat(), b in small_rat(), ea in 0i64..100, eb in 0i64..100) {
        let ia = Interval::new(&a - rat(ea, 1000), &a + rat(ea, 1000));
        let ib = Interval::new(&b - rat(eb, 1000), &b + rat(eb, 1000));
        prop_assert!(ia.add(&ib).contains(&(&a + &b)));
        prop_assert!(ia.sub(&ib).contains(&(&a - &b)));
        prop_assert!(ia.mul(&ib).contains(&(&a * &b)));
        prop_assert!(ia.sqr().contains(&(&a * &a)));
        if let Ok(r) = ib.recip() {
            prop_assert!(r.contains(&(int(1) / &b)));
        }
    }

    #[test]
    fn sqrt_enclosure_tightens(n in 0i64..100_000, d in 1i64..1000, p in 8u32..200) {
        let x = rat(n, d);
        let s = sqrt_rational(&x, p).unwrap();
        prop_assert!(s.lo() * s.lo() <= x && x <= s.hi() * s.hi());
        let t = sqrt_rational(&x, p + 8).unwrap();
        prop_assert!(s.contains_interval(&t));
    }

    #[test]
    fn significant_digits_round_correctly(n in -10_000_000i64..10_000_000, d in 1i64..100_000, sig in 1usize..12) {
        prop_assume!(n != 0);
        let x = rat(n, d);
        let s = to_significant(&x, sig);
        let back: f64 = s.parse().unwrap();
        let v = n as f64 / d as f64;
        let ulp = 10f64.powi(v.abs().log10().floor() as i32 - sig as i32 + 1);
        prop_assert!((back - v).abs() <= ulp / 2.0 * (1.0 + 1e-9), "{} vs {}", s, v);
    }

    #[test]
    fn tangent_or_disjoint(c in case(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let pts = sphere_points(c, 8);
        let (a, b) = (i.get(&pts), j.get(&pts));
        prop_assume!(a != b);
        let cert = verify_tangent_or_disjoint(a, b).unwrap();
        let (v, e) = tangency_form(a, b).unwrap();
        let tangent = form_excess(c, &v, e) == BigInt::from(0);
        prop_assert_eq!(cert.verdict == Verdict::Tangent, tangent);
    }

    #[test]
    fn quadratic_targets_give_bounded_certified_quality(a in -20i64..20, b in 1i64..20, d in prop::sample::select(vec![3i64, 5, 7, 11])) {
        let xi = TargetNumber::real(QuadExt::new(d, rat(a, 3), rat(b, 5)).unwrap()).unwrap();
        for f in ["Q", "sqrt2Q"] {
            let recs = best_approximations(&xi, Space::Boundary(f.parse().unwrap()), 1000).unwrap();
            prop_assert!(!recs.is_empty());
            for r in &recs {
                prop_assert!(r.distance.lo() > &int(0));
                let h = Interval::point(BigRational::from_integer(r.height.clone()));
                prop_assert!(r.quality.mul(&h).mul(&r.distance).contains(&int(1)));
            }
            prop_assert!(recs.windows(2).all(|w| w[0].height < w[1].height));
        }
    }
}

#[test]
fn markoff_tree_matches_triple_loop() {
    for bound in [1u64, 2, 3, 17, 60, 200] {
        let mut oracle = Vec::new();
        for x in 1..=bound {
            for y1 in 1..=bound {
                for y2 in 1..=bound {
                    if 2 * x * x + y1 * y1 + y2 * y2 == 4 * x * y1 * y2 {
                        oracle.push([x, y1, y2]);
                    }
                }
            }
        }
        let tree: Vec<[u64; 3]> = markoff_tree(bound).iter().map(|t| t.as_array()).collect();
        assert_eq!(tree, oracle, "bound {bound}");
    }
}
