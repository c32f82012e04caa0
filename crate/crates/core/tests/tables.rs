use lagrange_spheres::exact::{int, rat, BoundaryField, KElement};
use lagrange_spheres::geometry::{map_to_sphere, sphere_points, SpaceCase};
use lagrange_spheres::horospheres::figure_points;
use lagrange_spheres::spectra::{
    best_approximations, cited_constants, discrete_spectrum, estimate_lagrange, x_values, y_values, ExactSquare,
    Interval, Space, TargetNumber,
};

#[test]
fn sphere_point_counts_at_height_25() {
    let n: Vec<usize> = SpaceCase::ALL.iter().map(|&c| sphere_points(c, 25).len()).collect();
    assert_eq!(n, vec![36, 36, 30, 1086, 1956, 848]);
}

#[test]
fn named_correspondences() {
    let cases = [
        (SpaceCase::S1I, "3/sqrt2", "(4,3)/5"),
        (SpaceCase::S1III, "1/2", "(2,2,-1)/3"),
        (SpaceCase::S2I, "1+i", "(0,1,0)/1"),
        (SpaceCase::S2III, "w", "(1,-1,1,1)/2"),
        (SpaceCase::S2II, "inf", "(0,1,1)/1"),
    ];
    for (c, z, p) in cases {
        let z = KElement::parse(c.field(), z).unwrap();
        assert_eq!(map_to_sphere(&z, c).unwrap().to_string(), p);
    }
    for c in SpaceCase::ALL {
        assert!(!figure_points(c).unwrap().is_empty());
    }
}

#[test]
fn markoff_value_lists() {
    assert_eq!(y_values(20), vec![1, 3, 11, 17]);
    assert_eq!(x_values(30), vec![1, 5, 29]);
}

#[test]
fn s2_i_spectrum_below_sqrt2() {
    let v = discrete_spectrum(SpaceCase::S2I, 30).unwrap();
    let two = ExactSquare::Rational(int(2));
    assert!(v.iter().all(|x| x.square.cmp_exact(&two).is_lt()));
    assert!(v.iter().any(|x| x.decimal(5) == "1.3860"));
    assert!(v.iter().any(|x| x.square == ExactSquare::Rational(rat(3, 2))));
}

#[test]
fn s2_ii_limit_point_surfaces_both_readings() {
    let c = cited_constants(SpaceCase::S2II);
    let lim = c.iter().find(|k| k.printed.contains("115 77720")).unwrap();
    assert!(lim.square.to_string().contains("46310880/405186721"));
    assert_eq!(lim.decimal(12), "1.26475819592");
}

fn band_contains_sqrt(x: &Interval, w: f64, n: f64) -> bool {
    let (lo, hi) = (x.lo_f64() - w / 2.0, x.hi_f64() + w / 2.0);
    lo <= n.sqrt() && n.sqrt() <= hi
}

trait Ends {
    fn lo_f64(&self) -> f64;
    fn hi_f64(&self) -> f64;
}

impl Ends for Interval {
    fn lo_f64(&self) -> f64 {
        Interval::point(self.lo().clone()).to_f64()
    }
    fn hi_f64(&self) -> f64 {
        Interval::point(self.hi().clone()).to_f64()
    }
}

#[test]
fn golden_records_are_fibonacci_quotients() {
    let recs = best_approximations(&TargetNumber::golden(), Space::Boundary(BoundaryField::Rationals), 100).unwrap();
    let fib = ["1", "2", "3/2", "5/3", "8/5", "13/8"];
    for f in fib {
        let z = KElement::parse(BoundaryField::Rationals, f).unwrap();
        let h = z.height().unwrap();
        let r = recs.iter().find(|r| r.height == h).unwrap();
        if h > 1.into() {
            assert_eq!(r.z, z, "height {h}");
        }
    }
}

#[test]
fn sqrt2_over_q_needs_a_pell_denominator_in_the_tail() {
    let s = TargetNumber::sqrt(2).unwrap();
    // q = 169 lies in the tail (15000, 30000]
    let e = estimate_lagrange(&s, Space::Boundary(BoundaryField::Rationals), 30_000).unwrap();
    assert!(band_contains_sqrt(&e, 1e-3, 8.0), "{e}");
}

#[test]
fn boundary_and_sphere_estimates_differ_by_dilation() {
    let g = TargetNumber::golden();
    let k = estimate_lagrange(&g, Space::Boundary(BoundaryField::Sqrt2Rationals), 10_000).unwrap().to_f64();
    for (c, dil) in [(SpaceCase::S1I, 2f64.sqrt()), (SpaceCase::S1II, 2.0)] {
        let s = estimate_lagrange(&g, Space::Sphere(c), 10_000).unwrap().to_f64();
        assert!((k / s - dil).abs() < 1e-3, "{c}: {k} / {s}");
    }
}
