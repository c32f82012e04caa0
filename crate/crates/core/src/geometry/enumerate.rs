use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::maps::{map_to_sphere, phi_inverse_params};
use super::point::SpherePoint;
use super::space::{spec_ref, SpaceCase};
use crate::exact::{rat, BigRational, BoundaryField, KElement};

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Candidates z ∈ K whose image can have sphere height ≤ bound.
///
/// From (Φ-ii), H(Φz) = H_K(z)(D² + C²|z − z₀|²)/(2RD) with φ(z₀) the foot
/// of n on P, so H_K(z) ≤ bound·2RD/D² and |z − z₀|² ≤ (2RD·bound/H_K − D²)/C².
fn candidates(case: SpaceCase, bound: u64) -> Vec<KElement> {
    let spec = spec_ref(case);
    let b = BigRational::from_integer(bound.into());
    let h_max = (&b * &spec.two_rd / &spec.d_sq).floor().to_integer().to_u64().expect("bound fits");
    let (two_rd, d_sq, c_sq, bf) = (f(&spec.two_rd), f(&spec.d_sq), f(&spec.dilation_sq), bound as f64);
    let r2 = |h: u64| ((two_rd * bf / h as f64 - d_sq) / c_sq).max(0.0);
    let z0: Vec<f64> = phi_inverse_params(case, &spec.foot).iter().map(f).collect();
    let mut out = Vec::new();
    match case.field() {
        BoundaryField::Rationals => {
            for q in 1i64.. {
                let h = (q * q) as u64;
                if h > h_max {
                    break;
                }
                let r = r2(h).sqrt();
                let lo = ((z0[0] - r) * q as f64).floor() as i64 - 1;
                let hi = ((z0[0] + r) * q as f64).ceil() as i64 + 1;
                for p in lo..=hi {
                    if p.gcd(&q) == 1 {
                        out.push(KElement::from_rational(&rat(p, q)));
                    }
                }
            }
        }
        BoundaryField::Sqrt2Rationals => {
            // w = √2·z = m/n; H = n² for m even, 2n² for m odd
            for n in 1i64.. {
                if ((n * n) as u64) > h_max {
                    break;
                }
                let r = std::f64::consts::SQRT_2 * r2((n * n) as u64).sqrt();
                let lo = ((z0[0] - r) * n as f64).floor() as i64 - 1;
                let hi = ((z0[0] + r) * n as f64).ceil() as i64 + 1;
                for m in lo..=hi {
                    if m.gcd(&n) != 1 {
                        continue;
                    }
                    let h = if m % 2 == 0 { n * n } else { 2 * n * n } as u64;
                    if h <= h_max {
                        out.push(KElement::from_sqrt2_scaled(&rat(m, n)));
                    }
                }
            }
        }
        field => {
            let (t, m): (i64, i64) = match field {
                BoundaryField::Gaussian => (0, 1),
                BoundaryField::SqrtMinus2 => (0, 2),
                _ => (1, 1),
            };
            let disc = (4 * m - t * t) as f64;
            for c in 1..=h_max as i64 {
                let r = r2(c as u64);
                let yb = (4.0 * r / disc).sqrt();
                let xb = (4.0 * m as f64 * r / disc).sqrt();
                let cf = c as f64;
                let (blo, bhi) = (((z0[1] - yb) * cf).floor() as i64 - 1, ((z0[1] + yb) * cf).ceil() as i64 + 1);
                let (alo, ahi) = (((z0[0] - xb) * cf).floor() as i64 - 1, ((z0[0] + xb) * cf).ceil() as i64 + 1);
                for bb in blo..=bhi {
                    for a in alo..=ahi {
                        let (a1, b1) = (a as i128, bb as i128);
                        let norm = a1 * a1 - t as i128 * a1 * b1 + m as i128 * b1 * b1;
                        if norm % c as i128 != 0 {
                            continue;
                        }
                        let g = (norm / c as i128).gcd(&(c as i128)).gcd(&a1).gcd(&b1);
                        if g != 1 {
                            continue;
                        }
                        let z = KElement::from_imag(field, &rat(a, c), &rat(bb, c)).expect("finite element");
                        if z.height().ok() == Some(BigInt::from(c)) {
                            out.push(z);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Pairs (z, Φ(z)) for finite z with H(Φ(z)) ≤ bound, sorted by (q, p).
pub fn k_elements_for_sphere(case: SpaceCase, bound: u64) -> Vec<(KElement, SpherePoint)> {
    let bq = BigInt::from(bound);
    let mut v: Vec<(KElement, SpherePoint)> = candidates(case, bound)
        .into_par_iter()
        .filter_map(|z| {
            let p = map_to_sphere(&z, case).expect("Φ is defined on K");
            (p.q() <= &bq).then_some((z, p))
        })
        .collect();
    v.sort_by(|a, b| a.1.sort_key().cmp(&b.1.sort_key()));
    v
}

/// All rational points of height ≤ bound, n included, sorted by (q, p).
pub fn sphere_points(case: SpaceCase, bound: u64) -> Vec<SpherePoint> {
    let mut v: Vec<SpherePoint> = k_elements_for_sphere(case, bound).into_iter().map(|(_, p)| p).collect();
    if bound >= 1 {
        v.push(SpherePoint::base(case));
    }
    v.sort_by_key(|p| p.sort_key());
    v
}
