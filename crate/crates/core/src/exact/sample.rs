//! Seeded random boundary-field elements of bounded height.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use rand::Rng;

use super::kelement::{BoundaryField, KElement};
use super::oint::OInt;
use super::rational::BigRational;

/// A uniformly drawn denominator class and a numerator in a window of about
/// four periods around the origin.
pub fn random_element<R: Rng + ?Sized>(field: BoundaryField, max_height: u64, rng: &mut R) -> KElement {
    let max_height = max_height.max(1);
    let root = max_height.sqrt().max(1) as i64;
    loop {
        match field {
            BoundaryField::Rationals => {
                let q = rng.gen_range(1..=root);
                let p = rng.gen_range(-4 * q..=4 * q);
                if p.gcd(&q) == 1 {
                    return KElement::from_ratio(p, q).unwrap();
                }
            }
            BoundaryField::Sqrt2Rationals => {
                let n = rng.gen_range(1..=root);
                let m = rng.gen_range(-4 * n..=4 * n);
                let h = if m % 2 == 0 { n * n } else { 2 * n * n };
                if m.gcd(&n) == 1 && h as u64 <= max_height {
                    return KElement::from_sqrt2_scaled(&BigRational::new(m.into(), n.into()));
                }
            }
            _ => {
                let d = field.quad_d();
                let a = rng.gen_range(-root..=root);
                let b = rng.gen_range(-root..=root);
                let beta = OInt::from_i64(d, a, b).unwrap();
                let n = beta.norm();
                if n == BigInt::from(0) || n > BigInt::from(max_height) {
                    continue;
                }
                let span = 4 * root;
                let alpha = OInt::from_i64(d, rng.gen_range(-span..=span), rng.gen_range(-span..=span)).unwrap();
                if !alpha.gcd(&beta).is_unit() {
                    continue;
                }
                return KElement::from_oints(&alpha, &beta).expect("coprime pair");
            }
        }
    }
}

/// Two distinct elements.
pub fn random_pair<R: Rng + ?Sized>(field: BoundaryField, max_height: u64, rng: &mut R) -> (KElement, KElement) {
    loop {
        let z = random_element(field, max_height, rng);
        let w = random_element(field, max_height, rng);
        if z != w {
            return (z, w);
        }
    }
}
