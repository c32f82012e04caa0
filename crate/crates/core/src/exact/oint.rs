use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::quad::QuadExt;
use super::rational::BigRational;
use crate::{Error, Result};

/// Algebraic integer a + bω of an imaginary quadratic field with class number
/// one, where ω² = −tω − m:
/// ℚ(√−1): ω = i, ℚ(√−2): ω = √−2, ℚ(√−3): ω = (−1+√−3)/2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OInt {
    d: i64,
    a: BigInt,
    b: BigInt,
}

fn tm(d: i64) -> (i64, i64) {
    match d {
        -1 => (0, 1),
        -2 => (0, 2),
        -3 => (1, 1),
        _ => unreachable!("unsupported imaginary field"),
    }
}

pub(crate) fn check_imag(d: i64) -> Result<()> {
    if matches!(d, -1 | -2 | -3) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("ring of integers of ℚ(√{d})")))
    }
}

/// Round to nearest integer, halves toward +∞.
pub(crate) fn round_rat(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

impl OInt {
    pub fn new(d: i64, a: BigInt, b: BigInt) -> Result<Self> {
        check_imag(d)?;
        Ok(OInt { d, a, b })
    }

    pub fn from_i64(d: i64, a: i64, b: i64) -> Result<Self> {
        Self::new(d, a.into(), b.into())
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        let (t, m) = tm(self.d);
        &self.a * &self.a - BigInt::from(t) * &self.a * &self.b + BigInt::from(m) * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        let (t, _) = tm(self.d);
        OInt { d: self.d, a: &self.a - BigInt::from(t) * &self.b, b: -&self.b }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (t, m) = tm(self.d);
        let be = &self.b * &o.b;
        OInt {
            d: self.d,
            a: &self.a * &o.a - BigInt::from(m) * &be,
            b: &self.a * &o.b + &self.b * &o.a - BigInt::from(t) * &be,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OInt { d: self.d, a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == BigInt::from(1)
    }

    pub fn units(d: i64) -> Vec<OInt> {
        let v: &[(i64, i64)] = match d {
            -1 => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            -2 => &[(1, 0), (-1, 0)],
            _ => &[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        };
        v.iter().map(|&(a, b)| OInt::from_i64(d, a, b).unwrap()).collect()
    }

    /// Quotient with nearest-rounding in the ω-basis; the remainder has
    /// strictly smaller norm in all three fields.
    pub fn div_round(&self, o: &Self) -> Result<(Self, Self)> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = o.norm();
        let num = self.mul(&o.conj());
        let q = OInt {
            d: self.d,
            a: round_rat(&BigRational::new(num.a.clone(), n.clone())),
            b: round_rat(&BigRational::new(num.b.clone(), n)),
        };
        let r = self.sub(&q.mul(o));
        Ok((q, r))
    }

    /// Exact division; None when o does not divide self.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_round(o).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), o.clone());
        while !y.is_zero() {
            let (_, r) = x.div_round(&y).expect("nonzero");
            x = y;
            y = r;
        }
        x
    }

    pub fn to_quad(&self) -> QuadExt {
        omega_to_quad(self.d, &BigRational::from_integer(self.a.clone()), &BigRational::from_integer(self.b.clone()))
    }

    pub fn abs_b(&self) -> BigInt {
        self.b.abs()
    }
}

/// u + vω as a QuadExt in √d coordinates.
pub(crate) fn omega_to_quad(d: i64, u: &BigRational, v: &BigRational) -> QuadExt {
    if d == -3 {
        let half = BigRational::new(1.into(), 2.into());
        QuadExt::raw(-3, u - v * &half, v * &half)
    } else {
        QuadExt::raw(d, u.clone(), v.clone())
    }
}

/// Inverse of [`omega_to_quad`].
pub(crate) fn quad_to_omega(x: &QuadExt) -> (BigRational, BigRational) {
    if x.d() == -3 {
        let v = x.b() * BigRational::from_integer(2.into());
        (x.a() + x.b(), v)
    } else {
        (x.a().clone(), x.b().clone())
    }
}

/// Integer representation of a + bω when its coordinates are integral.
pub(crate) fn integral(d: i64, u: &BigRational, v: &BigRational) -> Option<OInt> {
    (u.is_integer() && v.is_integer()).then(|| OInt { d, a: u.to_integer(), b: v.to_integer() })
}
