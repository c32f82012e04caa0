use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::quad::QuadExt;
use super::rational::{int, BigRational};
use crate::{Error, Result};

/// Element p + q√3 of ℚ(√2, √3), with p, q ∈ ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biquad {
    p: QuadExt,
    q: QuadExt,
}

impl Biquad {
    pub fn new(p: QuadExt, q: QuadExt) -> Result<Self> {
        if p.d() != 2 {
            return Err(Error::MixedFields(2, p.d()));
        }
        if q.d() != 2 {
            return Err(Error::MixedFields(2, q.d()));
        }
        Ok(Biquad { p, q })
    }

    /// a + b√2 + c√3 + e√6.
    pub fn from_coeffs(a: BigRational, b: BigRational, c: BigRational, e: BigRational) -> Self {
        Biquad { p: QuadExt::raw(2, a, b), q: QuadExt::raw(2, c, e) }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_coeffs(r, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn from_quad2(p: &QuadExt) -> Result<Self> {
        Self::new(p.clone(), QuadExt::zero(2))
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn sqrt2() -> Self {
        Self::from_coeffs(int(0), int(1), int(0), int(0))
    }

    pub fn sqrt3() -> Self {
        Self::from_coeffs(int(0), int(0), int(1), int(0))
    }

    pub fn sqrt6() -> Self {
        Self::from_coeffs(int(0), int(0), int(0), int(1))
    }

    pub fn p(&self) -> &QuadExt {
        &self.p
    }

    pub fn q(&self) -> &QuadExt {
        &self.q
    }

    /// Coefficients in the basis 1, √2, √3, √6.
    pub fn coeffs(&self) -> [BigRational; 4] {
        [self.p.a().clone(), self.p.b().clone(), self.q.a().clone(), self.q.b().clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.q.is_zero() && self.p.is_rational()).then(|| self.p.a().clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Biquad { p: self.p.scale(r), q: self.q.scale(r) }
    }

    /// √3 ↦ −√3.
    pub fn conj3(&self) -> Self {
        Biquad { p: self.p.clone(), q: -&self.q }
    }

    pub fn signum(&self) -> Ordering {
        let sp = self.p.signum().expect("real field");
        let sq = self.q.signum().expect("real field");
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let lhs = &self.p * &self.p;
        let rhs = (&self.q * &self.q).scale(&int(3));
        match lhs.cmp_real(&rhs).expect("same field") {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let den = &self.p * &self.p - (&self.q * &self.q).scale(&int(3));
        let den_inv = den.inv()?;
        Ok(Biquad { p: &self.p * &den_inv, q: -(&self.q * &den_inv) })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn to_f64(&self) -> f64 {
        let [a, b, c, e] = self.coeffs().map(|x| {
            use num_traits::ToPrimitive;
            x.to_f64().unwrap_or(f64::NAN)
        });
        a + b * 2f64.sqrt() + c * 3f64.sqrt() + e * 6f64.sqrt()
    }
}

impl<'a> Add<&'a Biquad> for &'a Biquad {
    type Output = Biquad;
    fn add(self, o: &'a Biquad) -> Biquad {
        Biquad { p: &self.p + &o.p, q: &self.q + &o.q }
    }
}

impl<'a> Sub<&'a Biquad> for &'a Biquad {
    type Output = Biquad;
    fn sub(self, o: &'a Biquad) -> Biquad {
        Biquad { p: &self.p - &o.p, q: &self.q - &o.q }
    }
}

impl<'a> Mul<&'a Biquad> for &'a Biquad {
    type Output = Biquad;
    fn mul(self, o: &'a Biquad) -> Biquad {
        let qq = (&self.q * &o.q).scale(&int(3));
        Biquad {
            p: &(&self.p * &o.p) + &qq,
            q: &(&self.p * &o.q) + &(&self.q * &o.p),
        }
    }
}

impl Add for Biquad {
    type Output = Biquad;
    fn add(self, o: Biquad) -> Biquad {
        &self + &o
    }
}

impl Sub for Biquad {
    type Output = Biquad;
    fn sub(self, o: Biquad) -> Biquad {
        &self - &o
    }
}

impl Mul for Biquad {
    type Output = Biquad;
    fn mul(self, o: Biquad) -> Biquad {
        &self * &o
    }
}

impl Neg for &Biquad {
    type Output = Biquad;
    fn neg(self) -> Biquad {
        Biquad { p: -&self.p, q: -&self.q }
    }
}

impl Neg for Biquad {
    type Output = Biquad;
    fn neg(self) -> Biquad {
        -&self
    }
}

impl fmt::Display for Biquad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "sqrt2", "sqrt3", "sqrt6"];
        let mut out = String::new();
        for (c, name) in self.coeffs().iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match (name.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => name.to_string(),
                (false, false) => format!("{mag}*{name}"),
            };
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sqrt6_squared() {
        let s = Biquad::sqrt6();
        assert_eq!(&s * &s, Biquad::from_rational(int(6)));
        assert_eq!(&Biquad::sqrt2() * &Biquad::sqrt3(), s);
    }

    #[test]
    fn inverse() {
        let x = Biquad::from_coeffs(rat(1, 2), int(-3), rat(2, 5), int(1));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Biquad::one());
        assert!(Biquad::zero().inv().is_err());
    }

    #[test]
    fn signs() {
        // √2 + √3 − √6 − 1/2 ≈ 0.196
        let x = Biquad::from_coeffs(rat(-1, 2), int(1), int(1), int(-1));
        assert_eq!(x.signum(), Ordering::Greater);
        // 5 − 2√6 ≈ 0.101 > 0; √3 − √2 − 1/3 ≈ −0.015
        assert_eq!(Biquad::from_coeffs(int(5), int(0), int(0), int(-2)).signum(), Ordering::Greater);
        assert_eq!(
            Biquad::from_coeffs(rat(-1, 3), int(-1), int(1), int(0)).signum(),
            Ordering::Less
        );
        let t = Biquad::from_coeffs(int(5), int(0), int(0), int(-2));
        assert!((t.to_f64() - (5.0 - 2.0 * 6f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn display() {
        let x = Biquad::from_coeffs(int(0), rat(1, 3), int(0), int(-1));
        assert_eq!(x.to_string(), "1/3*sqrt2-sqrt6");
        assert_eq!(Biquad::zero().to_string(), "0");
    }
}
