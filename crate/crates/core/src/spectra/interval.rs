use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{BigRational, QuadExt};
use crate::geometry::Scalar;
use crate::{Error, Result};

/// Closed interval [lo, hi] with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << p as usize
}

fn floor_dyadic(x: &BigRational, p: u32) -> BigRational {
    BigRational::new((x * BigRational::from_integer(pow2(p))).floor().to_integer(), pow2(p))
}

fn ceil_dyadic(x: &BigRational, p: u32) -> BigRational {
    BigRational::new((x * BigRational::from_integer(pow2(p))).ceil().to_integer(), pow2(p))
}

/// Enclosure of √x for x ≥ 0 with dyadic endpoints of p bits.
pub fn sqrt_rational(x: &BigRational, p: u32) -> Result<Interval> {
    if x.is_negative() {
        return Err(Error::Invariant(format!("square root of negative {x}")));
    }
    let scale = BigRational::from_integer(pow2(2 * p));
    let lo_n = (x * &scale).floor().to_integer();
    let hi_n = (x * &scale).ceil().to_integer();
    let lo = lo_n.sqrt();
    let mut hi = hi_n.sqrt();
    if &hi * &hi < hi_n {
        hi += 1;
    }
    Ok(Interval { lo: BigRational::new(lo, pow2(p)), hi: BigRational::new(hi, pow2(p)) })
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    /// Ordering when the intervals are separated.
    pub fn try_cmp(&self, o: &Interval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if o.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self == o {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Widens to dyadic endpoints with p fractional bits.
    pub fn round_out(&self, p: u32) -> Self {
        Interval { lo: floor_dyadic(&self.lo, p), hi: ceil_dyadic(&self.hi, p) }
    }

    pub fn widen(&self, r: &BigRational) -> Self {
        Interval { lo: &self.lo - r, hi: &self.hi + r }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_negative() {
            Interval { lo: &self.hi * r, hi: &self.lo * r }
        } else {
            Interval { lo: &self.lo * r, hi: &self.hi * r }
        }
    }

    pub fn sqr(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = std::cmp::max(-&self.lo, self.hi.clone());
            Interval { lo: BigRational::zero(), hi: &m * &m }
        } else {
            let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
            if a <= b {
                Interval { lo: a, hi: b }
            } else {
                Interval { lo: b, hi: a }
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Enclosure of √x over the interval, p bits.
    pub fn sqrt(&self, p: u32) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::Invariant(format!("square root of negative interval {self}")));
        }
        let lo = if self.lo.is_negative() { BigRational::zero() } else { self.lo.clone() };
        Ok(Interval { lo: sqrt_rational(&lo, p)?.lo, hi: sqrt_rational(&self.hi, p)?.hi })
    }

    /// Hull-wise maximum: encloses max(x, y) for x ∈ self, y ∈ o.
    pub fn max(&self, o: &Self) -> Self {
        Interval { lo: std::cmp::max(&self.lo, &o.lo).clone(), hi: std::cmp::max(&self.hi, &o.hi).clone() }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Both endpoints rounded to `sig` significant digits, when they agree.
    pub fn decimal(&self, sig: usize) -> Option<String> {
        let a = to_significant(&self.lo, sig);
        (a == to_significant(&self.hi, sig)).then_some(a)
    }
}

/// Enclosure of a + b√d (d > 0).
pub fn enclose_quad(x: &QuadExt, p: u32) -> Result<Interval> {
    if x.d() < 0 {
        return Err(Error::Unsupported(format!("real enclosure of {x}")));
    }
    let s = sqrt_rational(&BigRational::from_integer(x.d().into()), p)?;
    Ok(s.scale(x.b()).add(&Interval::point(x.a().clone())))
}

/// Decimal of x rounded half away from zero to `sig` significant digits.
pub fn to_significant(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // e with 10^e ≤ |x| < 10^(e+1)
    let mut e: i64 = (ax.numer().to_string().len() as i64) - (ax.denom().to_string().len() as i64);
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(k as u32))
        } else {
            BigRational::new(1.into(), BigInt::from(10).pow((-k) as u32))
        }
    };
    while pow(e) > ax {
        e -= 1;
    }
    while pow(e + 1) <= ax {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &ax * pow(shift);
    let half = BigRational::new(1.into(), 2.into());
    let mut digits = (scaled + half).floor().to_integer();
    let mut shift = shift;
    if digits.to_string().len() > sig {
        digits = digits.div_floor(&BigInt::from(10));
        shift -= 1;
    }
    let s = digits.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) < s.len() {
        let k = s.len() - shift as usize;
        format!("{}.{}", &s[..k], &s[k..])
    } else {
        format!("0.{}{s}", "0".repeat(shift as usize - s.len()))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl Scalar for Interval {
    fn from_rat(r: &BigRational) -> Self {
        Interval::point(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        Interval::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Interval::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Interval::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Interval::div(self, o)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.width();
        let digits = if w.is_zero() { 30 } else { 20 };
        write!(f, "[{}, {}]", to_significant(&self.lo, digits), to_significant(&self.hi, digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn sqrt_encloses() {
        for p in [8, 64, 200] {
            let s = sqrt_rational(&int(2), p).unwrap();
            assert!(&s.lo * &s.lo <= int(2) && int(2) <= &s.hi * &s.hi);
            assert!(s.width() <= BigRational::new(1.into(), pow2(p)));
        }
        assert_eq!(sqrt_rational(&int(9), 10).unwrap(), Interval::point(int(3)));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(to_significant(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_significant(&rat(2, 3), 3), "0.667");
        assert_eq!(to_significant(&rat(9995, 1000), 3), "10.0");
        assert_eq!(to_significant(&int(-12345), 2), "-12000");
        let s5 = sqrt_rational(&int(5), 128).unwrap();
        assert_eq!(s5.decimal(30).unwrap(), "2.23606797749978969640917366873");
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(rat(-1, 2), rat(3, 2));
        let b = Interval::new(rat(1, 3), rat(2, 3));
        assert!(a.mul(&b).contains(&rat(-1, 3)));
        assert!(a.sqr().contains(&int(0)));
        assert!(a.recip().is_err());
        assert_eq!(b.recip().unwrap(), Interval::new(rat(3, 2), int(3)));
        assert_eq!(a.round_out(1), Interval::new(rat(-1, 2), rat(3, 2)));
    }
}
