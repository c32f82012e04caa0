use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::interval::{enclose_quad, sqrt_rational, Interval};
use crate::exact::{int, is_squarefree, parse_expr, radicands, rat, BigRational, BoundaryField, Parsed, QuadExt};
use crate::{Error, Result};

/// A real quadratic irrationality, or a complex number whose real and
/// imaginary parts are real quadratic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetNumber {
    Real(QuadExt),
    Complex { re: QuadExt, im: QuadExt },
}

fn real_part(q: QuadExt) -> Result<QuadExt> {
    if q.d() < 0 {
        return Err(Error::Parse(format!("{q} is not real; write complex targets as re,im")));
    }
    Ok(q)
}

fn parse_real(s: &str) -> Result<QuadExt> {
    let t = s.trim();
    if matches!(t, "golden" | "phi" | "φ") {
        return Ok(TargetNumber::golden_value());
    }
    let d = match radicands(t)?.as_slice() {
        [] => 5,
        [d] if *d > 0 => *d,
        [d] => return Err(Error::Parse(format!("sqrt({d}) in a real target"))),
        _ => return Err(Error::Unsupported(format!("'{t}' mixes square roots"))),
    };
    if !is_squarefree(d) {
        return Err(Error::BadDiscriminant(d));
    }
    match parse_expr(t, d)? {
        Parsed::Value(v) => real_part(QuadExt::new(v.d(), v.a().clone(), v.b().clone())?),
        Parsed::Infinity => Err(Error::Parse("infinite target".into())),
    }
}

fn enclose_part(x: &QuadExt, p: u32) -> Interval {
    if x.b().is_zero() {
        Interval::point(x.a().clone())
    } else {
        enclose_quad(x, p).expect("real part")
    }
}

impl TargetNumber {
    fn golden_value() -> QuadExt {
        QuadExt::new(5, rat(1, 2), rat(1, 2)).unwrap()
    }

    pub fn golden() -> Self {
        TargetNumber::Real(Self::golden_value())
    }

    /// √n for squarefree n > 1.
    pub fn sqrt(n: i64) -> Result<Self> {
        if n <= 1 {
            return Err(Error::BadDiscriminant(n));
        }
        Ok(TargetNumber::Real(QuadExt::sqrt_d(n)?))
    }

    pub fn real(x: QuadExt) -> Result<Self> {
        Ok(TargetNumber::Real(real_part(x)?))
    }

    pub fn complex(re: QuadExt, im: QuadExt) -> Result<Self> {
        Ok(TargetNumber::Complex { re: real_part(re)?, im: real_part(im)? })
    }

    /// `golden`, a real expression such as `(1+sqrt5)/2`, or `re,im`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((a, b)) => Self::complex(parse_real(a)?, parse_real(b)?),
            None => Ok(TargetNumber::Real(parse_real(s)?)),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, TargetNumber::Real(_))
    }

    pub fn re(&self) -> &QuadExt {
        match self {
            TargetNumber::Real(x) | TargetNumber::Complex { re: x, .. } => x,
        }
    }

    pub fn im(&self) -> Option<&QuadExt> {
        match self {
            TargetNumber::Real(_) => None,
            TargetNumber::Complex { im, .. } => Some(im),
        }
    }

    /// Enclosures of the real and imaginary parts with p-bit square roots;
    /// nested as p grows.
    pub fn enclose(&self, p: u32) -> (Interval, Interval) {
        let im = self.im().map_or_else(|| Interval::point(int(0)), |x| enclose_part(x, p));
        (enclose_part(self.re(), p), im)
    }

    /// Membership in K decided on the exact description.
    pub fn lies_in(&self, field: BoundaryField) -> bool {
        let rational = |x: &QuadExt| x.b().is_zero();
        let im_zero = self.im().map_or(true, QuadExt::is_zero);
        match field {
            BoundaryField::Rationals => im_zero && rational(self.re()),
            BoundaryField::Sqrt2Rationals => {
                im_zero && (self.re().is_zero() || (self.re().d() == 2 && self.re().a().is_zero()))
            }
            f => {
                let k = -f.quad_d();
                let im_ok = self.im().map_or(true, |y| y.is_zero() || (rational(y) && k == 1) || (y.d() == k && y.a().is_zero()));
                rational(self.re()) && im_ok
            }
        }
    }

    pub fn require_outside(&self, field: BoundaryField) -> Result<()> {
        if self.lies_in(field) {
            return Err(Error::Unsupported(format!("target {self} lies in {}", field.name())));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re().to_f64(), self.im().map_or(0.0, QuadExt::to_f64))
    }
}

impl FromStr for TargetNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for TargetNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetNumber::Real(x) => write!(f, "{x}"),
            TargetNumber::Complex { re, im } => write!(f, "{re},{im}"),
        }
    }
}

/// √|d| enclosure for the imaginary unit scale of ℚ(√d), d < 0.
pub(crate) fn imag_scale(d: i64, p: u32) -> Interval {
    sqrt_rational(&BigRational::from_integer((-d).into()), p).expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(TargetNumber::parse("golden").unwrap(), TargetNumber::parse("(1+sqrt5)/2").unwrap());
        assert_eq!(TargetNumber::parse("sqrt(2)").unwrap(), TargetNumber::sqrt(2).unwrap());
        let c = TargetNumber::parse("1/3, sqrt3").unwrap();
        assert!(!c.is_real());
        assert!(TargetNumber::parse("sqrt2+sqrt3").is_err());
        assert!(TargetNumber::parse("i").is_err());
        let g = TargetNumber::golden();
        assert_eq!(TargetNumber::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn membership() {
        let s2 = TargetNumber::sqrt(2).unwrap();
        assert!(!s2.lies_in(BoundaryField::Rationals));
        assert!(s2.lies_in(BoundaryField::Sqrt2Rationals));
        assert!(TargetNumber::parse("3/sqrt2").unwrap().lies_in(BoundaryField::Sqrt2Rationals));
        assert!(!TargetNumber::golden().lies_in(BoundaryField::Sqrt2Rationals));
        assert!(TargetNumber::parse("1/2").unwrap().lies_in(BoundaryField::Rationals));
        let e = TargetNumber::parse("-1/2, sqrt3/2").unwrap();
        assert!(e.lies_in(BoundaryField::Eisenstein));
        assert!(!e.lies_in(BoundaryField::Gaussian));
        assert!(TargetNumber::parse("1,2").unwrap().lies_in(BoundaryField::Gaussian));
        assert!(TargetNumber::parse("0,sqrt2").unwrap().lies_in(BoundaryField::SqrtMinus2));
        assert!(s2.require_outside(BoundaryField::Sqrt2Rationals).is_err());
    }

    #[test]
    fn enclosures_nest() {
        let g = TargetNumber::golden();
        let mut prev = g.enclose(4).0;
        for p in [8, 16, 64, 256] {
            let e = g.enclose(p).0;
            assert!(prev.contains_interval(&e));
            assert!(e.width() < prev.width());
            prev = e;
        }
    }
}
