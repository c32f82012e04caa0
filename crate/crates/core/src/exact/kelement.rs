use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::expr::{parse_expr, Parsed};
use super::oint::{integral, omega_to_quad, quad_to_omega, OInt};
use super::quad::QuadExt;
use super::rational::{gcd_all, lcm, BigRational};
use crate::{Error, Result};

/// Boundary field K of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundaryField {
    Rationals,
    Sqrt2Rationals,
    Gaussian,
    SqrtMinus2,
    Eisenstein,
}

impl BoundaryField {
    pub const ALL: [BoundaryField; 5] = [
        BoundaryField::Rationals,
        BoundaryField::Sqrt2Rationals,
        BoundaryField::Gaussian,
        BoundaryField::SqrtMinus2,
        BoundaryField::Eisenstein,
    ];

    /// The d of the QuadExt values that carry elements of this set.
    pub fn quad_d(self) -> i64 {
        match self {
            BoundaryField::Rationals | BoundaryField::Sqrt2Rationals => 2,
            BoundaryField::Gaussian => -1,
            BoundaryField::SqrtMinus2 => -2,
            BoundaryField::Eisenstein => -3,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, BoundaryField::Rationals | BoundaryField::Sqrt2Rationals)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundaryField::Rationals => "Q",
            BoundaryField::Sqrt2Rationals => "sqrt2Q",
            BoundaryField::Gaussian => "Q(i)",
            BoundaryField::SqrtMinus2 => "Q(sqrt-2)",
            BoundaryField::Eisenstein => "Q(sqrt-3)",
        }
    }

    /// ω_K as a QuadExt.
    pub fn omega(self) -> Result<QuadExt> {
        if self.is_real() {
            return Err(Error::Unsupported(format!("ω for {}", self.name())));
        }
        Ok(omega_to_quad(self.quad_d(), &BigRational::zero(), &BigRational::one()))
    }
}

impl fmt::Display for BoundaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.to_ascii_lowercase().chars().filter(|c| !matches!(c, ' ' | '_')).collect();
        Ok(match t.as_str() {
            "q" => BoundaryField::Rationals,
            "sqrt2q" | "√2q" => BoundaryField::Sqrt2Rationals,
            "q(i)" | "qi" | "q(sqrt-1)" | "gaussian" => BoundaryField::Gaussian,
            "q(sqrt-2)" | "q(√-2)" | "qsqrt-2" => BoundaryField::SqrtMinus2,
            "q(sqrt-3)" | "q(√-3)" | "qsqrt-3" | "eisenstein" => BoundaryField::Eisenstein,
            _ => return Err(Error::Parse(format!("unknown boundary field '{s}'"))),
        })
    }
}

/// Parity class of a nonzero element of √2ℚ written as x/y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sqrt2Class {
    /// √2·p/q with q odd: x = √2p, y = q.
    QOdd,
    /// p/(√2·q) with p odd: x = p, y = √2q.
    POdd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Infinity,
    Ratio { p: BigInt, q: BigInt },
    Sqrt2 { p: BigInt, q: BigInt, class: Sqrt2Class },
    Imag { a: BigInt, b: BigInt, c: BigInt },
}

/// Canonical reduced point of a boundary field, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElement {
    field: BoundaryField,
    repr: Repr,
}

fn ratio_of(r: &BigRational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

impl KElement {
    pub fn infinity(field: BoundaryField) -> Self {
        KElement { field, repr: Repr::Infinity }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let (p, q) = ratio_of(r);
        KElement { field: BoundaryField::Rationals, repr: Repr::Ratio { p, q } }
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(&BigRational::new(p.into(), q.into())))
    }

    /// The element t of √2ℚ with √2·t = w.
    pub fn from_sqrt2_scaled(w: &BigRational) -> Self {
        let s = w / BigRational::from_integer(2.into());
        Self::sqrt2_from_coefficient(&s)
    }

    fn sqrt2_from_coefficient(s: &BigRational) -> Self {
        let (p, q1) = ratio_of(s);
        let repr = if q1.is_odd() {
            Repr::Sqrt2 { p, q: q1, class: Sqrt2Class::QOdd }
        } else {
            Repr::Sqrt2 { p, q: q1 / 2, class: Sqrt2Class::POdd }
        };
        KElement { field: BoundaryField::Sqrt2Rationals, repr }
    }

    /// u + vω in an imaginary field, reduced through Euclid in O_K.
    pub fn from_imag(field: BoundaryField, u: &BigRational, v: &BigRational) -> Result<Self> {
        if field.is_real() {
            return Err(Error::FieldMismatch { expected: "an imaginary field".into(), got: field.name().into() });
        }
        let d = field.quad_d();
        let den = lcm(u.denom(), v.denom());
        let alpha0 = OInt::new(d, u.numer() * (&den / u.denom()), v.numer() * (&den / v.denom()))?;
        let beta0 = OInt::new(d, den, BigInt::zero())?;
        let g = alpha0.gcd(&beta0);
        let alpha = alpha0.div_exact(&g).expect("gcd divides");
        let beta = beta0.div_exact(&g).expect("gcd divides");
        reduce_oint(field, &alpha, &beta)
    }

    /// α/β for coprime α, β ∈ O_K.
    pub fn from_oints(alpha: &OInt, beta: &OInt) -> Result<Self> {
        if alpha.d() != beta.d() {
            return Err(Error::MixedFields(alpha.d(), beta.d()));
        }
        reduce_oint(field_of_d(alpha.d())?, alpha, beta)
    }

    pub fn from_value(field: BoundaryField, v: &QuadExt) -> Result<Self> {
        match field {
            BoundaryField::Rationals => {
                let r = v.as_rational().ok_or_else(|| Error::NotInField("ℚ".into()))?;
                Ok(Self::from_rational(r))
            }
            BoundaryField::Sqrt2Rationals => canonicalize_sqrt2_rational(v),
            _ => {
                if v.d() != field.quad_d() {
                    return Err(Error::MixedFields(field.quad_d(), v.d()));
                }
                let (u, w) = quad_to_omega(v);
                Self::from_imag(field, &u, &w)
            }
        }
    }

    pub fn parse(field: BoundaryField, s: &str) -> Result<Self> {
        match parse_expr(s, field.quad_d())? {
            Parsed::Infinity => Ok(Self::infinity(field)),
            Parsed::Value(v) => Self::from_value(field, &v),
        }
    }

    pub fn field(&self) -> BoundaryField {
        self.field
    }

    pub fn is_infinite(&self) -> bool {
        self.repr == Repr::Infinity
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Ratio { p, q } => Some(BigRational::new(p.clone(), q.clone())),
            _ => None,
        }
    }

    pub fn sqrt2_parts(&self) -> Option<(&BigInt, &BigInt, Sqrt2Class)> {
        match &self.repr {
            Repr::Sqrt2 { p, q, class } => Some((p, q, *class)),
            _ => None,
        }
    }

    /// √2·t for t ∈ √2ℚ; always rational.
    pub fn sqrt2_scaled(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Sqrt2 { p, q, class: Sqrt2Class::QOdd } => Some(BigRational::new(p * 2, q.clone())),
            Repr::Sqrt2 { p, q, class: Sqrt2Class::POdd } => Some(BigRational::new(p.clone(), q.clone())),
            _ => None,
        }
    }

    /// (x, y) with t = x/y and x², y², √2xy coprime integers.
    pub fn xy(&self) -> Option<(QuadExt, QuadExt)> {
        let (p, q, class) = self.sqrt2_parts()?;
        let ip = BigRational::from_integer(p.clone());
        let iq = BigRational::from_integer(q.clone());
        Some(match class {
            Sqrt2Class::QOdd => (QuadExt::raw(2, BigRational::zero(), ip), QuadExt::raw(2, iq, BigRational::zero())),
            Sqrt2Class::POdd => (QuadExt::raw(2, ip, BigRational::zero()), QuadExt::raw(2, BigRational::zero(), iq)),
        })
    }

    pub fn triple(&self) -> Option<(&BigInt, &BigInt, &BigInt)> {
        match &self.repr {
            Repr::Imag { a, b, c } => Some((a, b, c)),
            _ => None,
        }
    }

    /// (u, v) with z = u + vω.
    pub fn omega_coords(&self) -> Option<(BigRational, BigRational)> {
        let (a, b, c) = self.triple()?;
        Some((BigRational::new(a.clone(), c.clone()), BigRational::new(b.clone(), c.clone())))
    }

    /// |α|² = |a + bω|²/c.
    pub fn alpha_norm(&self) -> Option<BigInt> {
        let (a, b, c) = self.triple()?;
        let n = OInt::new(self.field.quad_d(), a.clone(), b.clone()).ok()?.norm();
        Some(n / c)
    }

    pub fn value(&self) -> Result<QuadExt> {
        match &self.repr {
            Repr::Infinity => Err(Error::InfiniteElement),
            Repr::Ratio { p, q } => Ok(QuadExt::raw(2, BigRational::new(p.clone(), q.clone()), BigRational::zero())),
            Repr::Sqrt2 { p, q, class } => {
                let s = match class {
                    Sqrt2Class::QOdd => BigRational::new(p.clone(), q.clone()),
                    Sqrt2Class::POdd => BigRational::new(p.clone(), q * 2),
                };
                Ok(QuadExt::raw(2, BigRational::zero(), s))
            }
            Repr::Imag { .. } => {
                let (u, v) = self.omega_coords().unwrap();
                Ok(omega_to_quad(self.field.quad_d(), &u, &v))
            }
        }
    }

    pub fn height(&self) -> Result<BigInt> {
        match &self.repr {
            Repr::Infinity => Err(Error::InfiniteElement),
            Repr::Ratio { q, .. } => Ok(q * q),
            Repr::Sqrt2 { q, class: Sqrt2Class::QOdd, .. } => Ok(q * q),
            Repr::Sqrt2 { q, class: Sqrt2Class::POdd, .. } => Ok(q * q * 2),
            Repr::Imag { c, .. } => Ok(c.clone()),
        }
    }

    /// |z − w|².
    pub fn dist2(&self, o: &KElement) -> Result<BigRational> {
        if self.field != o.field {
            return Err(Error::FieldMismatch { expected: self.field.name().into(), got: o.field.name().into() });
        }
        let diff = self.value()? - o.value()?;
        if self.field.is_real() {
            Ok((&diff * &diff).as_rational().cloned().expect("square of an element of √2ℚ or ℚ"))
        } else {
            diff.abs2()
        }
    }

    /// The gcd condition of the representation: gcd(x², y², √2xy) = 1,
    /// gcd(p, q) = 1, or gcd(|α|², |β|², a, b) = 1 with c | |a+bω|².
    pub fn gcd_invariant_holds(&self) -> bool {
        match &self.repr {
            Repr::Infinity => true,
            Repr::Ratio { p, q } => p.gcd(q).is_one() && q.is_positive(),
            Repr::Sqrt2 { p, q, class } => {
                let two = BigInt::from(2);
                let (x2, y2, xy) = match class {
                    Sqrt2Class::QOdd => (p * p * &two, q * q, p * q * &two),
                    Sqrt2Class::POdd => (p * p, q * q * &two, p * q * &two),
                };
                let class_ok = match class {
                    Sqrt2Class::QOdd => q.is_odd(),
                    Sqrt2Class::POdd => p.is_odd(),
                };
                class_ok && q.is_positive() && p.gcd(q).is_one() && gcd_all([&x2, &y2, &xy]).is_one()
            }
            Repr::Imag { a, b, c } => {
                let n = OInt::new(self.field.quad_d(), a.clone(), b.clone()).unwrap().norm();
                c.is_positive() && (&n % c).is_zero() && gcd_all([&(&n / c), c, a, b]).is_one()
            }
        }
    }
}

pub fn height_k(z: &KElement) -> Result<BigInt> {
    z.height()
}

/// √2·s ↦ its class-tagged representation.
pub fn canonicalize_sqrt2_rational(r: &QuadExt) -> Result<KElement> {
    if r.d() != 2 || !r.a().is_zero() {
        return Err(Error::NotInField("√2ℚ".into()));
    }
    Ok(KElement::sqrt2_from_coefficient(r.b()))
}

pub(crate) fn reduce_oint(field: BoundaryField, alpha: &OInt, beta: &OInt) -> Result<KElement> {
    if beta.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ab = alpha.mul(&beta.conj());
    let c = beta.norm();
    let n = ab.norm();
    let an = alpha.norm();
    if !(&n % &c).is_zero() || &n / &c != an {
        return Err(Error::Invariant(format!("c ∤ |a+bω|² for {ab:?}, c = {c}")));
    }
    if !gcd_all([&an, &c, ab.a(), ab.b()]).is_one() {
        return Err(Error::NotReduced(format!(
            "gcd(|α|², |β|², a, b) = {} for α = {:?}, β = {:?}",
            gcd_all([&an, &c, ab.a(), ab.b()]),
            alpha,
            beta
        )));
    }
    Ok(KElement { field, repr: Repr::Imag { a: ab.a().clone(), b: ab.b().clone(), c } })
}

fn field_of_d(d: i64) -> Result<BoundaryField> {
    Ok(match d {
        -1 => BoundaryField::Gaussian,
        -2 => BoundaryField::SqrtMinus2,
        -3 => BoundaryField::Eisenstein,
        _ => return Err(Error::Unsupported(format!("ring of integers of ℚ(√{d})"))),
    })
}

/// α/β with α, β ∈ O_K coprime ↦ (a, b, c), a + bω = αβ^σ, c = |β|².
pub fn reduce_imag_quadratic(alpha: &QuadExt, beta: &QuadExt) -> Result<KElement> {
    if alpha.d() != beta.d() {
        return Err(Error::MixedFields(alpha.d(), beta.d()));
    }
    let field = field_of_d(alpha.d())?;
    let to_int = |x: &QuadExt| {
        let (u, v) = quad_to_omega(x);
        integral(x.d(), &u, &v).ok_or_else(|| Error::NotInField(format!("O_K of {}", field.name())))
    };
    reduce_oint(field, &to_int(alpha)?, &to_int(beta)?)
}

fn fmt_sqrt2(p: &BigInt, q: &BigInt, class: Sqrt2Class) -> String {
    let sign = if p.is_negative() { "-" } else { "" };
    let m = p.abs();
    match class {
        Sqrt2Class::QOdd => format!("{sign}sqrt2*{m}/{q}"),
        Sqrt2Class::POdd => format!("{sign}{m}/(sqrt2*{q})"),
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Infinity => f.write_str("inf"),
            Repr::Ratio { p, q } => write!(f, "{p}/{q}"),
            Repr::Sqrt2 { p, q, class } => f.write_str(&fmt_sqrt2(p, q, *class)),
            Repr::Imag { a, b, c } => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "({a}{sign}{}*w)/{c}", b.abs())
            }
        }
    }
}
