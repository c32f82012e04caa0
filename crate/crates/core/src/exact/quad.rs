use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{is_squarefree, BigRational};
use crate::{Error, Result};

/// a + b√d for a squarefree integer d ∉ {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    d: i64,
    a: BigRational,
    b: BigRational,
}

impl QuadExt {
    pub fn new(d: i64, a: BigRational, b: BigRational) -> Result<Self> {
        if d == 1 || !is_squarefree(d) {
            return Err(Error::BadDiscriminant(d));
        }
        Ok(QuadExt { d, a, b })
    }

    pub(crate) fn raw(d: i64, a: BigRational, b: BigRational) -> Self {
        debug_assert!(d != 1 && is_squarefree(d));
        QuadExt { d, a, b }
    }

    pub fn from_rational(d: i64, a: BigRational) -> Result<Self> {
        Self::new(d, a, BigRational::zero())
    }

    pub fn zero(d: i64) -> Self {
        Self::raw(d, BigRational::zero(), BigRational::zero())
    }

    pub fn one(d: i64) -> Self {
        Self::raw(d, BigRational::one(), BigRational::zero())
    }

    pub fn sqrt_d(d: i64) -> Result<Self> {
        Self::new(d, BigRational::zero(), BigRational::one())
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.d, self.a.clone(), -&self.b)
    }

    /// a² − d·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    /// |x|² in ℂ; only meaningful for imaginary fields.
    pub fn abs2(&self) -> Result<BigRational> {
        if self.d > 0 {
            return Err(Error::Unsupported(format!(
                "abs² of an element of a real field ℚ(√{})",
                self.d
            )));
        }
        Ok(self.norm())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::raw(self.d, &self.a * r, &self.b * r)
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self::raw(self.d, &self.a + r, self.b.clone())
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.d != o.d {
            Err(Error::MixedFields(self.d, o.d))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::raw(self.d, &self.a + &o.a, &self.b + &o.b))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::raw(self.d, &self.a - &o.a, &self.b - &o.b))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let d = BigRational::from_integer(BigInt::from(self.d));
        Ok(Self::raw(
            self.d,
            &self.a * &o.a + d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::raw(self.d, &self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        self.checked_mul(&o.inv()?)
    }

    /// Exact sign for real fields.
    pub fn signum(&self) -> Result<Ordering> {
        if self.d < 0 {
            return Err(Error::Unsupported("sign in an imaginary field".into()));
        }
        Ok(sign_of(&self.a, &self.b, &BigRational::from_integer(BigInt::from(self.d))))
    }

    pub fn cmp_real(&self, o: &Self) -> Result<Ordering> {
        self.checked_sub(o)?.signum()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.d > 0 {
            a + b * (self.d as f64).sqrt()
        } else {
            a
        }
    }
}

/// Sign of a + b√d, d > 0.
pub(crate) fn sign_of(a: &BigRational, b: &BigRational, d: &BigRational) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(d * b * b)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            root
        } else if (-&self.b).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else if self.b.is_negative() {
            write!(f, "{}{}", self.a, b)
        } else {
            write!(f, "{}+{}", self.a, b)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            /// Panics when the operands live in different fields.
            fn $m(self, o: &'a QuadExt) -> QuadExt {
                self.$checked(o).expect("quadratic arithmetic")
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &'a QuadExt) -> QuadExt {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::raw(self.d, -&self.a, -&self.b)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
    Conj,
    Norm,
    Abs2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadValue {
    Quad(QuadExt),
    Rational(BigRational),
}

pub fn quad_arith(op: QuadOp, lhs: &QuadExt, rhs: Option<&QuadExt>) -> Result<QuadValue> {
    let need = || rhs.ok_or_else(|| Error::Unsupported(format!("{op:?} needs two operands")));
    Ok(match op {
        QuadOp::Add => QuadValue::Quad(lhs.checked_add(need()?)?),
        QuadOp::Sub => QuadValue::Quad(lhs.checked_sub(need()?)?),
        QuadOp::Mul => QuadValue::Quad(lhs.checked_mul(need()?)?),
        QuadOp::Div => QuadValue::Quad(lhs.checked_div(need()?)?),
        QuadOp::Conj => QuadValue::Quad(lhs.conj()),
        QuadOp::Norm => QuadValue::Rational(lhs.norm()),
        QuadOp::Abs2 => QuadValue::Rational(lhs.abs2()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn q(d: i64, a: BigRational, b: BigRational) -> QuadExt {
        QuadExt::new(d, a, b).unwrap()
    }

    #[test]
    fn norm_of_one_plus_i() {
        let x = q(-1, rat(1, 1), rat(1, 1));
        assert_eq!(&x * &x.conj(), q(-1, rat(2, 1), rat(0, 1)));
        assert_eq!(x.abs2().unwrap(), rat(2, 1));
    }

    #[test]
    fn conj_is_involution() {
        let x = q(-2, rat(3, 7), rat(-5, 2));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn eisenstein_unit_norm() {
        let w = q(-3, rat(-1, 2), rat(1, 2));
        assert_eq!(w.norm(), rat(1, 1));
        // ω² + ω + 1 = 0
        let s = &(&w * &w) + &w;
        assert_eq!(s.add_rational(&rat(1, 1)), QuadExt::zero(-3));
    }

    #[test]
    fn errors() {
        let x = q(2, rat(1, 1), rat(1, 1));
        let y = q(-1, rat(1, 1), rat(0, 1));
        assert_eq!(x.checked_add(&y), Err(Error::MixedFields(2, -1)));
        assert_eq!(x.checked_div(&QuadExt::zero(2)), Err(Error::DivisionByZero));
        assert!(QuadExt::new(4, rat(1, 1), rat(1, 1)).is_err());
        assert!(QuadExt::new(1, rat(1, 1), rat(1, 1)).is_err());
        assert!(quad_arith(QuadOp::Mul, &x, None).is_err());
    }

    #[test]
    fn exact_sign() {
        // 3 − 2√2 > 0, 1 − √2 < 0, 7 − 5√2 < 0 (49 < 50)
        assert_eq!(q(2, rat(3, 1), rat(-2, 1)).signum().unwrap(), Ordering::Greater);
        assert_eq!(q(2, rat(1, 1), rat(-1, 1)).signum().unwrap(), Ordering::Less);
        assert_eq!(q(2, rat(7, 1), rat(-5, 1)).signum().unwrap(), Ordering::Less);
        assert_eq!(q(2, rat(-7, 1), rat(5, 1)).signum().unwrap(), Ordering::Greater);
    }

    #[test]
    fn div_roundtrip() {
        let x = q(5, rat(1, 2), rat(1, 2));
        let y = q(5, rat(-3, 1), rat(2, 7));
        assert_eq!(&(&x / &y) * &y, x);
    }

    #[test]
    fn display() {
        assert_eq!(q(2, rat(0, 1), rat(1, 1)).to_string(), "sqrt(2)");
        assert_eq!(q(-3, rat(-1, 2), rat(1, 2)).to_string(), "-1/2+1/2*sqrt(-3)");
        assert_eq!(q(2, rat(1, 1), rat(-1, 1)).to_string(), "1-sqrt(2)");
    }
}
