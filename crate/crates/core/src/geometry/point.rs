use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::json;

use super::space::{spec_ref, SpaceCase};
use crate::exact::{lcm, BigRational, QuadExt};
use crate::{Error, Result};

/// Point of the plane P, stored with all l ambient coordinates in ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub coords: Vec<QuadExt>,
}

impl PlanePoint {
    pub fn from_rationals(xs: &[BigRational]) -> Self {
        PlanePoint { coords: xs.iter().map(|x| QuadExt::from_rational(2, x.clone()).unwrap()).collect() }
    }

    pub fn rational_coords(&self) -> Option<Vec<BigRational>> {
        self.coords.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Exact check of the plane equation (and W when present).
    pub fn on_plane(&self, case: SpaceCase) -> bool {
        let spec = spec_ref(case);
        if self.coords.len() != spec.dim {
            return false;
        }
        let mut lhs = QuadExt::zero(2);
        let mut sum = QuadExt::zero(2);
        for ((x, f), m) in self.coords.iter().zip(&spec.foot).zip(&spec.normal) {
            lhs = &lhs + &x.add_rational(&-f).scale(m);
            sum = &sum + x;
        }
        lhs.is_zero() && (!spec.in_w || sum == QuadExt::one(2))
    }
}

/// Rational point (p₁, …, p_l)/q of a sphere, p primitive and q > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpherePoint {
    case: SpaceCase,
    p: Vec<BigInt>,
    q: BigInt,
}

impl SpherePoint {
    /// Checks primitivity, p·p = k·q² and, for the III cases, Σpᵢ = q.
    pub fn new(case: SpaceCase, p: Vec<BigInt>, q: BigInt) -> Result<Self> {
        let spec = spec_ref(case);
        let bad = |m: &str| Err(Error::Invariant(format!("{case} point {p:?}/{q}: {m}")));
        if p.len() != spec.dim {
            return bad("wrong dimension");
        }
        if !q.is_positive() {
            return bad("q must be positive");
        }
        let g = p.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        if g != BigInt::from(1) {
            return bad("p is not primitive");
        }
        let pp: BigInt = p.iter().map(|x| x * x).sum();
        if pp != BigInt::from(spec.k) * &q * &q {
            return bad("not on the sphere");
        }
        if spec.in_w && p.iter().sum::<BigInt>() != q {
            return bad("Σpᵢ ≠ q");
        }
        Ok(SpherePoint { case, p, q })
    }

    pub fn from_coords(case: SpaceCase, xs: &[BigRational]) -> Result<Self> {
        let q = xs.iter().fold(BigInt::from(1), |l, x| lcm(&l, x.denom()));
        let p = xs.iter().map(|x| x.numer() * (&q / x.denom())).collect();
        Self::new(case, p, q)
    }

    /// The base point n = Φ(∞).
    pub fn base(case: SpaceCase) -> Self {
        Self::from_coords(case, &spec_ref(case).base).expect("n is a rational sphere point")
    }

    pub fn case(&self) -> SpaceCase {
        self.case
    }

    pub fn p(&self) -> &[BigInt] {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn height(&self) -> &BigInt {
        &self.q
    }

    pub fn is_base(&self) -> bool {
        *self == Self::base(self.case)
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.p.iter().map(|x| BigRational::new(x.clone(), self.q.clone())).collect()
    }

    /// Ordering by height, then lexicographically by p.
    pub fn sort_key(&self) -> (BigInt, Vec<BigInt>) {
        (self.q.clone(), self.p.clone())
    }

    /// Reads "(p1,…,pl)/q" or "(x1,…,xl)" with rational entries.
    pub fn parse(case: SpaceCase, s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(|| Error::Parse(format!("expected '(' in '{s}'")))?;
        let close = t.rfind(')').ok_or_else(|| Error::Parse(format!("expected ')' in '{s}'")))?;
        if open != 0 || close < open {
            return Err(Error::Parse(format!("malformed point '{s}'")));
        }
        let rest = &t[close + 1..];
        let den: BigRational = if rest.is_empty() {
            BigRational::from_integer(1.into())
        } else {
            let r = rest.strip_prefix('/').ok_or_else(|| Error::Parse(format!("malformed point '{s}'")))?;
            parse_rat(r)?
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let xs = t[1..close].split(',').map(|x| parse_rat(x).map(|v| v / &den)).collect::<Result<Vec<_>>>()?;
        let spec = spec_ref(case);
        if xs.len() != spec.dim {
            return Err(Error::Parse(format!("{case} points have {} coordinates", spec.dim)));
        }
        Self::from_coords(case, &xs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "case": self.case.name(),
            "p": self.p.iter().map(big_json).collect::<Vec<_>>(),
            "q": big_json(&self.q),
            "height": big_json(&self.q),
        })
    }
}

/// JSON number when it fits in i64, decimal string otherwise.
pub fn big_json(x: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("bad rational '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.replace('−', "-").parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        write!(f, "({})/{}", parts.join(","), self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn base_points() {
        assert_eq!(SpherePoint::base(SpaceCase::S1I).to_string(), "(0,1)/1");
        assert_eq!(SpherePoint::base(SpaceCase::S2II).to_string(), "(0,1,1)/1");
        assert_eq!(SpherePoint::base(SpaceCase::S2III).to_string(), "(0,0,0,1)/1");
    }

    #[test]
    fn invariants_checked() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(SpherePoint::new(SpaceCase::S1I, b(&[4, 3]), 5.into()).is_ok());
        assert!(SpherePoint::new(SpaceCase::S1I, b(&[8, 6]), 10.into()).is_err());
        assert!(SpherePoint::new(SpaceCase::S1I, b(&[4, 4]), 5.into()).is_err());
        assert!(SpherePoint::new(SpaceCase::S1III, b(&[2, 2, -1]), 3.into()).is_ok());
        assert!(SpherePoint::new(SpaceCase::S1III, b(&[2, -1, 2]), 3.into()).is_ok());
        assert!(SpherePoint::new(SpaceCase::S1III, b(&[-2, 2, 1]), 3.into()).is_err());
    }

    #[test]
    fn parse_forms() {
        let p = SpherePoint::parse(SpaceCase::S1I, "(4/5, 3/5)").unwrap();
        assert_eq!(p, SpherePoint::parse(SpaceCase::S1I, "(4,3)/5").unwrap());
        assert_eq!(p.coords(), vec![rat(4, 5), rat(3, 5)]);
        let p = SpherePoint::parse(SpaceCase::S2III, "(1/2,-1/2,1/2,1/2)").unwrap();
        assert_eq!(p.to_string(), "(1,-1,1,1)/2");
        assert!(SpherePoint::parse(SpaceCase::S1I, "(1,1)/1").is_err());
        assert!(SpherePoint::parse(SpaceCase::S1I, "(1,0,0)/1").is_err());
    }

    #[test]
    fn plane_membership() {
        let x = PlanePoint::from_rationals(&[rat(1, 2), rat(1, 2), rat(0, 1)]);
        assert!(x.on_plane(SpaceCase::S1III));
        let y = PlanePoint::from_rationals(&[rat(1, 2), rat(1, 2), rat(1, 1)]);
        assert!(!y.on_plane(SpaceCase::S1III));
    }
}
