use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exact::{int, rat, BigRational, Biquad, BoundaryField};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceCase {
    S1I,
    S1II,
    S1III,
    S2I,
    S2II,
    S2III,
}

impl SpaceCase {
    pub const ALL: [SpaceCase; 6] =
        [SpaceCase::S1I, SpaceCase::S1II, SpaceCase::S1III, SpaceCase::S2I, SpaceCase::S2II, SpaceCase::S2III];

    pub fn name(self) -> &'static str {
        match self {
            SpaceCase::S1I => "S1_I",
            SpaceCase::S1II => "S1_II",
            SpaceCase::S1III => "S1_III",
            SpaceCase::S2I => "S2_I",
            SpaceCase::S2II => "S2_II",
            SpaceCase::S2III => "S2_III",
        }
    }

    /// Kebab-case name used on the command line.
    pub fn slug(self) -> String {
        self.name().to_ascii_lowercase().replace('_', "-")
    }

    pub fn is_circle(self) -> bool {
        matches!(self, SpaceCase::S1I | SpaceCase::S1II | SpaceCase::S1III)
    }

    pub fn field(self) -> BoundaryField {
        match self {
            SpaceCase::S1I | SpaceCase::S1II => BoundaryField::Sqrt2Rationals,
            SpaceCase::S1III => BoundaryField::Rationals,
            SpaceCase::S2I => BoundaryField::Gaussian,
            SpaceCase::S2II => BoundaryField::SqrtMinus2,
            SpaceCase::S2III => BoundaryField::Eisenstein,
        }
    }
}

impl fmt::Display for SpaceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.to_ascii_lowercase().replace(['_', ' '], "-");
        Ok(match t.as_str() {
            "s1-i" => SpaceCase::S1I,
            "s1-ii" => SpaceCase::S1II,
            "s1-iii" => SpaceCase::S1III,
            "s2-i" => SpaceCase::S2I,
            "s2-ii" => SpaceCase::S2II,
            "s2-iii" => SpaceCase::S2III,
            _ => return Err(Error::Parse(format!("unknown case '{s}'"))),
        })
    }
}

/// Sphere S = {x : |x − c| = R} (inside W = {Σxᵢ = 1} when present), base
/// point n, and the plane P through `foot` orthogonal to n − c.
#[derive(Clone, Debug)]
pub struct SpaceSpec {
    pub case: SpaceCase,
    pub dim: usize,
    pub in_w: bool,
    pub center: Vec<BigRational>,
    pub radius: Biquad,
    pub radius_sq: BigRational,
    pub base: Vec<BigRational>,
    pub foot: Vec<BigRational>,
    pub normal: Vec<BigRational>,
    pub d: Biquad,
    pub d_sq: BigRational,
    pub dilation: Biquad,
    pub dilation_sq: BigRational,
    /// 2RD.
    pub two_rd: BigRational,
    /// p·p = k·q² for primitive points.
    pub k: i64,
    pub field: BoundaryField,
}

fn v(xs: &[(i64, i64)]) -> Vec<BigRational> {
    xs.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(int(0), |s, (x, y)| s + x * y)
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl SpaceSpec {
    pub fn case(&self) -> SpaceCase {
        self.case
    }

    /// s = 2R/C, the factor in ρ = R/(1 + s·H).
    pub fn s_factor(&self) -> Biquad {
        let cinv = self.dilation.inv().expect("C ≠ 0");
        (&self.radius * &cinv).scale(&int(2))
    }

    /// Exact checks of the sphere data: n ∈ S, |n − foot| = D, RD = two_rd/2,
    /// foot ∈ W, and the normal lies in W's direction.
    pub fn validate(&self) -> Result<()> {
        let e = |m: &str| Err(Error::Invariant(format!("{}: {m}", self.case)));
        let nc = sub(&self.base, &self.center);
        if dot(&nc, &nc) != self.radius_sq {
            return e("|n − c|² ≠ R²");
        }
        if nc != self.normal {
            return e("normal ≠ n − c");
        }
        let nf = sub(&self.base, &self.foot);
        if dot(&nf, &nf) != self.d_sq {
            return e("|n − foot|² ≠ D²");
        }
        // foot = n − (D/R)(n − c): n − foot is parallel to n − c
        let ratio = dot(&nf, &nc) / dot(&nc, &nc);
        if nf.iter().zip(&nc).any(|(a, b)| a != &(b * &ratio)) {
            return e("foot is not the projection of n");
        }
        let rd = &self.radius * &self.d;
        if rd.as_rational() != Some(&self.two_rd / int(2)) {
            return e("RD is not the tabulated rational");
        }
        if &self.radius * &self.radius != Biquad::from_rational(self.radius_sq.clone())
            || &self.d * &self.d != Biquad::from_rational(self.d_sq.clone())
            || &self.dilation * &self.dilation != Biquad::from_rational(self.dilation_sq.clone())
        {
            return e("squared constants disagree");
        }
        if self.in_w {
            let s: BigRational = self.foot.iter().sum();
            let t: BigRational = self.normal.iter().sum();
            if s != int(1) || t != int(0) {
                return e("plane not inside W");
            }
        }
        Ok(())
    }
}

pub fn space_spec(case: SpaceCase) -> SpaceSpec {
    spec_ref(case).clone()
}

/// Shared, lazily built constants.
pub fn spec_ref(case: SpaceCase) -> &'static SpaceSpec {
    static SPECS: OnceLock<Vec<SpaceSpec>> = OnceLock::new();
    let all = SPECS.get_or_init(|| SpaceCase::ALL.iter().map(|&c| build(c)).collect());
    &all[case as usize]
}

fn build(case: SpaceCase) -> SpaceSpec {
    let z = || int(0);
    let b = Biquad::from_coeffs;
    let (dim, in_w, center, base, radius, radius_sq, d, d_sq, dilation, dilation_sq, k) = match case {
        SpaceCase::S1I => (
            2, false, v(&[(0, 1), (0, 1)]), v(&[(0, 1), (1, 1)]),
            Biquad::one(), int(1), Biquad::one(), int(1), Biquad::sqrt2(), int(2), 1,
        ),
        SpaceCase::S1II => (
            2, false, v(&[(0, 1), (0, 1)]), v(&[(1, 1), (1, 1)]),
            Biquad::sqrt2(), int(2), Biquad::sqrt2(), int(2), Biquad::from_rational(int(2)), int(4), 2,
        ),
        SpaceCase::S1III => (
            3, true, v(&[(1, 3), (1, 3), (1, 3)]), v(&[(0, 1), (0, 1), (1, 1)]),
            // √(2/3) = √6/3, √(3/2) = √6/2
            b(z(), z(), z(), rat(1, 3)), rat(2, 3), b(z(), z(), z(), rat(1, 2)), rat(3, 2),
            Biquad::sqrt2(), int(2), 1,
        ),
        SpaceCase::S2I => (
            3, false, v(&[(0, 1), (0, 1), (0, 1)]), v(&[(0, 1), (0, 1), (1, 1)]),
            Biquad::one(), int(1), Biquad::one(), int(1), Biquad::sqrt2(), int(2), 1,
        ),
        SpaceCase::S2II => (
            3, false, v(&[(0, 1), (0, 1), (0, 1)]), v(&[(0, 1), (1, 1), (1, 1)]),
            Biquad::sqrt2(), int(2), b(z(), rat(1, 2), z(), z()), rat(1, 2), Biquad::sqrt2(), int(2), 2,
        ),
        SpaceCase::S2III => (
            4, true, v(&[(1, 4), (1, 4), (1, 4), (1, 4)]), v(&[(0, 1), (0, 1), (0, 1), (1, 1)]),
            b(z(), z(), rat(1, 2), z()), rat(3, 4), b(z(), z(), rat(2, 3), z()), rat(4, 3),
            Biquad::sqrt2(), int(2), 1,
        ),
    };
    let normal = sub(&base, &center);
    let rd = (&radius * &d).as_rational().expect("RD rational");
    // foot = n − (D/R)(n − c) with D/R = D²/(RD)
    let t = &d_sq / &rd;
    let foot = base.iter().zip(&normal).map(|(n, m)| n - m * &t).collect();
    SpaceSpec {
        case,
        dim,
        in_w,
        center,
        radius,
        radius_sq,
        base,
        foot,
        normal,
        d,
        d_sq,
        dilation,
        dilation_sq,
        two_rd: rd * int(2),
        k,
        field: case.field(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_validate() {
        for c in SpaceCase::ALL {
            space_spec(c).validate().unwrap();
        }
    }

    #[test]
    fn table_values() {
        let s = space_spec(SpaceCase::S1I);
        assert_eq!((s.radius.clone(), s.d.clone(), s.dilation.clone()), (Biquad::one(), Biquad::one(), Biquad::sqrt2()));
        assert_eq!(s.base, v(&[(0, 1), (1, 1)]));
        let s = space_spec(SpaceCase::S2III);
        assert_eq!(s.radius_sq, rat(3, 4));
        assert_eq!(s.d_sq, rat(4, 3));
        assert_eq!(s.center, v(&[(1, 4); 4]));
        assert_eq!(s.foot, v(&[(1, 3), (1, 3), (1, 3), (0, 1)]));
        assert_eq!(space_spec(SpaceCase::S2II).foot, v(&[(0, 1), (1, 2), (1, 2)]));
        assert_eq!(space_spec(SpaceCase::S1III).foot, v(&[(1, 2), (1, 2), (0, 1)]));
        let twords: Vec<_> = SpaceCase::ALL.iter().map(|&c| space_spec(c).two_rd).collect();
        assert_eq!(twords, vec![int(2), int(4), int(2), int(2), int(2), int(2)]);
    }

    #[test]
    fn names_parse() {
        for c in SpaceCase::ALL {
            assert_eq!(c.slug().parse::<SpaceCase>().unwrap(), c);
            assert_eq!(c.name().parse::<SpaceCase>().unwrap(), c);
        }
        assert!("s3-i".parse::<SpaceCase>().is_err());
    }
}
