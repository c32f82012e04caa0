use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::point::{PlanePoint, SpherePoint};
use super::space::{dot, spec_ref, sub, SpaceCase, SpaceSpec};
use crate::exact::{int, BigRational, BoundaryField, KElement, QuadExt};
use crate::{Error, Result};

/// Minimal field interface shared by exact rationals and certified intervals.
pub trait Scalar: Clone {
    fn from_rat(r: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
}

impl Scalar for BigRational {
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
}

/// Affine rows (constant, coefficients) of φ in the parameters of K:
/// w = √2·t for √2ℚ, t for ℚ, (u, v) with z = u + vω otherwise.
fn phi_rows(case: SpaceCase) -> Vec<(i64, Vec<i64>)> {
    match case {
        SpaceCase::S1I => vec![(-1, vec![1]), (0, vec![0])],
        SpaceCase::S1II => vec![(-1, vec![1]), (1, vec![-1])],
        SpaceCase::S1III => vec![(0, vec![1]), (1, vec![-1]), (0, vec![0])],
        SpaceCase::S2I => vec![(0, vec![1, -1]), (-1, vec![1, 1]), (0, vec![0, 0])],
        SpaceCase::S2II => vec![(1, vec![0, -2]), (0, vec![1, 0]), (1, vec![-1, 0])],
        SpaceCase::S2III => vec![(1, vec![-1, 0]), (0, vec![1, -1]), (0, vec![0, 1]), (0, vec![0, 0])],
    }
}

pub fn phi_affine<T: Scalar>(case: SpaceCase, params: &[T]) -> Vec<T> {
    phi_rows(case)
        .into_iter()
        .map(|(c0, cs)| {
            cs.iter().zip(params).fold(T::from_rat(&int(c0)), |acc, (&c, s)| {
                if c == 0 {
                    acc
                } else {
                    acc.add(&s.mul(&T::from_rat(&int(c))))
                }
            })
        })
        .collect()
}

/// Rational parameters of z for [`phi_affine`].
pub fn k_params(z: &KElement) -> Result<Vec<BigRational>> {
    if z.is_infinite() {
        return Err(Error::InfiniteElement);
    }
    Ok(match z.field() {
        BoundaryField::Rationals => vec![z.to_rational().unwrap()],
        BoundaryField::Sqrt2Rationals => vec![z.sqrt2_scaled().unwrap()],
        _ => {
            let (u, v) = z.omega_coords().unwrap();
            vec![u, v]
        }
    })
}

fn check_field(z: &KElement, case: SpaceCase) -> Result<()> {
    if z.field() != case.field() {
        return Err(Error::FieldMismatch { expected: case.field().name().into(), got: z.field().name().into() });
    }
    Ok(())
}

pub fn phi_plane(z: &KElement, case: SpaceCase) -> Result<PlanePoint> {
    check_field(z, case)?;
    let x = phi_affine(case, &k_params(z)?);
    let p = PlanePoint::from_rationals(&x);
    if !p.on_plane(case) {
        return Err(Error::Invariant(format!("φ({z}) is not on the plane of {case}")));
    }
    Ok(p)
}

fn phi_rational(z: &KElement, case: SpaceCase) -> Result<Vec<BigRational>> {
    check_field(z, case)?;
    Ok(phi_affine(case, &k_params(z)?))
}

/// Parameters of the preimage of a plane point under φ.
pub fn phi_inverse_params(case: SpaceCase, x: &[BigRational]) -> Vec<BigRational> {
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::one();
    match case {
        SpaceCase::S1I | SpaceCase::S1II => vec![&x[0] + &one],
        SpaceCase::S1III => vec![x[0].clone()],
        SpaceCase::S2I => vec![(&x[0] + &x[1] + &one) * &half, (&x[1] + &one - &x[0]) * &half],
        SpaceCase::S2II => vec![x[1].clone(), (&one - &x[0]) * &half],
        SpaceCase::S2III => vec![&one - &x[0], x[2].clone()],
    }
}

fn element_from_params(case: SpaceCase, s: &[BigRational]) -> Result<KElement> {
    match case.field() {
        BoundaryField::Rationals => Ok(KElement::from_rational(&s[0])),
        BoundaryField::Sqrt2Rationals => Ok(KElement::from_sqrt2_scaled(&s[0])),
        f => KElement::from_imag(f, &s[0], &s[1]),
    }
}

/// Ψ(x) = n + 2RD(x − n)/|x − n|² over any scalar type.
pub fn reflect_generic<T: Scalar>(x: &[T], spec: &SpaceSpec) -> Result<Vec<T>> {
    let diff: Vec<T> = x.iter().zip(&spec.base).map(|(xi, ni)| xi.sub(&T::from_rat(ni))).collect();
    let n2 = diff.iter().fold(T::from_rat(&int(0)), |acc, d| acc.add(&d.mul(d)));
    let scale = T::from_rat(&spec.two_rd).div(&n2).map_err(|_| Error::ReflectionAtBase)?;
    Ok(diff.iter().zip(&spec.base).map(|(d, ni)| T::from_rat(ni).add(&d.mul(&scale))).collect())
}

fn reflect_rat(x: &[BigRational], spec: &SpaceSpec) -> Result<Vec<BigRational>> {
    if x == spec.base.as_slice() {
        return Err(Error::ReflectionAtBase);
    }
    reflect_generic(x, spec)
}

/// Ψ on vectors of ℚ(√2).
pub fn reflect_in_sphere(x: &[QuadExt], spec: &SpaceSpec) -> Result<Vec<QuadExt>> {
    if x.len() != spec.dim {
        return Err(Error::Invariant(format!("expected {} coordinates", spec.dim)));
    }
    let diff: Vec<QuadExt> = x.iter().zip(&spec.base).map(|(xi, ni)| xi.add_rational(&-ni)).collect();
    let n2 = diff.iter().fold(QuadExt::zero(2), |acc, d| &acc + &(d * d));
    if n2.is_zero() {
        return Err(Error::ReflectionAtBase);
    }
    let scale = QuadExt::from_rational(2, spec.two_rd.clone())?.checked_div(&n2)?;
    Ok(diff.iter().zip(&spec.base).map(|(d, ni)| (d * &scale).add_rational(ni)).collect())
}

/// The closed-form image (numerator vector, denominator) of each case.
pub fn closed_form(z: &KElement, case: SpaceCase) -> Result<(Vec<BigInt>, BigInt)> {
    check_field(z, case)?;
    if z.is_infinite() {
        return Err(Error::InfiniteElement);
    }
    let r = |q: &QuadExt| -> BigInt {
        let v = q.as_rational().expect("closed forms are rational");
        assert!(v.is_integer(), "closed forms are integral");
        v.to_integer()
    };
    Ok(match case {
        SpaceCase::S1I | SpaceCase::S1II => {
            let (x, y) = z.xy().unwrap();
            let s2 = QuadExt::sqrt_d(2)?;
            let xx = &x * &x;
            let yy = &y * &y;
            let sxy = &(&s2 * &x) * &y;
            let den = &(&xx - &sxy) + &yy;
            if case == SpaceCase::S1I {
                (vec![r(&(&sxy - &yy)), r(&(&xx - &sxy))], r(&den))
            } else {
                let two_sxy = sxy.scale(&int(2));
                (vec![r(&(&xx - &yy)), r(&(&(&xx - &two_sxy) + &yy))], r(&den))
            }
        }
        SpaceCase::S1III => {
            let t = z.to_rational().unwrap();
            let (p, q) = (t.numer().clone(), t.denom().clone());
            (vec![&p * &q, &q * &q - &p * &q, &p * &p - &p * &q], &p * &p + &q * &q - &p * &q)
        }
        _ => {
            let (a, b, c) = z.triple().unwrap();
            let big_a = z.alpha_norm().unwrap();
            match case {
                SpaceCase::S2I => (vec![a - b, a + b - c, &big_a - a - b], &big_a + c - a - b),
                SpaceCase::S2II => {
                    let two = BigInt::from(2);
                    (
                        vec![c - b * &two, &big_a - b * &two, &big_a + c - (a + b) * &two],
                        &big_a + c - (a + b * &two),
                    )
                }
                _ => (vec![c - a, a - b, b.clone(), &big_a - a], &big_a + c - a),
            }
        }
    })
}

/// Φ = Ψ∘φ, cross-checked against the closed form.
pub fn map_to_sphere(z: &KElement, case: SpaceCase) -> Result<SpherePoint> {
    check_field(z, case)?;
    if z.is_infinite() {
        return Ok(SpherePoint::base(case));
    }
    let spec = spec_ref(case);
    let x = phi_rational(z, case)?;
    let y = reflect_rat(&x, spec)?;
    let pt = SpherePoint::from_coords(case, &y)?;
    let (num, den) = closed_form(z, case)?;
    if num != pt.p() || &den != pt.q() {
        return Err(Error::Invariant(format!(
            "Φ({z}) = {pt} but the closed form gives {num:?}/{den} on {case}"
        )));
    }
    Ok(pt)
}

/// Inverse height read off the caption formulas on the primitive tuple.
pub fn caption_inverse_height(p: &SpherePoint) -> BigInt {
    let v = p.p();
    let q = p.q();
    match p.case() {
        SpaceCase::S1I => q - &v[1],
        SpaceCase::S1II => (q * BigInt::from(2) - &v[0] - &v[1]) / BigInt::from(2),
        SpaceCase::S1III => &v[0] + &v[1],
        SpaceCase::S2I => q - &v[2],
        SpaceCase::S2II => q * BigInt::from(2) - &v[1] - &v[2],
        SpaceCase::S2III => &v[0] + &v[1] + &v[2],
    }
}

pub fn unmap(p: &SpherePoint) -> Result<KElement> {
    unmap_with(p, false)
}

/// Φ⁻¹; the base point maps to ∞ only when `allow_infinity` is set.
pub fn unmap_with(p: &SpherePoint, allow_infinity: bool) -> Result<KElement> {
    let case = p.case();
    if p.is_base() {
        return if allow_infinity { Ok(KElement::infinity(case.field())) } else { Err(Error::BaseIsInfinity) };
    }
    let spec = spec_ref(case);
    let x = reflect_rat(&p.coords(), spec)?;
    let params = phi_inverse_params(case, &x);
    if phi_affine(case, &params) != x {
        return Err(Error::Invariant(format!("Ψ({p}) is not on the plane of {case}")));
    }
    let z = element_from_params(case, &params)?;
    let h = z.height()?;
    let cap = caption_inverse_height(p);
    if h != cap {
        return Err(Error::Invariant(format!("H_K(Φ⁻¹({p})) = {h} but the caption formula gives {cap}")));
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiWitness {
    pub label: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub phi_i_holds: bool,
    pub phi_ii_holds: bool,
    pub witnesses: Vec<PhiWitness>,
}

/// Exact checks of |φ(z₁) − φ(z₂)|² = C²|z₁ − z₂|² and
/// H(Φ(z))/H_K(z) = |φ(z) − n|²/(2RD) for both points.
pub fn verify_phi_conditions(case: SpaceCase, z1: &KElement, z2: &KElement) -> Result<PhiReport> {
    let spec = spec_ref(case);
    let x1 = phi_rational(z1, case)?;
    let x2 = phi_rational(z2, case)?;
    let d = sub(&x1, &x2);
    let lhs = dot(&d, &d);
    let rhs = &spec.dilation_sq * z1.dist2(z2)?;
    let mut w = vec![PhiWitness { label: "(Φ-i) |Δφ|² vs C²|Δz|²".into(), lhs: lhs.clone(), rhs: rhs.clone() }];
    let phi_i = lhs == rhs;
    let mut phi_ii = true;
    for (z, x) in [(z1, &x1), (z2, &x2)] {
        let hs = BigRational::from_integer(map_to_sphere(z, case)?.q().clone());
        let hk = BigRational::from_integer(z.height()?);
        let xn = sub(x, &spec.base);
        let l = hs / hk;
        let r = dot(&xn, &xn) / &spec.two_rd;
        phi_ii &= l == r;
        w.push(PhiWitness { label: format!("(Φ-ii) at {z}"), lhs: l, rhs: r });
    }
    Ok(PhiReport { phi_i_holds: phi_i, phi_ii_holds: phi_ii, witnesses: w })
}

/// |Ψx − Ψy|² via the chordal formula (2RD)²|x − y|²/(|x − n|²|y − n|²),
/// checked against the direct evaluation.
pub fn chordal_distance_sq(x: &PlanePoint, y: &PlanePoint, spec: &SpaceSpec) -> Result<QuadExt> {
    let n2 = |p: &PlanePoint| {
        p.coords.iter().zip(&spec.base).fold(QuadExt::zero(2), |acc, (a, n)| {
            let d = a.add_rational(&-n);
            &acc + &(&d * &d)
        })
    };
    let (nx, ny) = (n2(x), n2(y));
    if nx.is_zero() || ny.is_zero() {
        return Err(Error::ReflectionAtBase);
    }
    let xy = x.coords.iter().zip(&y.coords).fold(QuadExt::zero(2), |acc, (a, b)| {
        let d = a - b;
        &acc + &(&d * &d)
    });
    let k = &spec.two_rd * &spec.two_rd;
    let formula = xy.scale(&k).checked_div(&(&nx * &ny))?;
    let px = reflect_in_sphere(&x.coords, spec)?;
    let py = reflect_in_sphere(&y.coords, spec)?;
    let direct = px.iter().zip(&py).fold(QuadExt::zero(2), |acc, (a, b)| {
        let d = a - b;
        &acc + &(&d * &d)
    });
    if direct != formula {
        return Err(Error::Invariant(format!("chordal formula {formula} ≠ direct {direct}")));
    }
    Ok(formula)
}
