use num_traits::One;

use crate::exact::{int, BigRational, Biquad, KElement, QuadExt};
use crate::geometry::{map_to_sphere, phi_plane, spec_ref, PlanePoint, SpaceCase, SpaceSpec, SpherePoint};
use crate::{Error, Result};

/// 1/(2·H_K(z)), the Ford radius on the boundary.
pub fn ford_radius_boundary(z: &KElement) -> Result<BigRational> {
    if z.is_infinite() {
        return Err(Error::InfiniteElement);
    }
    Ok(BigRational::new(1.into(), z.height()? * 2))
}

/// |z − z′|² − (1/(2H) + 1/(2H′))² + (1/(2H) − 1/(2H′))² for the Ford balls at z, z′,
/// i.e. (N − 1)/(HH′) with N = |z − z′|²HH′ an integer.
pub fn boundary_ford_gap(z: &KElement, w: &KElement) -> Result<BigRational> {
    let hz = BigRational::from_integer(z.height()?);
    let hw = BigRational::from_integer(w.height()?);
    let hh = &hz * &hw;
    let n = z.dist2(w)? * &hh;
    if !n.is_integer() || n < BigRational::one() {
        return Err(Error::Invariant(format!("|Δz|²HH′ = {n} for {z}, {w}: not an integer ≥ 1")));
    }
    Ok((n - BigRational::one()) / hh)
}

/// ρ = 2rRD/(|p − n|² + 2rD) for the ball of radius r tangent to P at p.
pub fn lemma_horo_radius(r: &QuadExt, p: &PlanePoint, spec: &SpaceSpec) -> Result<Biquad> {
    let r = Biquad::from_quad2(r)?;
    let pn = p.coords.iter().zip(&spec.base).fold(QuadExt::zero(2), |acc, (x, n)| {
        let d = x.add_rational(&-n);
        &acc + &(&d * &d)
    });
    let two_rd = &r.scale(&BigRational::from_integer(2.into())) * &spec.d;
    let num = &two_rd * &spec.radius;
    let den = &Biquad::from_quad2(&pn)? + &two_rd;
    num.checked_div(&den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horoball {
    pub base: SpherePoint,
    pub radius: Biquad,
    pub center: Vec<Biquad>,
}

/// λ = 1/(1 + sH) with s = 2R/C; ρ = Rλ and the center is c + (1 − λ)(z − c).
fn lambda(spec: &SpaceSpec, p: &SpherePoint) -> Biquad {
    let sh = spec.s_factor().scale(&BigRational::from_integer(p.q().clone()));
    (&Biquad::one() + &sh).inv().expect("1 + sH > 0")
}

pub fn horoball_at(p: &SpherePoint) -> Result<Horoball> {
    let spec = spec_ref(p.case());
    let lam = lambda(spec, p);
    let radius = &spec.radius * &lam;
    let kappa = &Biquad::one() - &lam;
    let center: Vec<Biquad> = p
        .coords()
        .iter()
        .zip(&spec.center)
        .map(|(z, c)| &Biquad::from_rational(c.clone()) + &kappa.scale(&(z - c)))
        .collect();
    let ball = Horoball { base: p.clone(), radius, center };
    ball.check_internal_tangency(spec)?;
    Ok(ball)
}

impl Horoball {
    /// |center − c| + ρ = R, checked as |center − c|² = (R − ρ)².
    fn check_internal_tangency(&self, spec: &SpaceSpec) -> Result<()> {
        let d2 = self.center.iter().zip(&spec.center).fold(Biquad::zero(), |acc, (x, c)| {
            let d = x - &Biquad::from_rational(c.clone());
            &acc + &(&d * &d)
        });
        let rr = &spec.radius - &self.radius;
        if d2 != &rr * &rr || rr.signum().is_lt() {
            return Err(Error::Invariant(format!("ball at {} is not internally tangent to S", self.base)));
        }
        Ok(())
    }

    /// |center − center′|² − (ρ + ρ′)², exactly.
    pub fn gap(&self, o: &Horoball) -> Biquad {
        let d2 = self.center.iter().zip(&o.center).fold(Biquad::zero(), |acc, (x, y)| {
            let d = x - y;
            &acc + &(&d * &d)
        });
        let s = &self.radius + &o.radius;
        &d2 - &(&s * &s)
    }
}

/// The horoball at Φ(z), cross-checked against [`lemma_horo_radius`] with
/// p = φ(z) and r = C/(2H_K(z)).
pub fn horoball_on_sphere(z: &KElement, case: SpaceCase) -> Result<Horoball> {
    let p = map_to_sphere(z, case)?;
    let ball = horoball_at(&p)?;
    if !z.is_infinite() {
        let spec = spec_ref(case);
        let c = spec.dilation.p().clone();
        let r = c.scale(&ford_radius_boundary(z)?);
        let rho = lemma_horo_radius(&r, &phi_plane(z, case)?, spec)?;
        if rho != ball.radius {
            return Err(Error::Invariant(format!("ρ at {p}: {} vs lemma {rho}", ball.radius)));
        }
    }
    Ok(ball)
}

/// Caption radius as num/(den0 + den1·h).
pub fn caption_formula(case: SpaceCase) -> (Biquad, Biquad, Biquad) {
    let (s2, s3, s6) = (Biquad::sqrt2(), Biquad::sqrt3(), Biquad::sqrt6());
    let one = Biquad::one();
    let two = Biquad::from_rational(int(2));
    match case {
        SpaceCase::S1I => (one.clone(), one, s2),
        SpaceCase::S1II => (s2.clone(), one, s2),
        SpaceCase::S1III => (s2, s3, two),
        SpaceCase::S2I => (one.clone(), one, s2),
        SpaceCase::S2II => (s2, one, two),
        SpaceCase::S2III => (s3, two, s6),
    }
}

/// The radius printed in the figure captions for a point of height h.
pub fn caption_radius(case: SpaceCase, h: &BigRational) -> Biquad {
    let (num, d0, d1) = caption_formula(case);
    num.checked_div(&(&d0 + &d1.scale(h))).expect("positive denominator")
}

/// R/(1 + sH) = num/(den0 + den1·H) as rational functions of H: both
/// coefficients of R·(den0 + den1·H) − num·(1 + sH) vanish.
pub fn caption_identity_holds(case: SpaceCase) -> bool {
    let spec = spec_ref(case);
    let (num, d0, d1) = caption_formula(case);
    &spec.radius * &d0 == num && &spec.radius * &d1 == &num * &spec.s_factor()
}
