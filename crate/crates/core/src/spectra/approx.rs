use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::interval::Interval;
use super::target::{imag_scale, TargetNumber};
use crate::exact::{int, rat, BigRational, BoundaryField, KElement, OInt};
use crate::geometry::{map_to_sphere, phi_affine, reflect_generic, spec_ref, SpaceCase, SpherePoint};
use crate::{Error, Result};

/// Where approximations live: a boundary field with its own height, or a
/// sphere with the height of its rational points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Boundary(BoundaryField),
    Sphere(SpaceCase),
}

impl Space {
    pub fn field(self) -> BoundaryField {
        match self {
            Space::Boundary(f) => f,
            Space::Sphere(c) => c.field(),
        }
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<SpaceCase>().map(Space::Sphere).or_else(|_| s.parse::<BoundaryField>().map(Space::Boundary))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Boundary(k) => write!(f, "{}", k.name()),
            Space::Sphere(c) => write!(f, "{}", c.name()),
        }
    }
}

/// The closest candidate of one height class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationRecord {
    pub z: KElement,
    pub point: Option<SpherePoint>,
    pub height: BigInt,
    pub distance: Interval,
    /// Encloses 1/(H·d).
    pub quality: Interval,
    /// Set when refinement to the maximal precision did not separate the
    /// closest candidates; `z` is then the first of them in canonical order.
    pub tie: bool,
}

fn interval_json(x: &Interval) -> Value {
    json!({"lo": super::interval::to_significant(x.lo(), 20), "hi": super::interval::to_significant(x.hi(), 20)})
}

impl ApproximationRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "z": self.z.to_string(),
            "point": self.point.as_ref().map(|p| p.to_string()),
            "height": self.height.to_string(),
            "distance": interval_json(&self.distance),
            "quality": interval_json(&self.quality),
            "tie": self.tie,
        })
    }
}

const PRECISIONS: [u32; 5] = [64, 128, 256, 512, 1024];

/// Target data at one precision.
struct Eval {
    re: Interval,
    im: Interval,
    sphere: Option<Vec<Interval>>,
    p: u32,
}

/// Parameters of ξ for φ: ξ, √2ξ, or (u, v) with ξ = u + vω.
fn target_params(re: &Interval, im: &Interval, field: BoundaryField, p: u32) -> Result<Vec<Interval>> {
    Ok(match field {
        BoundaryField::Rationals => vec![re.clone()],
        BoundaryField::Sqrt2Rationals => vec![re.mul(&imag_scale(-2, p))],
        f => {
            let d = f.quad_d();
            let v = if d == -3 { im.scale(&int(2)).div(&imag_scale(-3, p))? } else { im.div(&imag_scale(d, p))? };
            let u = if d == -3 { re.add(&v.scale(&rat(1, 2))) } else { re.clone() };
            vec![u, v]
        }
    })
}

fn eval(xi: &TargetNumber, space: Space, p: u32) -> Result<Eval> {
    let (re, im) = xi.enclose(p);
    let sphere = match space {
        Space::Boundary(_) => None,
        Space::Sphere(case) => {
            let params = target_params(&re, &im, case.field(), p)?;
            Some(reflect_generic(&phi_affine(case, &params), spec_ref(case))?)
        }
    };
    Ok(Eval { re, im, sphere, p })
}

struct Candidate {
    z: KElement,
    point: Option<SpherePoint>,
    coords: Vec<BigRational>,
}

fn dist_sq(c: &Candidate, e: &Eval) -> Interval {
    if let Some(x) = &e.sphere {
        return x.iter().zip(&c.coords).fold(Interval::point(int(0)), |s, (a, b)| s.add(&a.sub(&Interval::point(b.clone())).sqr()));
    }
    let v = c.z.value().expect("finite");
    let (x, y) = if v.d() > 0 {
        (Interval::point(v.a().clone()).add(&imag_scale(-v.d(), e.p).scale(v.b())), Interval::point(int(0)))
    } else {
        (Interval::point(v.a().clone()), imag_scale(v.d(), e.p).scale(v.b()))
    };
    e.re.sub(&x).sqr().add(&e.im.sub(&y).sqr())
}

/// floor of a real given by nested enclosures, refined until decided.
fn floor_of(f: impl Fn(u32) -> Interval) -> Result<BigInt> {
    for p in PRECISIONS {
        let x = f(p);
        let (a, b) = (x.lo().floor().to_integer(), x.hi().floor().to_integer());
        if a == b && !x.hi().is_integer() {
            return Ok(a);
        }
    }
    Err(Error::Invariant("floor undecided at maximal precision".into()))
}

fn coprime_near(start: &BigInt, step: i64, n: &BigInt, parity: Option<bool>) -> Option<BigInt> {
    let cap = 4 * n.to_i64().unwrap_or(i64::MAX / 8) + 8;
    let mut m = start.clone();
    for _ in 0..cap {
        let ok_parity = parity.map_or(true, |even| m.is_even() == even);
        if ok_parity && m.gcd(n) == BigInt::from(1) {
            return Some(m);
        }
        m += step;
    }
    None
}

fn real_candidates(xi: &TargetNumber, field: BoundaryField, bound: u64) -> Result<Vec<KElement>> {
    let mut out = Vec::new();
    let scale = field == BoundaryField::Sqrt2Rationals;
    let enclose = |k: &BigInt, p: u32| {
        let x = xi.enclose(p).0;
        let x = if scale { x.mul(&imag_scale(-2, p)) } else { x };
        x.scale(&BigRational::from_integer(k.clone()))
    };
    for n in 1..=bound.sqrt().max(1) {
        let nb = BigInt::from(n);
        let f = floor_of(|p| enclose(&nb, p))?;
        if !scale {
            for (s, step) in [(f.clone(), -1), (&f + 1, 1)] {
                if let Some(m) = coprime_near(&s, step, &nb, None) {
                    out.push(KElement::from_rational(&BigRational::new(m, nb.clone())));
                }
            }
            continue;
        }
        // t = m/(√2 n): height n² for even m, 2n² for odd m.
        for even in [true, false] {
            let h = if even { n * n } else { 2 * n * n };
            if h > bound || (even && n % 2 == 0) {
                continue;
            }
            for (s, step) in [(f.clone(), -1), (&f + 1, 1)] {
                if let Some(m) = coprime_near(&s, step, &nb, Some(even)) {
                    out.push(KElement::from_sqrt2_scaled(&BigRational::new(m, nb.clone())));
                }
            }
        }
    }
    Ok(out)
}

fn imag_candidates(xi: &TargetNumber, field: BoundaryField, bound: u64) -> Result<Vec<KElement>> {
    let d = field.quad_d();
    let (x, y) = xi.to_f64();
    // ξ = u + vω in the ω-basis
    let (v, u) = match d {
        -3 => {
            let v = 2.0 * y / 3f64.sqrt();
            (v, x + v / 2.0)
        }
        _ => (y / ((-d) as f64).sqrt(), x),
    };
    let r = (2 * bound).sqrt() as i64 + 1;
    let betas: Vec<(i64, i64)> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).collect();
    let found: BTreeSet<KElement> = betas
        .par_iter()
        .filter_map(|&(a, b)| {
            let beta = OInt::from_i64(d, a, b).unwrap();
            let nb = beta.norm();
            (!nb.is_zero() && nb <= BigInt::from(bound)).then_some(beta)
        })
        .flat_map_iter(|beta| {
            // βξ in ω-coordinates
            let (ba, bb) = (beta.a().to_f64().unwrap(), beta.b().to_f64().unwrap());
            let (pu, pv) = match d {
                -3 => (ba * u - bb * v, ba * v + bb * u - bb * v),
                _ => (ba * u + (d as f64) * bb * v, ba * v + bb * u),
            };
            let mut hits = Vec::new();
            let mut w = 1;
            while hits.is_empty() && w <= 4 {
                for i in (pu.floor() as i64 - w)..=(pu.floor() as i64 + w + 1) {
                    for j in (pv.floor() as i64 - w)..=(pv.floor() as i64 + w + 1) {
                        let alpha = OInt::from_i64(d, i, j).unwrap();
                        if alpha.gcd(&beta).is_unit() {
                            hits.push(KElement::from_oints(&alpha, &beta).expect("coprime"));
                        }
                    }
                }
                w += 1;
            }
            hits
        })
        .collect();
    Ok(found.into_iter().collect())
}

fn boundary_candidates(xi: &TargetNumber, field: BoundaryField, bound: u64) -> Result<Vec<KElement>> {
    if field.is_real() {
        if !xi.is_real() && !xi.im().unwrap().is_zero() {
            return Err(Error::Unsupported(format!("complex target in {}", field.name())));
        }
        real_candidates(xi, field, bound)
    } else {
        imag_candidates(xi, field, bound)
    }
}

fn candidates(xi: &TargetNumber, space: Space, bound: u64) -> Result<BTreeMap<BigInt, Vec<Candidate>>> {
    xi.require_outside(space.field())?;
    let mut classes: BTreeMap<BigInt, Vec<Candidate>> = BTreeMap::new();
    let bb = BigInt::from(bound);
    match space {
        Space::Boundary(f) => {
            for z in boundary_candidates(xi, f, bound)? {
                let h = z.height()?;
                if h <= bb {
                    classes.entry(h).or_default().push(Candidate { z, point: None, coords: vec![] });
                }
            }
        }
        Space::Sphere(case) => {
            if case.is_circle() && !xi.is_real() && !xi.im().unwrap().is_zero() {
                return Err(Error::Unsupported(format!("complex target on {case}")));
            }
            // H(Φz) = H_K(z)·|φz − n|²/(2RD); search K up to the height that
            // reaches the bound near ξ, with a margin.
            let spec = spec_ref(case);
            let (re, im) = xi.enclose(64);
            let params = target_params(&re, &im, case.field(), 64)?;
            let fx = phi_affine(case, &params);
            let n2 = fx.iter().zip(&spec.base).fold(0.0, |s, (a, b)| {
                let t = a.to_f64() - b.to_f64().unwrap();
                s + t * t
            });
            let two_rd = spec.two_rd.to_f64().unwrap();
            let kb = ((bound as f64) * two_rd / n2 * 2.0).ceil() as u64 + 4;
            for z in boundary_candidates(xi, case.field(), kb)? {
                let p = map_to_sphere(&z, case)?;
                if p.q() <= &bb && !p.is_base() {
                    let coords = p.coords();
                    classes.entry(p.q().clone()).or_default().push(Candidate { z, point: Some(p), coords });
                }
            }
        }
    }
    for v in classes.values_mut() {
        v.sort_by(|a, b| a.z.cmp(&b.z));
        v.dedup_by(|a, b| a.z == b.z);
    }
    Ok(classes)
}

fn best_of(height: &BigInt, class: &[Candidate], evals: &[Eval]) -> ApproximationRecord {
    let mut last = Vec::new();
    for e in evals {
        let d2: Vec<Interval> = class.iter().map(|c| dist_sq(c, e)).collect();
        let min_hi = d2.iter().map(Interval::hi).min().unwrap().clone();
        let close: Vec<usize> = (0..d2.len()).filter(|&i| d2[i].lo() <= &min_hi).collect();
        last = close.iter().map(|&i| (i, d2[i].clone())).collect();
        if close.len() == 1 {
            break;
        }
    }
    let tie = last.len() > 1;
    let (i, d2) = last.swap_remove(0);
    let p = evals.last().unwrap().p;
    let distance = d2.sqrt(p).expect("nonnegative");
    let h = Interval::point(BigRational::from_integer(height.clone()));
    let quality = h.mul(&distance).recip().expect("target is not a candidate");
    ApproximationRecord { z: class[i].z.clone(), point: class[i].point.clone(), height: height.clone(), distance, quality, tie }
}

/// The closest candidate in each height class up to the bound, ordered by
/// height. Candidates are the nearest points of K to ξ for each
/// denominator, pushed to the sphere for sphere spaces.
pub fn best_approximations(xi: &TargetNumber, space: Space, height_bound: u64) -> Result<Vec<ApproximationRecord>> {
    let classes = candidates(xi, space, height_bound)?;
    let evals: Vec<Eval> = PRECISIONS.iter().map(|&p| eval(xi, space, p)).collect::<Result<_>>()?;
    let items: Vec<(&BigInt, &Vec<Candidate>)> = classes.iter().collect();
    Ok(items.par_iter().map(|(h, c)| best_of(h, c, &evals)).collect())
}

/// Enclosure of the largest quality over records with height in
/// (bound/2, bound]: a finite-height estimate of the Lagrange number.
pub fn estimate_lagrange(xi: &TargetNumber, space: Space, height_bound: u64) -> Result<Interval> {
    let half = BigInt::from(height_bound);
    best_approximations(xi, space, height_bound)?
        .into_iter()
        .filter(|r| &r.height * 2 > half)
        .map(|r| r.quality)
        .reduce(|a, b| a.max(&b))
        .ok_or_else(|| Error::Unsupported(format!("no approximations of {xi} in {space} with height in ({}, {height_bound}]", height_bound / 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: &str) -> KElement {
        KElement::parse(BoundaryField::Rationals, f).unwrap()
    }

    #[test]
    fn golden_fibonacci_records() {
        let g = TargetNumber::golden();
        let recs = best_approximations(&g, Space::Boundary(BoundaryField::Rationals), 100).unwrap();
        let zs: Vec<KElement> = recs.iter().map(|r| r.z.clone()).collect();
        for f in ["2/1", "3/2", "5/3", "8/5", "13/8", "21/13", "34/21", "55/34", "89/55", "144/89"] {
            let z = q(f);
            if z.height().unwrap() <= BigInt::from(100) {
                assert!(zs.contains(&z), "{f}");
            }
        }
        assert!(zs.contains(&q("1")) || zs.contains(&q("2")));
        assert!(recs.iter().all(|r| !r.tie));
    }

    #[test]
    fn golden_estimate_contains_sqrt5() {
        let g = TargetNumber::golden();
        let e = estimate_lagrange(&g, Space::Boundary(BoundaryField::Rationals), 10_000).unwrap();
        let five = Interval::point(int(5));
        assert!(e.sqr().widen(&rat(1, 100)).contains_interval(&five));
    }

    #[test]
    fn sqrt2_target_in_sqrt2q_rejected() {
        let s = TargetNumber::sqrt(2).unwrap();
        assert!(best_approximations(&s, Space::Boundary(BoundaryField::Sqrt2Rationals), 100).is_err());
        let r = best_approximations(&TargetNumber::golden(), Space::Boundary(BoundaryField::Sqrt2Rationals), 1000).unwrap();
        assert!(!r.is_empty());
    }

    #[test]
    fn sphere_records_are_on_sphere() {
        let g = TargetNumber::golden();
        let r = best_approximations(&g, Space::Sphere(SpaceCase::S1III), 500).unwrap();
        assert!(r.iter().all(|x| x.point.as_ref().unwrap().q() == &x.height));
        let c = TargetNumber::parse("1/3,sqrt2").unwrap();
        let r = best_approximations(&c, Space::Sphere(SpaceCase::S2I), 50).unwrap();
        assert!(!r.is_empty());
    }
}
