use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ball::horoball_at;
use crate::exact::{BigRational, Biquad, QuadExt};
use crate::geometry::{dot, spec_ref, sub, SpaceCase, SpaceSpec, SpherePoint};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Tangent,
    Disjoint,
}

/// Integer form whose extremal value characterizes tangency; the second
/// component is the extremal constant.
pub fn tangency_form(a: &SpherePoint, b: &SpherePoint) -> Result<(BigInt, i64)> {
    if a.case() != b.case() {
        return Err(Error::FieldMismatch { expected: a.case().name().into(), got: b.case().name().into() });
    }
    let pp: BigInt = a.p().iter().zip(b.p()).map(|(x, y)| x * y).sum();
    let qq = a.q() * b.q();
    Ok(match a.case() {
        SpaceCase::S1I | SpaceCase::S2I => (pp - qq, -1),
        SpaceCase::S1II => (pp - qq * 2, -2),
        SpaceCase::S2II => (pp - qq * 2, -1),
        SpaceCase::S1III | SpaceCase::S2III => (qq - pp, 1),
    })
}

/// Distance of the form value beyond its extremal constant, in the
/// direction of the inequality (≥ 0 always; 0 iff tangent).
pub fn form_excess(case: SpaceCase, value: &BigInt, extremal: i64) -> BigInt {
    match case {
        SpaceCase::S1III | SpaceCase::S2III => value - extremal,
        _ => BigInt::from(extremal) - value,
    }
}

fn form_verdict(a: &SpherePoint, b: &SpherePoint) -> Result<(Verdict, BigInt)> {
    let (v, e) = tangency_form(a, b)?;
    let x = form_excess(a.case(), &v, e);
    match x.cmp(&BigInt::zero()) {
        Ordering::Equal => Ok((Verdict::Tangent, v)),
        Ordering::Greater => Ok((Verdict::Disjoint, v)),
        Ordering::Less => Err(Error::Invariant(format!("form value {v} for {a}, {b} violates the bound {e}"))),
    }
}

fn gap_verdict(sign: Ordering, a: &SpherePoint, b: &SpherePoint, gap: &dyn std::fmt::Display) -> Result<Verdict> {
    match sign {
        Ordering::Equal => Ok(Verdict::Tangent),
        Ordering::Greater => Ok(Verdict::Disjoint),
        Ordering::Less => Err(Error::Invariant(format!("horoballs at {a} and {b} overlap: gap {gap}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyCertificate {
    pub verdict: Verdict,
    pub form_value: BigInt,
    pub extremal: i64,
    /// |center − center′|² − (ρ + ρ′)².
    pub gap: Biquad,
}

/// Both verdicts computed independently and required to agree.
pub fn verify_tangent_or_disjoint(a: &SpherePoint, b: &SpherePoint) -> Result<TangencyCertificate> {
    if a == b {
        return Err(Error::Invariant(format!("{a} compared with itself")));
    }
    let (fv, value) = form_verdict(a, b)?;
    let gap = horoball_at(a)?.gap(&horoball_at(b)?);
    let gv = gap_verdict(gap.signum(), a, b, &gap)?;
    if fv != gv {
        return Err(Error::Invariant(format!("{a}, {b}: form says {fv:?}, distance says {gv:?} (gap {gap})")));
    }
    let extremal = tangency_form(a, b)?.1;
    Ok(TangencyCertificate { verdict: gv, form_value: value, extremal, gap })
}

/// The single quadratic field ℚ(√d) containing s = 2R/C.
fn s_field(spec: &SpaceSpec) -> QuadExt {
    let [a, b, c, e] = spec.s_factor().coeffs();
    if c.is_zero() && e.is_zero() {
        QuadExt::new(2, a, b)
    } else if b.is_zero() && e.is_zero() {
        QuadExt::new(3, a, c)
    } else {
        assert!(b.is_zero() && c.is_zero(), "s lies in a quadratic subfield");
        QuadExt::new(6, a, e)
    }
    .expect("valid field")
}

/// Per-node data for the squared-distance gap in ℚ(s):
/// gap = e + e′ − 2R²λλ′ − 2κκ′(z − c)·(z′ − c) with κ = 1 − λ, e = R²(1 − 2λ).
#[derive(Clone, Debug)]
pub(crate) struct GapNode {
    lambda: QuadExt,
    kappa: QuadExt,
    e: QuadExt,
    u: Vec<BigRational>,
}

impl GapNode {
    pub(crate) fn new(spec: &SpaceSpec, s: &QuadExt, p: &SpherePoint) -> Self {
        let one = BigRational::one();
        let sh = s.scale(&BigRational::from_integer(p.q().clone()));
        let lambda = sh.add_rational(&one).inv().expect("1 + sH > 0");
        let kappa = (-&lambda).add_rational(&one);
        let e = lambda.scale(&BigRational::from_integer((-2).into())).add_rational(&one).scale(&spec.radius_sq);
        GapNode { lambda, kappa, e, u: sub(&p.coords(), &spec.center) }
    }

    pub(crate) fn gap(&self, o: &GapNode, two_r2: &BigRational) -> QuadExt {
        let dt = dot(&self.u, &o.u);
        let ll = (&self.lambda * &o.lambda).scale(two_r2);
        let kk = (&self.kappa * &o.kappa).scale(&(dt * BigRational::from_integer(2.into())));
        &(&(&self.e + &o.e) - &ll) - &kk
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub pairs: u64,
    pub tangent: u64,
    pub disjoint: u64,
    /// Pairs also checked through the explicit centers and radii.
    pub full_checks: u64,
}

/// Classifies all pairs of `nodes`: exact gap in ℚ(s) against the integer
/// form for every pair, and the explicit-center computation for pairs whose
/// heights are both ≤ `full_bound`. Returns the tangent pairs, sorted.
pub fn classify_pairs(
    case: SpaceCase,
    nodes: &[SpherePoint],
    full_bound: u64,
) -> Result<(Vec<(usize, usize)>, PairSummary)> {
    let spec = spec_ref(case);
    let s = s_field(spec);
    let two_r2 = &spec.radius_sq * BigRational::from_integer(2.into());
    let data: Vec<GapNode> = nodes.iter().map(|p| GapNode::new(spec, &s, p)).collect();
    let fb = BigInt::from(full_bound);
    let rows: Vec<Result<(Vec<(usize, usize)>, PairSummary)>> = (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let mut edges = Vec::new();
            let mut sum = PairSummary::default();
            for j in i + 1..nodes.len() {
                let (a, b) = (&nodes[i], &nodes[j]);
                let (fv, _) = form_verdict(a, b)?;
                let g = data[i].gap(&data[j], &two_r2);
                let gv = gap_verdict(g.signum()?, a, b, &g)?;
                if fv != gv {
                    return Err(Error::Invariant(format!("{a}, {b}: form {fv:?} vs distance {gv:?} (gap {g})")));
                }
                if a.q() <= &fb && b.q() <= &fb {
                    let cert = verify_tangent_or_disjoint(a, b)?;
                    if cert.verdict != gv {
                        return Err(Error::Invariant(format!("{a}, {b}: centers give {:?}", cert.verdict)));
                    }
                    sum.full_checks += 1;
                }
                sum.pairs += 1;
                match gv {
                    Verdict::Tangent => {
                        sum.tangent += 1;
                        edges.push((i, j));
                    }
                    Verdict::Disjoint => sum.disjoint += 1,
                }
            }
            Ok((edges, sum))
        })
        .collect();
    let mut edges = Vec::new();
    let mut total = PairSummary::default();
    for r in rows {
        let (e, s) = r?;
        edges.extend(e);
        total.pairs += s.pairs;
        total.tangent += s.tangent;
        total.disjoint += s.disjoint;
        total.full_checks += s.full_checks;
    }
    edges.sort();
    Ok((edges, total))
}

#[cfg(test)]
fn to_biquad(x: &QuadExt) -> Biquad {
    let z = BigRational::zero;
    let (a, b) = (x.a().clone(), x.b().clone());
    match x.d() {
        2 => Biquad::from_coeffs(a, b, z(), z()),
        3 => Biquad::from_coeffs(a, z(), b, z()),
        _ => Biquad::from_coeffs(a, z(), z(), b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere_points;

    fn pt(c: SpaceCase, s: &str) -> SpherePoint {
        SpherePoint::parse(c, s).unwrap()
    }

    #[test]
    fn form_examples() {
        let c = SpaceCase::S1I;
        assert_eq!(tangency_form(&pt(c, "(1,0)/1"), &pt(c, "(0,1)/1")).unwrap().0, BigInt::from(-1));
        assert_eq!(tangency_form(&pt(c, "(1,0)/1"), &pt(c, "(4,3)/5")).unwrap().0, BigInt::from(-1));
        let c = SpaceCase::S2I;
        assert_eq!(tangency_form(&pt(c, "(1,0,0)/1"), &pt(c, "(-1,0,0)/1")).unwrap().0, BigInt::from(-2));
        let cert = verify_tangent_or_disjoint(&pt(c, "(1,0,0)/1"), &pt(c, "(-1,0,0)/1")).unwrap();
        assert_eq!(cert.verdict, Verdict::Disjoint);
        let c = SpaceCase::S1III;
        let cert = verify_tangent_or_disjoint(&pt(c, "(0,1,0)/1"), &pt(c, "(1,0,0)/1")).unwrap();
        assert_eq!((cert.verdict, cert.form_value), (Verdict::Tangent, BigInt::from(1)));
    }

    #[test]
    fn fast_gap_matches_centers() {
        for case in SpaceCase::ALL {
            let spec = spec_ref(case);
            let s = s_field(spec);
            let two_r2 = &spec.radius_sq * BigRational::from_integer(2.into());
            let pts = sphere_points(case, 5);
            for a in &pts {
                for b in &pts {
                    if a == b {
                        continue;
                    }
                    let g = GapNode::new(spec, &s, a).gap(&GapNode::new(spec, &s, b), &two_r2);
                    let full = horoball_at(a).unwrap().gap(&horoball_at(b).unwrap());
                    assert_eq!(to_biquad(&g), full, "{case} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn small_graphs() {
        let pts = sphere_points(SpaceCase::S1I, 1);
        let (e, s) = classify_pairs(SpaceCase::S1I, &pts, 1).unwrap();
        assert_eq!((e.len(), s.pairs, s.full_checks), (4, 6, 6));
        let pts = sphere_points(SpaceCase::S2I, 1);
        let (e, _) = classify_pairs(SpaceCase::S2I, &pts, 1).unwrap();
        assert_eq!(e.len(), 12);
    }
}
