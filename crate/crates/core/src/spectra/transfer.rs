use crate::exact::{BigRational, KElement};
use crate::geometry::{dot, k_params, map_to_sphere, phi_affine, spec_ref, sub, SpaceCase};
use crate::{Error, Result};

/// [H(Φz)·|Φw − Φz|]² / [H_K(z)·|w − z|]² against C²·|φz − n|²/|φw − n|²,
/// both evaluated exactly. Returns the common value.
pub fn transfer_identity_check(case: SpaceCase, z: &KElement, w: &KElement) -> Result<BigRational> {
    if z == w {
        return Err(Error::Invariant("transfer identity needs z ≠ w".into()));
    }
    let spec = spec_ref(case);
    let (pz, pw) = (map_to_sphere(z, case)?, map_to_sphere(w, case)?);
    if pz.is_base() || pw.is_base() {
        return Err(Error::InfiniteElement);
    }
    let hs = BigRational::from_integer(pz.q().clone());
    let hk = BigRational::from_integer(z.height()?);
    let dz = sub(&pw.coords(), &pz.coords());
    let lhs = &hs * &hs * dot(&dz, &dz) / (&hk * &hk * z.dist2(w)?);

    let fz = sub(&phi_affine(case, &k_params(z)?), &spec.base);
    let fw = sub(&phi_affine(case, &k_params(w)?), &spec.base);
    let (nz, nw) = (dot(&fz, &fz), dot(&fw, &fw));
    if nw == BigRational::from_integer(0.into()) {
        return Err(Error::ReflectionAtBase);
    }
    let rhs = &spec.dilation_sq * nz / nw;
    if lhs != rhs {
        return Err(Error::Invariant(format!("{case}: transfer ratio {lhs} ≠ {rhs} at z = {z}, w = {w}")));
    }
    Ok(lhs)
}
