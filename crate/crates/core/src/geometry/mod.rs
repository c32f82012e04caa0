//! The six sphere cases, the maps φ, Ψ and Φ = Ψ∘φ, and sphere points.

mod enumerate;
mod maps;
mod point;
mod space;

pub use enumerate::{k_elements_for_sphere, sphere_points};
pub use maps::{
    caption_inverse_height, chordal_distance_sq, closed_form, k_params, map_to_sphere, phi_affine,
    phi_inverse_params, phi_plane, reflect_generic, reflect_in_sphere, unmap, unmap_with, verify_phi_conditions,
    PhiReport, PhiWitness, Scalar,
};
pub use point::{big_json, PlanePoint, SpherePoint};
pub use space::{space_spec, spec_ref, SpaceCase, SpaceSpec};
#[allow(unused_imports)]
pub(crate) use space::{dot, sub};
