//! Exact scalars: rationals, quadratic extensions, the biquadratic field
//! ℚ(√2, √3), imaginary quadratic integers and boundary-field elements.

mod biquad;
mod expr;
pub(crate) use expr::{parse_expr, radicands, Parsed};
mod kelement;
mod oint;
mod quad;
mod rational;
pub mod sample;

pub use biquad::Biquad;
pub use kelement::{
    canonicalize_sqrt2_rational, height_k, reduce_imag_quadratic, BoundaryField, KElement,
    Sqrt2Class,
};
pub use oint::OInt;
pub use quad::{quad_arith, QuadExt, QuadOp, QuadValue};
pub use rational::{big, int, is_squarefree, lcm, rat, BigRational};
