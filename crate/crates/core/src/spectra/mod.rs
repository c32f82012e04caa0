//! Markoff-type tree, the initial discrete spectra and finite-height
//! Lagrange estimates.

mod approx;
mod interval;
mod markoff;
mod spectrum;
mod target;
mod transfer;

pub use approx::{best_approximations, estimate_lagrange, ApproximationRecord, Space};
pub use interval::{enclose_quad, sqrt_rational, to_significant, Interval};
pub use markoff::{markoff_tree, satisfies, x_values, y_values, MarkoffTriple, PRODUCT, WEIGHTS};
pub use spectrum::{
    below_limit, cited_constants, decimal_sqrt, discrete_spectrum, family_limit_square, generated_family, spectrum_csv, sporadic_s2i,
    CitedConstant, ExactSquare, Generator, Role, SpectrumValue, S2II_LIMIT_COEFF,
};
pub use target::TargetNumber;
pub use transfer::transfer_identity_check;
