//! Exact arithmetic in `Q(q)` and super q-combinatorics.

mod laurent;
mod qnumbers;
mod qscalar;

pub use laurent::LaurentPoly;
pub use qnumbers::{euler_phi_coeffs, super_qbinom, super_qbinom_poly, super_qfact, super_qint};
pub use qscalar::QScalar;

/// Substitutes `q -> -q^{-1}` in a scalar.
pub fn bar_scalar(s: &QScalar) -> QScalar {
    s.bar()
}
