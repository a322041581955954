//! Dense numeric kernels sized for the problems in this crate: matrices up to
//! 64×64 (or 64 × 4096 for state reshapes), scalar root brackets, and
//! low-order polynomial fits.

mod bisect;
mod eigen;
mod fit;
mod matrix;
mod svd;

pub use bisect::bisect_boundary;
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use fit::{poly_fit, FitModel, PolyFit};
pub use matrix::CMatrix;
pub use svd::{dominant_singular_value, singular_values};

pub use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
