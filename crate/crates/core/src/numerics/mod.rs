//! Field-generic polynomial and linear-algebra kernel.

pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod recognize;
pub mod roots;
pub mod scalar;

pub use gcd::{common_factor, divide_checked, gcd_exact, gcd_reduce};
pub use linalg::{nullspace_vector, Matrix, NullVector};
pub use poly::Polynomial;
pub use recognize::{recognize_gauss, recognize_rational};
pub use roots::{roots, squarefree, Root, RootSet};
pub use scalar::{cabs, parse_rational, render_complex, Context, Gauss, Mode, Scalar, DEFAULT_PRECISION};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("no roots: polynomial has degree 0")]
    NoRoots,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("root refinement did not converge after {} sweeps (max residual {:e})", roots::MAX_SWEEPS, residuals.iter().cloned().fold(0.0, f64::max))]
    RootsNotConverged { best: Vec<(f64, f64)>, residuals: Vec<f64> },
    #[error("uncertain cancellation: division residual {residual:e} above tolerance")]
    UncertainCancellation { residual: f64 },
}
