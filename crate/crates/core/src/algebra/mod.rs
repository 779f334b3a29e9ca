//! Exact algebra over the Gaussian rationals.

pub mod gauss;
pub mod gcd;
pub mod io;
pub mod laurent;
pub mod nullstellensatz;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod squarefree;

pub use gauss::GaussRat;
pub use gcd::{gcd, gcd_poly};
pub use laurent::LaurentBivar;
pub use parse::{parse_gauss, parse_poly, parse_projective, parse_univariate};
pub use nullstellensatz::{nullstellensatz_certificate, NullstellensatzCertificate};
pub use poly::SparsePoly;
pub use resultant::{det, resultant};
pub use roots::{factor_linear_forms, roots_certified, AlgebraicNumber, AlgebraicRoots, RootEnclosure};
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};
