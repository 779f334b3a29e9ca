//! Nevanlinna functionals on a closed class of meromorphic functions.

pub mod expsum;
pub mod functionals;
pub mod mero;
pub mod quad;
pub mod zeros;

pub use expsum::ExpSum;
pub use functionals::{
    cartan_t, cartan_t_mero, characteristic_t, counting_from_points, counting_n, gcd_counting, gcd_counting_points,
    proximity_m, LogAbs, RadiusGrid,
};
pub use mero::{DivisorPoint, MeroFn, RationalFn, Target};
