//! Jet-exact verification of weighted Kähler geometry and soliton identities.

pub mod backends;
pub mod check;
pub mod identities;
pub mod jet;
pub mod kahler;
pub mod soliton;
pub mod tensor;
pub mod tensorcalc;
pub mod variation;

pub use jet::{jet_const, jet_coordinate, JetError, JetPoint, JetScalar, Scalar};

/// Double-precision jets, used by all geometry.
pub type Jet = JetScalar<f64>;
/// Single-precision jets.
pub type Jet32 = JetScalar<f32>;
