//! Exact polynomial algebra and a staged certificate showing that the second
//! cuboid polynomial admits no quintic 5+5 splitting.

pub mod arith;
pub mod elimination;
pub mod error;
pub mod mpoly;
pub mod pipeline;
pub mod realroots;
pub mod upoly;

pub use arith::{int_gcd, rat_canonical, rat_sign, Int, Rat, Sign};
pub use error::AlgebraError;
pub use mpoly::{MPoly, QuinticAnsatz};
pub use upoly::{UPoly, UPolyQ, UPolyZ};
