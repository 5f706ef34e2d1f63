//! Exact arithmetic for complex tori of Weil type.
//!
//! The crate builds 4-dimensional complex tori whose lattice carries an
//! action of `Z[i]`, computes their rational Hodge classes in degrees 2 and
//! 4 with exact linear algebra, constructs the Weil classes, and checks the
//! first-order deformation and Chern-class identities used to show that
//! such tori carry Hodge classes not generated by Chern classes of
//! coherent sheaves.

pub mod chern;
pub mod deform;
pub mod exterior;
pub mod hodge;
pub mod scalars;
pub mod torus;
pub mod weil;

pub use scalars::{Assignment, BigRational, GaussRational, Poly, RatFunc, Ring, Scalar};
