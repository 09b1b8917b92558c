//! Exact arithmetic for quadratic Diophantine problems in four variables.
//!
//! The crate builds complete bilinear-form solutions of quaternary quadratic
//! equations `Q(x1,x2,x3,x4) = 0`, decides and solves simultaneous pairs of
//! such equations through the determinant of their matrix pencil, and derives
//! new rational points on quartic models of elliptic curves
//! `y^2 = a0*t^4 + a1*t^3 + a2*t^2 + a3*t + a4` from one or two known points.
//!
//! All computation is exact: the universal scalar is an arbitrary-precision
//! rational ([`Rational`]), solution vectors are primitive integer 4-tuples
//! ([`ProjVec4`]), and every emitted solution re-verifies against its defining
//! equation before it is returned.

pub mod bilinear;
pub mod error;
pub mod nt;
pub mod pair_solver;
pub mod poly;
pub mod projvec;
pub mod quadform;
pub mod quartic;
pub mod rational;
pub mod ternary;

pub use error::Error;
pub use projvec::ProjVec4;

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. The universal scalar type of the crate.
pub type Rational = num_rational::BigRational;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
