//! Exact-arithmetic toolkit for curve configurations on abelian and Kummer
//! surfaces: torsion-point combinatorics, the (16₆) and (16₁₀) incidence
//! designs, divisor-class lattices with blow-ups, and the Harbourne-constant
//! calculus. Every quantity is an exact rational; decimals appear only in
//! rendered output.

pub mod error;
pub mod families;
pub mod harbourne;
pub mod incidence;
pub mod lattice;
pub mod rational;
pub mod render;

pub use error::Error;
pub use rational::Rat;

pub type Result<T> = std::result::Result<T, Error>;
