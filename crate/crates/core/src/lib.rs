//! Projective complex reflection groups `G(r,p,q,n)`, explicit Gelfand
//! models built on absolute involutions, and the brute-force oracles used to
//! check them.
//!
//! Elements of `G(r,n)` are colored permutations. Composition follows the map
//! convention `(g h)(x) = g(h(x))`, so `z_i(gh) = z_i(h) + z_{|h|(i)}(g)`.
//! The matrix of `g` has its row-`i` entry `ζ_r^{z_i(g)}` in column `|g|(i)`.

pub mod analysis;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod model;
pub mod perm;
pub mod report;
pub mod rsk;
pub mod tableaux;

pub use cyclotomic::{Cyclotomic, UnitScalar};
pub use error::{Error, Result};
pub use group::{GroupParams, ProjectiveElement};
pub use perm::{ColoredCycle, ColoredPermutation, SymmetryClass};
pub use report::{Check, VerificationReport};
