//! Exact adjoint affine fusion and fusion tadpoles for the simple Lie algebras.
//!
//! The crate computes the decomposition of `L(theta) (x)_k L(mu)` (adjoint
//! fusion at level `k`) from closed-form rules, checks it against an
//! independent Racah-Speiser / Kac-Walton folding oracle, and evaluates the
//! genus-one adjoint and zero fusion tadpoles both by enumerating the level-k
//! alcove and from piecewise-polynomial closed forms.

pub mod adjoint_rules;
pub mod algebra;
pub mod error;
pub mod oracle;
pub mod tables;
pub mod tadpole;
pub mod verify;
pub mod weights;

pub use adjoint_rules::{Engine, FusionDecomposition, NontrivialCondition};
pub use algebra::{AlgebraId, CartanData, Family, Root, RootSystem};
pub use error::{Error, Result};
pub use tadpole::{PiecewisePolynomial, Polynomial, TadpoleMethod, TadpoleReport};
pub use weights::{AffineWeight, Weight};
