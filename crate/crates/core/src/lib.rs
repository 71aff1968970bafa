//! Discrete and uniform norms of complex polynomials on the unit circle.
//!
//! The crate computes the exact maximum and minimum of `|P|` on `|z| = 1`
//! through the critical angles of the squared-modulus profile, the discrete
//! norm on the grid of `N`-th roots of unity, and the classical lower-bound
//! constants relating the two. It also verifies, numerically, the chain of
//! inequalities behind the cosine bound — the slit-map derivative bound, the
//! differential inequality for the profile, and the arcsin integration step —
//! and searches for extremal polynomials to confirm that the bound is sharp.

pub mod bounds;
pub mod error;
pub mod norms;
pub mod poly;
pub mod proof_checks;
pub mod schwarz;
pub mod search;

mod numeric;
mod roots;

pub use error::{Error, Result};
pub use poly::{random_polynomial, CriticalAngles, Polynomial, TrigProfile};
