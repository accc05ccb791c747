//! Exact verification of class number identities arising from 2-isogenies
//! of elliptic curves over F_p.
//!
//! The central objects are the normalized isogeny pair `tau: E1 -> E2` with
//! `E1: y^2 = x^3 + ax^2 + bx`, its cokernel character `chi_tau` (image
//! membership, computable in closed form through the Tate pairing), and the
//! weighted character sum
//!
//! ```text
//!     S_tau = sum over affine P in E2(F_p) of {x(P) - a} chi_tau(P),
//! ```
//!
//! which is divisible by p with `-S_tau/p = h_p^* + R_{a,b}` for an explicit
//! bounded error term. Everything is verified at the integer level: sums are
//! evaluated by full enumeration, class numbers come from an independent
//! reduced-forms oracle, and closed forms are asserted against the computed
//! values rather than substituted for them.
//!
//! Modules:
//! - [`modular`]: residues, Legendre symbol (two routes), square roots.
//! - [`curves`]: Weierstrass curves and exhaustive point enumeration.
//! - [`isogeny`]: the normalized pair, characters, Tate pairing, image oracle.
//! - [`charsums`]: the weighted sums, error terms, and classical identities.
//! - [`classnumber`]: reduced binary quadratic form counting.
//! - [`cm`]: the degree-2 CM endomorphisms for -1, -2, -7.
//! - [`congruence`]: where the error term vanishes, as congruence classes.

pub mod charsums;
pub mod classnumber;
pub mod cm;
pub mod congruence;
pub mod curves;
pub mod error;
pub mod isogeny;
pub mod modular;

pub use charsums::SumReport;
pub use classnumber::QuadForm;
pub use cm::{CmCase, CoordChange, Minus7Report};
pub use congruence::VanishingReport;
pub use curves::{good_reduction_pair, CubicCurve, CurvePoint};
pub use error::{Error, Result};
pub use isogeny::{CharacterValue, Direction, TwoIsogenyPair};
pub use modular::{FieldElement, Prime};
