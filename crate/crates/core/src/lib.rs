//! Exact computations in the rational Cherednik algebra of the complex
//! reflection groups G(r,p,n) acting on polynomials.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactfield`]: Q(ζ_r) arithmetic and the parameter set.
//! - [`polyring`]: sparse polynomials, the group action, multi-index sorting
//!   data and the triangularity order.
//! - [`reflgroup`]: colored permutations, reflections with root data, descents,
//!   Steinberg weights and descent classes.
//! - [`cherednik`]: Dunkl operators, the elements `z_i`, the Casimir `h` and
//!   t-weights.
//! - [`jack`]: intertwiners and the non-symmetric Jack polynomials `f_μ`.
//! - [`coinv`]: the coinvariant ring, its descent basis and the Hecke-module
//!   decomposition checks.
//! - [`verify`]: operator-identity sweeps shared by the CLI and the tests.
//!
//! Sweeps fan out over rayon when the `parallel` feature is enabled (the
//! default); see [`exec`].

pub mod cherednik;
pub mod coinv;
pub mod error;
pub mod exactfield;
pub mod exec;
pub mod jack;
pub mod polyring;
pub mod reflgroup;
pub mod verify;

pub use error::{Error, Result};
pub use exactfield::{CyclotomicField, CyclotomicNumber, ParameterSet};
