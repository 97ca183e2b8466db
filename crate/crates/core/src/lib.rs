//! Quivers with relations attached to parabolic subgroups of semisimple
//! complex Lie groups, the parameter calculus of dimensional reduction, and
//! stability checks for the resulting quiver representations.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootsys`]: Cartan data, roots, coroot pairings, Chevalley constants.
//! * [`parabolic`]: the Levi/nilradical split for a set `Σ` of simple roots.
//! * [`charring`]: Levi characters, Weyl dimensions, isotypic multiplicities.
//! * [`quiverbuild`]: the quiver `(Q, K)` on a finite window of weights.
//! * [`params`]: slopes and the `τ`, `τ′`, `σ` conversions.
//! * [`quiverrep`]: representations, relation checks, exact stability over `F_p`.
//! * [`vortexsolve`]: moment-map flow for the point-base vortex equations.
//!
//! ```
//! use pquiver::parabolic::build_parabolic;
//! use pquiver::rootsys::build_root_system;
//!
//! let rs = build_root_system("A2".parse().unwrap()).unwrap();
//! let p = build_parabolic(&rs, &[1]).unwrap();
//! assert_eq!(p.nilradical.len(), 2);
//! ```

pub mod charring;
pub mod chevalley;
pub mod cli;
pub mod error;
pub mod examples;
pub mod linalg;
pub mod parabolic;
pub mod params;
pub mod quiverbuild;
pub mod quiverrep;
pub mod rootsys;
pub mod vortexsolve;
pub mod weight;

pub use error::{Error, Result};
pub use weight::{Rational, Weight};
