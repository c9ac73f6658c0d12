//! Exact-arithmetic certification for split parabolic (Higgs) bundles on the
//! projective line, together with the quantum Schubert calculus needed to
//! decide SU(n) Deligne-Simpson existence.
//!
//! Everything is computed in arbitrary-precision rationals; no operation ever
//! rounds. The crate is organized around five areas:
//!
//! * [`arith`] - rational numbers, parabolic weight systems and the two
//!   genericity certifications;
//! * [`parabolic`] - split-model parabolic bundles: degrees, slopes, Hom
//!   bundles and cohomology on the projective line;
//! * [`higgs`] - graded Higgs models, the minimal-energy (Hodge length one)
//!   criterion and the degree-bound pipeline;
//! * [`families`] - constructors and full certification for the two explicit
//!   two-step families;
//! * [`schubert`] - Littlewood-Richardson and rim-hook combinatorics,
//!   Gromov-Witten invariants of Grassmannians, and the Deligne-Simpson
//!   existence checker with its certificates.

pub mod arith;
pub mod error;
pub mod families;
pub mod higgs;
pub mod parabolic;
pub mod schubert;

pub use arith::{Rat, SUnClass, WeightSystem};
pub use error::Error;
