//! Exact-arithmetic laboratory for k-sets of planar point sets.
//!
//! The crate computes, over arbitrary-precision rationals:
//!
//! * directed k-sets of a point set, by a brute-force separating-line oracle;
//! * the dual line arrangement, the `V_j` vertex classification, and k-levels;
//! * the decomposition of the arrangement below the k-level into k concave
//!   chains, their pairwise crossings, common tangents, and the
//!   tangent-to-crossing charging;
//! * the Dey graph `G`, its crossing number, and the crossing-lemma threshold;
//! * a per-instance [`verify::Report`] that checks every identity and
//!   inequality in the chain `c t^3 / n^2 < X < nk` as a separate verdict.
//!
//! Floats never participate in a decision; they appear only when formatting
//! SVG coordinates.
//!
//! With the default `parallel` feature the inner loops (vertex classification,
//! pair-line scans, crossing tests, sweep trials) run on rayon; building with
//! `--no-default-features` selects a sequential fallback with byte-identical
//! output.

pub mod arrangement;
pub mod chains;
mod error;
pub mod fileio;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod instance;
pub mod ksets;
mod par;
pub mod svg;
pub mod verify;

pub use error::Error;
