//! Exact arithmetic for curves on smooth quartic K3 surfaces of Picard
//! rank 2, sitting inside either projective 3-space or a smooth quartic
//! 3-fold.
//!
//! Everything is integer arithmetic (`num_bigint`), no floats anywhere:
//!
//! * [`lattice`] — the rank-2 intersection lattice ⟨h, G⟩ with Gram
//!   matrix (4, e; e, s), divisor classes, degree / genus / Euler
//!   characteristic.
//! * [`pell`] — continued fractions of √N and fundamental solutions of
//!   X² − N·Y² = 1, which produce the second (−2)-ray of the Mori cone
//!   for odd e.
//! * [`quadform`] — which integers the lattice form 4x² + 2exy + sy²
//!   represents (Gauss reduction and the cycle of an indefinite form),
//!   null rays, and the certificate that a lattice carries no smooth
//!   rational or elliptic curves.
//! * [`cone`] — extremal rays of the Mori cone per surface family,
//!   nefness, effectivity, and reduction by (−2)-ray base components.
//! * [`cohomology`] — h⁰/h¹/h² of a line bundle on the surface, base
//!   points of nef linear systems, smoothness of general members.
//! * [`classify`] — the verdict on the Hilbert-scheme component through
//!   a curve: generically smooth, generically non-reduced, or out of
//!   scope, with a full precondition ledger.
//! * [`existence`] — which (degree, genus) pairs occur at all, class
//!   enumeration at fixed degree, and the scan for non-reduced
//!   components.
//! * [`cli`] — the `k3curves` command-line front end.

pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod cone;
pub mod existence;
pub mod lattice;
pub mod pell;
pub mod quadform;

pub use classify::{classify_curve, Assumptions, ClassificationReport, HilbertStatus};
pub use cone::{ExtremalRay, MoriCone, SurfaceModel};
pub use lattice::{Ambient, DivisorClass, GeneratorKind, PicardLattice};
