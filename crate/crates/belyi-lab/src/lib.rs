//! Computational laboratory for random Belyi surfaces.
//!
//! A random k-regular graph with a random orientation is encoded by a pair of
//! permutations on N = kn half-edges: β (vertex rotations, a product of
//! k-cycles) and α (the edge matching, a fixed-point-free involution). Faces
//! of the associated surface are the cycles of φ = βα; the genus follows from
//! Euler's formula. This crate samples that model, computes the exact law of
//! the cycle type of βα by symmetric-group character theory, bounds its total
//! variation distance to uniform, and checks the Poisson–Dirichlet behaviour
//! of normalized face lengths against stick-breaking samples.
//!
//! Modules map one-to-one onto the subsystems:
//! - [`perm`]: permutation algebra and conjugacy-class sampling;
//! - [`partition`]: integer partitions (cycle types, character labels);
//! - [`surface`]: the oriented-graph model, faces, genus, spectra;
//! - [`symrep`]: hooks, dimensions, Murnaghan–Nakayama characters, bounds;
//! - [`mixing`]: exact convolution law, total variation, the
//!   character-ratio upper bound;
//! - [`pd`]: stick-breaking samples and face-statistics comparisons;
//! - [`runner`]: experiment configuration, persistence, deterministic
//!   parallel seeding ([`stream`]);
//! - [`verify`]: the end-to-end verification suite behind `belyi-lab verify`.

pub mod error;
pub mod mixing;
pub mod partition;
pub mod pd;
pub mod perm;
pub mod runner;
pub mod stats;
pub mod stream;
pub mod surface;
pub mod symrep;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{CycleType, Partition};
pub use perm::Permutation;
