//! Executable tools around generic rigidity of graphs and clique minors.
//!
//! The crate decides generic `d`-rigidity and `d`-stress-freeness by exact
//! randomized linear algebra over a large prime field, computes exterior and
//! symmetric algebraic shifting of graphs, searches for graph minors with
//! checkable branch-set witnesses, and runs a certifying algorithm that
//! either proves a graph generically `(r-2)`-stress free or exhibits a `K_r`
//! minor.
//!
//! Vertices are labelled `1..=n` throughout.

pub mod catalog;
pub mod certify;
pub mod error;
pub mod field;
pub mod graph;
pub mod minors;
pub mod rigidity;
pub mod shifting;
pub mod surface;

pub use certify::{certify, replay_certificate, Certificate, CertNode, CertifyOutcome, Verify};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldMatrix, GenericConfiguration, PrimeField};
pub use graph::{CliqueSplit, ContractionRecord, Edge, Graph, Vertex};
pub use minors::{has_minor, verify_minor_witness, MinorWitness};
pub use rigidity::{analyze_rigidity, RigidityReport};
pub use shifting::{exterior_shift, symmetric_shift, ShiftKind, ShiftedGraph};

/// Number of independent generic configurations used when the caller does not say.
pub const DEFAULT_TRIALS: usize = 3;

/// Base seed used when the caller does not say; fixed so bare runs reproduce.
pub const DEFAULT_SEED: u64 = 0x5EED_2011_0A1B_C0DE;

/// Seeds for `trials` independent trials derived from `base`.
pub fn trial_seeds(base: u64, trials: usize) -> Vec<u64> {
    (0..trials as u64)
        .map(|t| base.wrapping_add(t.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
        .collect()
}
