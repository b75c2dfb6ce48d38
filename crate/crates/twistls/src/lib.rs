//! Circuit-level simulation and analysis of twist-based lattice surgery on
//! rotated surface codes.
//!
//! The crate builds merged surface-code patches for multi-qubit logical Pauli
//! measurements (`Z⊗Z`, `Y⊗Y`, `Y⊗Y⊗Y⊗Y`), synthesizes and validates the
//! stabilizer measurement circuits including two-ancilla GHZ circuits for
//! elongated checks and twist defects, runs biased circuit-level Pauli-frame
//! Monte Carlo with minimum-weight perfect-matching decoding, and provides the
//! failure-rate ansatz fitting and round-count (`d_m`) selection machinery.

pub mod analysis;
pub mod decoder;
pub mod gf2;
pub mod lattice;
pub mod noise;
pub mod pauli;
pub mod schedule;
pub mod sim;
pub mod verify;

pub use pauli::{
    conjugate, in_group, min_weight_logical, CliffordGate, GeneratorSet, GroupLabel, Letter,
    PauliOperator, PauliRestriction, Qubit, WeightSearch,
};
