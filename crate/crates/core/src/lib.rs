//! Preparation contextuality of qubit states and its trade-off with
//! two-qubit entanglement and Bell nonlocality.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: Bloch vectors, density matrices, entropies, partial traces.
//! * [`contextuality`]: optimal four-state sets and the contextuality criteria.
//! * [`ontic`]: explicit four-ontic-state noncontextual models and an exact
//!   feasibility oracle.
//! * [`nonlocal`]: correlation matrices, maximal CHSH values and the
//!   memory-assisted entropic bound.
//! * [`tradeoff`]: the two trade-off functions and β-sweeps of the benchmark
//!   state family.
//! * [`sim`]: a shot-level replica of the two-qubit experiments (circuit,
//!   depolarizing noise, readout errors, repeated sampling).

pub mod contextuality;
pub mod error;
pub mod nonlocal;
pub mod ontic;
pub mod qstate;
pub mod sim;
pub mod tradeoff;

pub use contextuality::{FourStateSet, OptimalFrame, RegionLabel, Symmetry, Verdict, VerdictKind};
pub use error::{Error, Result};
pub use nonlocal::{ChshSetting, CorrelationMatrix, MemoryMeasurementPair};
pub use ontic::{NoncontextualModel, OnticDistribution, VerificationReport};
pub use qstate::{
    BlochVector, DensityMatrix, MeasurementAxis, ProbPair, QubitDensity, StateVector, Subsystem,
    TwoQubitDensity,
};
pub use sim::{ExperimentConfig, Mode, NoiseConfig, ReadoutFidelity, ShotCounts};
pub use tradeoff::{FamilyParams, TradeoffRow};
