//! Shot-level replica of the two-qubit experiments.
//!
//! A family state is prepared by a six-gate circuit, degraded by local
//! depolarizing noise, measured in product bases with finite shots, passed
//! through a readout confusion matrix and corrected again. Repeating this
//! gives means and standard errors comparable to the tabulated data.

mod circuit;
mod experiment;
mod noise;
mod readout;

pub use circuit::{prep_circuit, run_circuit, Gate};
pub use experiment::{
    closed_form, run_experiment, sample_counts, sample_multinomial, ClosedForm, EntropyEstimator,
    Estimate, ExperimentConfig, ExperimentResult, Mode, ShotCounts,
};
pub use noise::{depolarize, noisy_state, NoiseConfig};
pub use readout::{correct_readout, corrupt_readout, ReadoutFidelity, NEGATIVE_CLIP_TOL};
