use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{partial_trace, QubitDensity, Subsystem, TwoQubitDensity};
use crate::tradeoff::family_state;

/// Independent single-qubit depolarizing probability applied to each qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    p_depol: f64,
}

impl NoiseConfig {
    pub const NOISELESS: NoiseConfig = NoiseConfig { p_depol: 0.0 };

    pub fn new(p_depol: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_depol) {
            return Err(Error::domain(format!(
                "depolarizing probability {p_depol} outside [0, 1]"
            )));
        }
        Ok(NoiseConfig { p_depol })
    }

    pub fn p_depol(&self) -> f64 {
        self.p_depol
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig { p_depol: 0.0076 }
    }
}

/// `ρ → (1−p)ρ + p·(I/2 on the qubit)`, applied to A and then to B. Local
/// Bloch vectors shrink by `1−p`, the correlation matrix by `(1−p)²`.
pub fn depolarize(rho: &TwoQubitDensity, noise: NoiseConfig) -> TwoQubitDensity {
    let p = noise.p_depol;
    let mixed = QubitDensity::maximally_mixed();
    let on_a = {
        let rest = TwoQubitDensity::product(&mixed, &partial_trace(rho, Subsystem::B));
        TwoQubitDensity::mixture(&[(1.0 - p, rho), (p, &rest)]).expect("valid weights")
    };
    let rest = TwoQubitDensity::product(&partial_trace(&on_a, Subsystem::A), &mixed);
    TwoQubitDensity::mixture(&[(1.0 - p, &on_a), (p, &rest)]).expect("valid weights")
}

pub fn noisy_state(beta: f64, noise: NoiseConfig) -> Result<TwoQubitDensity> {
    Ok(depolarize(&family_state(beta)?.density(), noise))
}
