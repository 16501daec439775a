use nalgebra::{Matrix2, Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Negative corrected probabilities down to this magnitude are clipped.
pub const NEGATIVE_CLIP_TOL: f64 = 0.05;

/// Single-qubit readout fidelities `f0 = P(read 0 | 0)`, `f1 = P(read 1 | 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadoutFidelity {
    f0: f64,
    f1: f64,
}

impl ReadoutFidelity {
    pub const IDEAL: ReadoutFidelity = ReadoutFidelity { f0: 1.0, f1: 1.0 };

    /// Both fidelities must lie in `(0.5, 1]`, which keeps `F` invertible.
    pub fn new(f0: f64, f1: f64) -> Result<Self> {
        for f in [f0, f1] {
            if !(f > 0.5 && f <= 1.0) {
                return Err(Error::domain(format!(
                    "readout fidelity {f} outside (0.5, 1]"
                )));
            }
        }
        Ok(ReadoutFidelity { f0, f1 })
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn f1(&self) -> f64 {
        self.f1
    }

    /// Column-stochastic confusion matrix `[[f0, 1−f1], [1−f0, f1]]`.
    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.f0, 1.0 - self.f1, 1.0 - self.f0, self.f1)
    }

    /// Observed distribution of a single qubit with true distribution `p`.
    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let q = self.matrix() * nalgebra::Vector2::from(p);
        [q[0], q[1]]
    }
}

impl Default for ReadoutFidelity {
    fn default() -> Self {
        ReadoutFidelity::IDEAL
    }
}

fn kron(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Matrix4<f64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// `q = (F_A ⊗ F_B) p` over outcomes `[00, 01, 10, 11]`.
pub fn corrupt_readout(p: [f64; 4], fa: ReadoutFidelity, fb: ReadoutFidelity) -> [f64; 4] {
    (kron(&fa.matrix(), &fb.matrix()) * Vector4::from(p)).into()
}

/// `p = (F_A⁻¹ ⊗ F_B⁻¹) q`. Small negative entries are clipped and the
/// result renormalised; larger ones indicate data inconsistent with the
/// stated fidelities.
pub fn correct_readout(q: [f64; 4], fa: ReadoutFidelity, fb: ReadoutFidelity) -> Result<[f64; 4]> {
    let inv = |f: ReadoutFidelity| {
        f.matrix()
            .try_inverse()
            .filter(|_| (f.f0 + f.f1 - 1.0).abs() > 1e-12)
            .ok_or_else(|| Error::domain("readout confusion matrix is singular"))
    };
    let p: [f64; 4] = (kron(&inv(fa)?, &inv(fb)?) * Vector4::from(q)).into();
    let worst = p.iter().copied().fold(0.0_f64, f64::min);
    if worst < -NEGATIVE_CLIP_TOL {
        return Err(Error::DataQuality(format!(
            "corrected probability {worst} below -{NEGATIVE_CLIP_TOL}"
        )));
    }
    if worst >= 0.0 {
        return Ok(p);
    }
    let clipped = p.map(|v| v.clamp(0.0, 1.0));
    let total: f64 = clipped.iter().sum();
    Ok(clipped.map(|v| v / total))
}
