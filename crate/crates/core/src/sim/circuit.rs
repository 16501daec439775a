//! State preparation with five single-qubit rotations and one CZ.
//!
//! `Ry(θ)` on A with `cos(θ/2) = √(1−β)` sets the Schmidt weights; the
//! sandwich `Ry(π/2)_B · CZ · Ry(−π/2)_B` acts as a CNOT from A to B; then
//! `Ry(π/4)·Rz(π)` on A maps `|0⟩, |1⟩` to `|φ1⟩, |φ2⟩` up to a global phase.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{Matrix2, Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qstate::{c, kron, StateVector, Subsystem, C64};
use crate::tradeoff::FamilyParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Ry { qubit: Subsystem, angle: f64 },
    Rz { qubit: Subsystem, angle: f64 },
    Cz,
}

impl Gate {
    pub fn unitary(&self) -> Matrix4<C64> {
        let local = |qubit: Subsystem, u: Matrix2<C64>| match qubit {
            Subsystem::A => kron(&u, &Matrix2::identity()),
            Subsystem::B => kron(&Matrix2::identity(), &u),
        };
        match *self {
            Gate::Ry { qubit, angle } => {
                let (cs, sn) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                local(qubit, Matrix2::new(c(cs), c(-sn), c(sn), c(cs)))
            }
            Gate::Rz { qubit, angle } => {
                let ph = C64::from_polar(1.0, angle / 2.0);
                local(qubit, Matrix2::new(ph.conj(), c(0.0), c(0.0), ph))
            }
            Gate::Cz => Matrix4::from_diagonal(&Vector4::new(c(1.0), c(1.0), c(1.0), c(-1.0))),
        }
    }
}

/// Applies `gates` in order to `|00⟩`.
pub fn run_circuit(gates: &[Gate]) -> StateVector {
    let mut psi = Vector4::new(c(1.0), c(0.0), c(0.0), c(0.0));
    for g in gates {
        psi = g.unitary() * psi;
    }
    StateVector::from_amplitudes_unchecked([psi[0], psi[1], psi[2], psi[3]])
}

/// Gate list for `|ψ(β)⟩` and the state it produces.
pub fn prep_circuit(beta: f64) -> Result<(Vec<Gate>, StateVector)> {
    let params = FamilyParams::new(beta)?;
    let theta = 2.0 * params.alpha().sqrt().acos();
    let gates = vec![
        Gate::Ry {
            qubit: Subsystem::A,
            angle: theta,
        },
        Gate::Ry {
            qubit: Subsystem::B,
            angle: -FRAC_PI_2,
        },
        Gate::Cz,
        Gate::Ry {
            qubit: Subsystem::B,
            angle: FRAC_PI_2,
        },
        Gate::Rz {
            qubit: Subsystem::A,
            angle: PI,
        },
        Gate::Ry {
            qubit: Subsystem::A,
            angle: FRAC_PI_4,
        },
    ];
    let out = run_circuit(&gates);
    Ok((gates, out))
}
