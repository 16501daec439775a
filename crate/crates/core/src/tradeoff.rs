//! The two trade-off functions between preparation contextuality and
//! entanglement or nonlocality, and sweeps over the benchmark family
//! `|ψ(β)⟩ = √(1−β)|φ1⟩|0⟩ + √β|φ2⟩|1⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::contextuality::optimal_frame;
use crate::error::{Error, Result};
use crate::nonlocal::{chsh_max, eur_memory_bound};
use crate::qstate::{
    c, conditional_entropy, partial_trace, shannon_entropy_of, BlochVector, MeasurementAxis,
    StateVector, Subsystem, TwoQubitDensity,
};

/// The thirteen β values of the benchmark tables.
pub const DEFAULT_BETAS: [f64; 13] = [
    0.0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.16, 0.21, 0.26, 0.31, 0.37, 0.50,
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    beta: f64,
}

impl FamilyParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&beta) {
            return Err(Error::domain(format!("beta = {beta} outside [0, 0.5]")));
        }
        Ok(FamilyParams { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        1.0 - self.beta
    }

    /// Alice's complementary pair `Q = (X+Z)/√2`, `R = (−X+Z)/√2`, aligned
    /// with `|φ1⟩` for every β (including β = 1/2, where `ρ_A` carries no
    /// direction).
    pub fn measurement_axes(&self) -> (MeasurementAxis, MeasurementAxis) {
        family_axes()
    }

    pub fn state(&self) -> StateVector {
        let (cs, sn) = ((PI / 8.0).cos(), (PI / 8.0).sin());
        let (a, b) = (self.alpha().sqrt(), self.beta.sqrt());
        // |φ1⟩|0⟩ = cs|00⟩ + sn|10⟩, |φ2⟩|1⟩ = sn|01⟩ − cs|11⟩.
        StateVector::from_amplitudes_unchecked([c(a * cs), c(b * sn), c(a * sn), c(-b * cs)])
    }
}

pub(crate) fn family_axes() -> (MeasurementAxis, MeasurementAxis) {
    let q = BlochVector::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2);
    let r = BlochVector::new(-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2);
    (
        MeasurementAxis::new(q).unwrap(),
        MeasurementAxis::new(r).unwrap(),
    )
}

pub fn family_state(beta: f64) -> Result<StateVector> {
    Ok(FamilyParams::new(beta)?.state())
}

/// `H(Q) + H(R)` of Alice's reduced state in its optimal frame.
pub fn h_qr(rho: &TwoQubitDensity) -> f64 {
    let s = partial_trace(rho, Subsystem::A).bloch();
    let f = optimal_frame(s);
    shannon_entropy_of(s, f.q) + shannon_entropy_of(s, f.r)
}

/// `H_QR(A) + S(A|B)`, bounded by `[1, 3]`.
pub fn theorem2_value(rho: &TwoQubitDensity) -> f64 {
    h_qr(rho) + conditional_entropy(rho)
}

/// `H_QR(A) + (2 − ⟨B⟩max)`, bounded by `[1, 4]`.
pub fn theorem3_value(rho: &TwoQubitDensity) -> f64 {
    h_qr(rho) + 2.0 - chsh_max(rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffRow {
    pub beta: f64,
    pub h_qr: f64,
    pub s_ab_bound: f64,
    pub chsh_max: f64,
    pub t2_value: f64,
    pub t3_value: f64,
}

impl TradeoffRow {
    /// Evaluates every column on `rho`, labelled by `beta`. The entropic
    /// bound uses the family axes with Bob measuring `z` and `x`.
    pub fn evaluate(beta: f64, rho: &TwoQubitDensity) -> Self {
        let (q, r) = family_axes();
        TradeoffRow {
            beta,
            h_qr: h_qr(rho),
            s_ab_bound: eur_memory_bound(rho, q, r, MeasurementAxis::Z, MeasurementAxis::X),
            chsh_max: chsh_max(rho),
            t2_value: theorem2_value(rho),
            t3_value: theorem3_value(rho),
        }
    }

    /// All six columns formatted to four decimals.
    pub fn rounded(&self) -> [String; 6] {
        [
            self.beta,
            self.h_qr,
            self.s_ab_bound,
            self.chsh_max,
            self.t2_value,
            self.t3_value,
        ]
        .map(|v| format!("{:.4}", v + 0.0))
    }
}

pub fn sweep(betas: &[f64]) -> Result<Vec<TradeoffRow>> {
    betas
        .iter()
        .map(|&b| Ok(TradeoffRow::evaluate(b, &family_state(b)?.density())))
        .collect()
}
