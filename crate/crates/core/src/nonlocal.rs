//! Correlation matrix, maximal CHSH violation and the memory-assisted
//! entropic bound for two-qubit states.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    joint_probs, kron, pauli, shannon_entropy, BlochVector, MeasurementAxis, TwoQubitDensity,
};

const DEGENERACY_TOL: f64 = 1e-9;

/// `T_jk = tr(ρ σⱼ ⊗ σₖ)`, rows indexing Alice's Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationMatrix {
    t: Matrix3<f64>,
}

impl CorrelationMatrix {
    /// Rejects matrices with a singular value above `1 + 1e-9`.
    pub fn new(t: Matrix3<f64>) -> Result<Self> {
        let top = t.singular_values().max();
        if top > 1.0 + 1e-9 {
            return Err(Error::domain(format!("singular value {top} exceeds 1")));
        }
        Ok(CorrelationMatrix { t })
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.t
    }

    /// `aᵀ T b = ⟨(a·σ) ⊗ (b·σ)⟩`.
    pub fn correlator(&self, a: MeasurementAxis, b: MeasurementAxis) -> f64 {
        (to_vec(a.vector()).transpose() * self.t * to_vec(b.vector()))[0]
    }
}

fn to_vec(v: BlochVector) -> Vector3<f64> {
    Vector3::new(v.x, v.y, v.z)
}

fn from_vec(v: &Vector3<f64>) -> BlochVector {
    BlochVector::new(v[0], v[1], v[2])
}

pub fn correlation_matrix(rho: &TwoQubitDensity) -> CorrelationMatrix {
    let s = pauli();
    let t = Matrix3::from_fn(|j, k| rho.trace_with(&kron(&s[j], &s[k])));
    CorrelationMatrix { t }
}

/// Eigenpairs of `TᵀT` in descending order. Inside a degenerate eigenspace
/// the basis is fixed by projecting ẑ, x̂, ŷ (in that order) onto it; each
/// vector's first nonzero component is made positive.
fn sorted_eigenpairs(t: &CorrelationMatrix) -> [(f64, Vector3<f64>); 3] {
    let ttt = t.t.transpose() * t.t;
    let eig = SymmetricEigen::new(ttt);
    let mut pairs: Vec<(f64, Vector3<f64>)> = (0..3)
        .map(|i| {
            (
                eig.eigenvalues[i].max(0.0),
                eig.eigenvectors.column(i).into_owned(),
            )
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let probes = [Vector3::z(), Vector3::x(), Vector3::y()];
    let mut out = Vec::with_capacity(3);
    let mut start = 0;
    while start < 3 {
        let mut end = start + 1;
        while end < 3 && (pairs[start].0 - pairs[end].0).abs() < DEGENERACY_TOL {
            end += 1;
        }
        if end - start == 1 {
            out.push(pairs[start]);
        } else {
            let group = &pairs[start..end];
            let mut basis: Vec<Vector3<f64>> = Vec::new();
            for probe in probes {
                if basis.len() == group.len() {
                    break;
                }
                let mut v: Vector3<f64> = group.iter().map(|(_, e)| e * e.dot(&probe)).sum();
                for b in &basis {
                    v -= b * b.dot(&v);
                }
                if v.norm() > 1e-6 {
                    basis.push(v.normalize());
                }
            }
            for (k, v) in basis.into_iter().enumerate() {
                out.push((group[k].0, v));
            }
        }
        start = end;
    }
    for pair in &mut out {
        if let Some(first) = pair.1.iter().find(|c| c.abs() > 1e-12) {
            if *first < 0.0 {
                pair.1 = -pair.1;
            }
        }
    }
    [out[0], out[1], out[2]]
}

/// `M` = sum of the two largest eigenvalues of `TᵀT`.
pub fn horodecki_parameter(t: &CorrelationMatrix) -> f64 {
    let p = sorted_eigenpairs(t);
    p[0].0 + p[1].0
}

/// `2√M`.
pub fn chsh_max(rho: &TwoQubitDensity) -> f64 {
    2.0 * horodecki_parameter(&correlation_matrix(rho)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChshSetting {
    pub a0: MeasurementAxis,
    pub a1: MeasurementAxis,
    pub b0: MeasurementAxis,
    pub b1: MeasurementAxis,
}

/// Some unit vector orthogonal to `v`.
fn perpendicular(v: &Vector3<f64>) -> Vector3<f64> {
    let probe = if v[0].abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    (probe - v * v.dot(&probe)).normalize()
}

/// Settings attaining `2√M`: Bob's axes split the top two eigenvectors of
/// `TᵀT` by the angle `tanχ = √(m2/m1)`, Alice's follow as `T c / |T c|`.
pub fn optimal_settings(rho: &TwoQubitDensity) -> Result<ChshSetting> {
    let t = correlation_matrix(rho);
    let [(m1, c1), (m2, c2), _] = sorted_eigenpairs(&t);
    if m1 + m2 <= 1e-14 {
        return Err(Error::domain(
            "correlation matrix vanishes; no optimal CHSH setting",
        ));
    }
    let chi = (m2 / m1).sqrt().atan();
    let (cos, sin) = (chi.cos(), chi.sin());
    let b0 = c1 * cos + c2 * sin;
    let b1 = c1 * cos - c2 * sin;
    let alice = |c: &Vector3<f64>, other: Option<&Vector3<f64>>| {
        let tc = t.t * c;
        if tc.norm() > 1e-12 {
            tc.normalize()
        } else {
            match other {
                Some(o) => perpendicular(o),
                None => perpendicular(&Vector3::z()),
            }
        }
    };
    let a0 = alice(&c1, None);
    let a1 = alice(&c2, Some(&a0));
    let axis = |v: &Vector3<f64>| MeasurementAxis::new(from_vec(v));
    Ok(ChshSetting {
        a0: axis(&a0)?,
        a1: axis(&a1)?,
        b0: axis(&b0)?,
        b1: axis(&b1)?,
    })
}

/// `|⟨A0B0⟩ + ⟨A0B1⟩ + ⟨A1B0⟩ − ⟨A1B1⟩|`.
pub fn chsh_value(rho: &TwoQubitDensity, s: &ChshSetting) -> f64 {
    let t = correlation_matrix(rho);
    let e = |a, b| t.correlator(a, b);
    (e(s.a0, s.b0) + e(s.a0, s.b1) + e(s.a1, s.b0) - e(s.a1, s.b1)).abs()
}

/// Bob's measurements paired with `R` (`mb`) and with `Q` (`mbp`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoryMeasurementPair {
    pub mb: MeasurementAxis,
    pub mbp: MeasurementAxis,
}

/// `H(X|Y)` from the joint outcome distribution of `x` on A and `y` on B.
pub fn measured_conditional_entropy(
    rho: &TwoQubitDensity,
    x: MeasurementAxis,
    y: MeasurementAxis,
) -> f64 {
    let p = joint_probs(rho, x, y);
    shannon_entropy(&p) - shannon_entropy(&[p[0] + p[2], p[1] + p[3]])
}

/// `H(Q|MB′) + H(R|MB) − 1`; negative values certify entanglement.
pub fn eur_memory_bound(
    rho: &TwoQubitDensity,
    q: MeasurementAxis,
    r: MeasurementAxis,
    mbp: MeasurementAxis,
    mb: MeasurementAxis,
) -> f64 {
    measured_conditional_entropy(rho, q, mbp) + measured_conditional_entropy(rho, r, mb) - 1.0
}

const GRID_STEPS: usize = 60;

/// Minimises `f` over the hemisphere `θ ∈ [−π/2, π/2]`, `φ ∈ [0, π)`: a
/// π/60 grid followed by a compass search. Near-ties (1e-12) keep the
/// lexicographically smallest `(θ, φ)`.
fn minimise_axis(f: impl Fn(MeasurementAxis) -> f64) -> (MeasurementAxis, f64) {
    let step = PI / GRID_STEPS as f64;
    let eval = |th: f64, ph: f64| f(MeasurementAxis::from_angles(th, ph));
    let mut best = (-FRAC_PI_2, 0.0, f64::INFINITY);
    for i in 0..=GRID_STEPS {
        let th = -FRAC_PI_2 + i as f64 * step;
        for j in 0..GRID_STEPS {
            let ph = j as f64 * step;
            let v = eval(th, ph);
            if v < best.2 - 1e-12 {
                best = (th, ph, v);
            }
        }
    }
    let (mut th, mut ph, mut val) = best;
    let mut delta = step;
    while delta > 1e-9 {
        let mut moved = false;
        for (dt, dp) in [(-delta, 0.0), (delta, 0.0), (0.0, -delta), (0.0, delta)] {
            let (nt, np) = ((th + dt).clamp(-FRAC_PI_2, FRAC_PI_2), ph + dp);
            let v = eval(nt, np);
            if v < val - 1e-15 {
                (th, ph, val) = (nt, np, v);
                moved = true;
                break;
            }
        }
        if !moved {
            delta *= 0.5;
        }
    }
    (MeasurementAxis::from_angles(th, ph), val)
}

/// Minimises [`eur_memory_bound`] over Bob's two axes. The two conditional
/// entropies depend on disjoint arguments, so each is minimised separately.
pub fn optimize_memory_measurements(
    rho: &TwoQubitDensity,
    q: MeasurementAxis,
    r: MeasurementAxis,
) -> (MemoryMeasurementPair, f64) {
    let (mbp, hq) = minimise_axis(|b| measured_conditional_entropy(rho, q, b));
    let (mb, hr) = minimise_axis(|b| measured_conditional_entropy(rho, r, b));
    (MemoryMeasurementPair { mb, mbp }, hq + hr - 1.0)
}
