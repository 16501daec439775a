//! Optimal four-state sets and the preparation-contextuality criteria.
//!
//! For a qubit state `s1` the optimal pair of complementary observables is
//! `Q ∥ s1` and any `R ⊥ Q`. The set generated by reflecting `s1` across the
//! `M1 = (Q−R)/√2` and `M2 = (Q+R)/√2` axes (the square group `B₂`) is
//! contextual exactly when `⟨M1⟩ = |s1|/√2 > 1/2`, equivalently when
//! `H(Q) + H(R) < 1 + C` with `C = h((2−√2)/4)`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{h, measurement_probs, shannon_entropy_of, BlochVector, MeasurementAxis};

const ORTHO_TOL: f64 = 1e-9;

/// Witnesses within this distance of their threshold are treated as lying
/// on it, and the boundary is noncontextual.
pub const BOUNDARY_TOL: f64 = 1e-12;

fn below(witness: f64, threshold: f64) -> bool {
    witness < threshold - BOUNDARY_TOL
}

fn above(witness: f64, threshold: f64) -> bool {
    witness > threshold + BOUNDARY_TOL
}

/// `C = h((2−√2)/4) ≈ 0.6009`.
pub fn contextuality_constant() -> f64 {
    h((2.0 - SQRT_2) / 4.0)
}

/// Frame of the optimal observables for one state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalFrame {
    pub q: MeasurementAxis,
    pub r: MeasurementAxis,
    pub m1: MeasurementAxis,
    pub m2: MeasurementAxis,
    pub m3: MeasurementAxis,
}

impl OptimalFrame {
    /// Builds `M1, M2, M3` from an orthogonal pair `(Q, R)`.
    pub fn from_pair(q: MeasurementAxis, r: MeasurementAxis) -> Result<Self> {
        if !q.is_orthogonal_to(r, ORTHO_TOL) {
            return Err(Error::domain("Q and R must be orthogonal"));
        }
        let (qv, rv) = (q.vector(), r.vector());
        let m1 = MeasurementAxis::new((qv - rv) * FRAC_1_SQRT_2)?;
        let m2 = MeasurementAxis::new((qv + rv) * FRAC_1_SQRT_2)?;
        let m3 = MeasurementAxis::new(m1.vector().cross(m2.vector()))?;
        Ok(OptimalFrame { q, r, m1, m2, m3 })
    }
}

/// `Q = s1/|s1|` and `R` the normalised component of `ẑ` orthogonal to `Q`
/// (x̂ when `Q ∥ ±ẑ`); `Q = ẑ, R = x̂` for the maximally mixed state.
pub fn optimal_frame(s1: BlochVector) -> OptimalFrame {
    let q = s1.normalized().unwrap_or(MeasurementAxis::Z.vector());
    let z = MeasurementAxis::Z.vector();
    let r = if q.dot(z).abs() < 1.0 - 1e-9 {
        z - q * q.dot(z)
    } else {
        MeasurementAxis::X.vector() - q * q.x
    };
    let q = MeasurementAxis::new(q).expect("unit vector");
    let r = MeasurementAxis::new(r).expect("nonzero orthogonal component");
    OptimalFrame::from_pair(q, r).expect("orthogonal by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    B2,
    A1Sq,
}

/// Four qubit states generated from `states[0]` by reflections across the
/// `m1` and `m2` axes: `s2 = r1(s1)`, `s3 = r1 r2(s1)`, `s4 = r2(s1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourStateSet {
    pub states: [BlochVector; 4],
    pub m1: MeasurementAxis,
    pub m2: MeasurementAxis,
    pub frame: Option<OptimalFrame>,
    pub symmetry: Symmetry,
}

fn reflect(v: BlochVector, axis: MeasurementAxis) -> BlochVector {
    v - axis.vector() * (2.0 * axis.dot(v))
}

fn orbit(s1: BlochVector, m1: MeasurementAxis, m2: MeasurementAxis) -> [BlochVector; 4] {
    [
        s1,
        reflect(s1, m1),
        reflect(reflect(s1, m2), m1),
        reflect(s1, m2),
    ]
}

impl FourStateSet {
    /// Largest violation of the equal-predictability sign pattern and of the
    /// preparation equivalence `(s1+s3)/2 = (s2+s4)/2`. For `B₂` sets the
    /// extra condition `⟨M1⟩ = ⟨M2⟩` on `s1` is included.
    pub fn relation_residual(&self) -> f64 {
        let [s1, s2, s3, s4] = self.states;
        let e1 = |s: BlochVector| self.m1.dot(s);
        let e2 = |s: BlochVector| self.m2.dot(s);
        let mut worst = [
            e1(s1) + e1(s2),
            e1(s1) + e1(s3),
            e1(s1) - e1(s4),
            e2(s1) - e2(s2),
            e2(s1) + e2(s3),
            e2(s1) + e2(s4),
        ]
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        worst = worst.max(((s1 + s3) * 0.5).max_abs_diff((s2 + s4) * 0.5));
        if self.symmetry == Symmetry::B2 {
            worst = worst.max((e1(s1) - e2(s1)).abs());
        }
        worst
    }
}

/// The optimal `B₂` set of `s1`.
pub fn b2_orbit_set(s1: BlochVector) -> Result<FourStateSet> {
    s1.check_physical()?;
    let frame = optimal_frame(s1);
    Ok(FourStateSet {
        states: orbit(s1, frame.m1, frame.m2),
        m1: frame.m1,
        m2: frame.m2,
        frame: Some(frame),
        symmetry: Symmetry::B2,
    })
}

/// The `A₁²` set of `s1` for an arbitrary orthogonal pair `(M1′, M2′)`; the
/// component along `M1′ × M2′` is left untouched.
pub fn a1sq_orbit_set(
    s1: BlochVector,
    m1p: MeasurementAxis,
    m2p: MeasurementAxis,
) -> Result<FourStateSet> {
    s1.check_physical()?;
    if !m1p.is_orthogonal_to(m2p, ORTHO_TOL) {
        return Err(Error::domain("M1' and M2' must be orthogonal"));
    }
    Ok(FourStateSet {
        states: orbit(s1, m1p, m2p),
        m1: m1p,
        m2: m2p,
        frame: None,
        symmetry: Symmetry::A1Sq,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    Contextual,
    Noncontextual,
    Inconclusive,
}

/// Outcome of a criterion together with the compared quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: f64,
    pub threshold: f64,
}

/// `H(Q) + H(R) < 1 + C` with the optimal frame of `s1`.
pub fn faithful_criterion(s1: BlochVector) -> Result<Verdict> {
    s1.check_physical()?;
    let frame = optimal_frame(s1);
    let witness = shannon_entropy_of(s1, frame.q) + shannon_entropy_of(s1, frame.r);
    let threshold = 1.0 + contextuality_constant();
    let kind = if below(witness, threshold) {
        VerdictKind::Contextual
    } else {
        VerdictKind::Noncontextual
    };
    Ok(Verdict {
        kind,
        witness,
        threshold,
    })
}

/// `⟨M1⟩ = |s1|/√2 > 1/2`.
pub fn expectation_criterion(s1: BlochVector) -> Result<Verdict> {
    s1.check_physical()?;
    let witness = optimal_frame(s1).m1.dot(s1);
    let kind = if above(witness, 0.5) {
        VerdictKind::Contextual
    } else {
        VerdictKind::Noncontextual
    };
    Ok(Verdict {
        kind,
        witness,
        threshold: 0.5,
    })
}

/// `min(H(Q′), H(R′)) < C` for an arbitrary complementary pair; never
/// concludes noncontextuality.
pub fn sufficient_criterion(
    s1: BlochVector,
    qp: MeasurementAxis,
    rp: MeasurementAxis,
) -> Result<Verdict> {
    s1.check_physical()?;
    if !qp.is_orthogonal_to(rp, ORTHO_TOL) {
        return Err(Error::domain("Q' and R' must be orthogonal"));
    }
    let witness = shannon_entropy_of(s1, qp).min(shannon_entropy_of(s1, rp));
    let threshold = contextuality_constant();
    let kind = if below(witness, threshold) {
        VerdictKind::Contextual
    } else {
        VerdictKind::Inconclusive
    };
    Ok(Verdict {
        kind,
        witness,
        threshold,
    })
}

/// Joint predictability `|⟨M1′⟩| + |⟨M2′⟩|` of the `A₁²` set, contextual
/// above 1.
pub fn joint_predictability(
    s1: BlochVector,
    m1p: MeasurementAxis,
    m2p: MeasurementAxis,
) -> Result<Verdict> {
    s1.check_physical()?;
    if !m1p.is_orthogonal_to(m2p, ORTHO_TOL) {
        return Err(Error::domain("M1' and M2' must be orthogonal"));
    }
    let witness = m1p.dot(s1).abs() + m2p.dot(s1).abs();
    let kind = if above(witness, 1.0) {
        VerdictKind::Contextual
    } else {
        VerdictKind::Noncontextual
    };
    Ok(Verdict {
        kind,
        witness,
        threshold: 1.0,
    })
}

/// `|P0 − P1| − √2/2` for the optimal measurement `Q` (may be negative).
pub fn probability_difference_margin(s1: BlochVector) -> Result<f64> {
    s1.check_physical()?;
    let p = measurement_probs(s1, optimal_frame(s1).q);
    Ok((p.p_plus - p.p_minus).abs() - FRAC_1_SQRT_2)
}

/// `D_f = max(|P0 − P1| − √2/2, 0)`; positive values witness contextuality.
pub fn probability_difference_indicator(s1: BlochVector) -> Result<f64> {
    Ok(probability_difference_margin(s1)?.max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    Nonphysical,
    ContextualWitnessed,
    Inconclusive,
}

/// Inverse of `h` on the branch `[0, 1/2]`, by bisection to 1e-12.
pub fn inverse_binary_entropy(target: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&target) {
        return Err(Error::domain(format!("entropy {target} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Places a pair of complementary-measurement entropies in the regional
/// diagram: nonphysical when the implied expectations leave the Bloch disc,
/// otherwise witnessed when either entropy is below `C`.
pub fn classify_region(h_q: f64, h_r: f64) -> Result<RegionLabel> {
    let x = 1.0 - 2.0 * inverse_binary_entropy(h_q)?;
    let y = 1.0 - 2.0 * inverse_binary_entropy(h_r)?;
    Ok(if x * x + y * y > 1.0 + 1e-9 {
        RegionLabel::Nonphysical
    } else if h_q.min(h_r) < contextuality_constant() {
        RegionLabel::ContextualWitnessed
    } else {
        RegionLabel::Inconclusive
    })
}
