//! Four-ontic-state noncontextual models for `B₂` sets.
//!
//! Ontic states are labelled 1..4. The response functions are fixed:
//! `M1 = +1` on states 2 and 4, `M2 = +1` on states 1 and 2, so that
//! `⟨M1⟩ = (−1, 1, −1, 1)·μ` and `⟨M2⟩ = (1, 1, −1, −1)·μ`. Starting from
//! `μ1 = (a, b, c, d)` the other three distributions are shifts of permuted
//! copies parameterised by `κ, ν, τ`.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DIST_TOL: f64 = 1e-12;
const CHECK_TOL: f64 = 1e-10;

/// `ξ(+1|M1)`, `ξ(+1|M2)`; the `−1` responses are the complements.
pub const RESPONSE_M1_PLUS: [f64; 4] = [0.0, 1.0, 0.0, 1.0];
pub const RESPONSE_M2_PLUS: [f64; 4] = [1.0, 1.0, 0.0, 0.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OnticDistribution {
    pub probs: [f64; 4],
}

impl OnticDistribution {
    pub fn new(probs: [f64; 4]) -> Result<Self> {
        let d = OnticDistribution { probs };
        if !d.is_valid() {
            return Err(Error::domain(format!(
                "{probs:?} is not a probability distribution"
            )));
        }
        Ok(d)
    }

    pub fn is_valid(&self) -> bool {
        self.probs.iter().all(|&p| p >= -DIST_TOL)
            && (self.probs.iter().sum::<f64>() - 1.0).abs() <= CHECK_TOL
    }

    /// `(⟨M1⟩, ⟨M2⟩)` under the fixed response functions.
    pub fn expectations(&self) -> (f64, f64) {
        let e = |resp: &[f64; 4]| -> f64 {
            self.probs
                .iter()
                .zip(resp)
                .map(|(p, r)| p * (2.0 * r - 1.0))
                .sum()
        };
        (e(&RESPONSE_M1_PLUS), e(&RESPONSE_M2_PLUS))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoncontextualModel {
    pub mu: [OnticDistribution; 4],
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub kappa: f64,
    pub nu: f64,
    pub tau: f64,
}

impl NoncontextualModel {
    /// Builds the four distributions from the seven parameters. Only the
    /// shift ranges `κ, ν, τ ∈ [−c, 1−c]` are enforced here; the remaining
    /// conditions are what [`verify_model`] checks.
    pub fn from_parameters([a, b, c, d]: [f64; 4], kappa: f64, nu: f64, tau: f64) -> Result<Self> {
        for (name, v) in [("kappa", kappa), ("nu", nu), ("tau", tau)] {
            if v < -c - DIST_TOL || v > 1.0 - c + DIST_TOL {
                return Err(Error::domain(format!("{name} = {v} outside [-c, 1-c]")));
            }
        }
        let dist = |probs| OnticDistribution { probs };
        Ok(NoncontextualModel {
            mu: [
                dist([a, b, c, d]),
                dist([b + kappa, a - kappa, d - kappa, c + kappa]),
                dist([d - nu, c + nu, b + nu, a - nu]),
                dist([c + tau, d - tau, a - tau, b + tau]),
            ],
            a,
            b,
            c,
            d,
            kappa,
            nu,
            tau,
        })
    }
}

fn check_m(m: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_1_SQRT_2 + 1e-12).contains(&m) {
        return Err(Error::domain(format!("<M1> = {m} outside [0, sqrt(2)/2]")));
    }
    Ok(())
}

/// The symmetric model `c = 0`, `κ = ν = τ = (1−2m)/3` for `m ≤ 1/2`; none
/// exists above.
pub fn construct_model(m: f64) -> Result<Option<NoncontextualModel>> {
    check_m(m)?;
    if m > 0.5 {
        return Ok(None);
    }
    let a = (1.0 - m) / 2.0;
    let shift = (1.0 - 2.0 * m) / 3.0;
    NoncontextualModel::from_parameters([a, m, 0.0, a], shift, shift, shift).map(Some)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub distributions_valid: bool,
    pub predictability_pattern: bool,
    pub preparation_equivalence: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.distributions_valid && self.predictability_pattern && self.preparation_equivalence
    }
}

pub fn verify_model(model: &NoncontextualModel, m: f64) -> VerificationReport {
    let distributions_valid = model.mu.iter().all(OnticDistribution::is_valid);
    let pattern = [(m, m), (-m, m), (-m, -m), (m, -m)];
    let predictability_pattern = model.mu.iter().zip(pattern).all(|(mu, (e1, e2))| {
        let (g1, g2) = mu.expectations();
        (g1 - e1).abs() <= CHECK_TOL && (g2 - e2).abs() <= CHECK_TOL
    });
    let [m1, m2, m3, m4] = model.mu.map(|d| d.probs);
    let preparation_equivalence =
        (0..4).all(|k| (0.5 * (m1[k] + m3[k]) - 0.5 * (m2[k] + m4[k])).abs() <= CHECK_TOL);
    VerificationReport {
        distributions_valid,
        predictability_pattern,
        preparation_equivalence,
    }
}

/// Linear constraints `g·(c, κ, ν) + h ≥ 0` describing every model with
/// `⟨M1⟩ = m`, the preparation equivalence imposed through
/// `τ = 1 − 4c − 2m − κ − ν`.
fn constraints(m: f64) -> Vec<([f64; 3], f64)> {
    // Affine forms in (c, κ, ν) as ([coefficients], constant).
    let a = ([-1.0, 0.0, 0.0], (1.0 - m) / 2.0);
    let b = ([1.0, 0.0, 0.0], m);
    let c = ([1.0, 0.0, 0.0], 0.0);
    let d = a;
    let kappa = ([0.0, 1.0, 0.0], 0.0);
    let nu = ([0.0, 0.0, 1.0], 0.0);
    let tau = ([-4.0, -1.0, -1.0], 1.0 - 2.0 * m);
    let add = |x: ([f64; 3], f64), y: ([f64; 3], f64)| {
        (
            [x.0[0] + y.0[0], x.0[1] + y.0[1], x.0[2] + y.0[2]],
            x.1 + y.1,
        )
    };
    let neg = |x: ([f64; 3], f64)| ([-x.0[0], -x.0[1], -x.0[2]], -x.1);
    let one_minus = |x| add(([0.0; 3], 1.0), neg(x));
    let mut out = vec![a, b, c, d];
    out.extend([
        add(b, kappa),
        add(a, neg(kappa)),
        add(d, neg(kappa)),
        add(c, kappa),
    ]);
    out.extend([add(d, neg(nu)), add(c, nu), add(b, nu), add(a, neg(nu))]);
    out.extend([add(c, tau), add(d, neg(tau)), add(a, neg(tau)), add(b, tau)]);
    for shift in [kappa, nu, tau] {
        out.push(add(shift, c));
        out.push(add(one_minus(shift), neg(c)));
    }
    out
}

/// Exact feasibility of a four-ontic-state noncontextual model for the
/// `B₂` set with `⟨M1⟩ = m`, by enumerating the vertices of the bounded
/// constraint polytope over `(c, κ, ν)`.
pub fn feasibility_oracle(m: f64) -> bool {
    const TOL: f64 = 1e-12;
    let cons = constraints(m);
    let n = cons.len();
    let feasible = |x: &Vector3<f64>| {
        cons.iter()
            .all(|(g, h)| g[0] * x[0] + g[1] * x[1] + g[2] * x[2] + h >= -TOL)
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let rows = [cons[i], cons[j], cons[k]];
                let a = Matrix3::from_fn(|r, col| rows[r].0[col]);
                let rhs = Vector3::from_fn(|r, _| -rows[r].1);
                if a.determinant().abs() < 1e-12 {
                    continue;
                }
                if let Some(x) = a.lu().solve(&rhs) {
                    if feasible(&x) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
