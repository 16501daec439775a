//! Repeated finite-shot experiments and their closed-form expectations.
//!
//! Randomness: one master seed; the `(repeat, setting)` task draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `8·repeat + setting`, so the
//! result is independent of how repeats are scheduled across threads.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::noise::{noisy_state, NoiseConfig};
use super::readout::{correct_readout, corrupt_readout, ReadoutFidelity};
use crate::error::{Error, Result};
use crate::nonlocal::{chsh_max, eur_memory_bound, optimal_settings};
use crate::qstate::{
    joint_probs, partial_trace, shannon_entropy, MeasurementAxis, Subsystem, TwoQubitDensity,
};
use crate::tradeoff::{family_axes, family_state, h_qr};

/// Outcome counts `[++, +−, −+, −−]` for one product setting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShotCounts {
    pub counts: [u64; 4],
    pub axis_a: MeasurementAxis,
    pub axis_b: MeasurementAxis,
    pub shots: u64,
}

impl ShotCounts {
    pub fn frequencies(&self) -> [f64; 4] {
        self.counts.map(|k| k as f64 / self.shots as f64)
    }
}

/// One multinomial draw of `shots` outcomes, as a chain of binomials.
pub fn sample_multinomial<R: Rng + ?Sized>(probs: [f64; 4], shots: u64, rng: &mut R) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut left = shots;
    let mut mass = 1.0;
    for k in 0..3 {
        if left == 0 {
            break;
        }
        let p = if mass > 0.0 {
            (probs[k].max(0.0) / mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let draw = Binomial::new(left, p).expect("p in [0, 1]").sample(rng);
        out[k] = draw;
        left -= draw;
        mass -= probs[k].max(0.0);
    }
    out[3] = left;
    out
}

pub fn sample_counts<R: Rng + ?Sized>(
    rho: &TwoQubitDensity,
    axis_a: MeasurementAxis,
    axis_b: MeasurementAxis,
    shots: u64,
    rng: &mut R,
) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::domain("shots must be at least 1"));
    }
    let counts = sample_multinomial(joint_probs(rho, axis_a, axis_b), shots, rng);
    Ok(ShotCounts {
        counts,
        axis_a,
        axis_b,
        shots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Settings `(Q, z)` and `(R, x)`: entropies and the memory-assisted bound.
    Entanglement,
    /// The four CHSH settings with `A0 = Q`, `A1 = R`.
    Bell,
}

/// Plug-in Shannon entropy, optionally with the Miller–Madow correction
/// `(K − 1)/(2N ln 2)`, `K` the number of occupied outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum EntropyEstimator {
    PlugIn,
    #[default]
    MillerMadow,
}

impl EntropyEstimator {
    pub fn entropy(self, probs: &[f64], shots: u64) -> f64 {
        let plug_in = shannon_entropy(probs);
        match self {
            EntropyEstimator::PlugIn => plug_in,
            EntropyEstimator::MillerMadow => {
                let occupied = probs.iter().filter(|&&p| p > 0.0).count();
                plug_in + (occupied.max(1) - 1) as f64 / (2.0 * shots as f64 * LN_2)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub shots: u64,
    pub repeats: usize,
    pub seed: u64,
    pub noise: NoiseConfig,
    pub readout: [ReadoutFidelity; 2],
    pub estimator: EntropyEstimator,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            shots: 3000,
            repeats: 30,
            seed: 1,
            noise: NoiseConfig::default(),
            readout: [ReadoutFidelity::IDEAL; 2],
            estimator: EntropyEstimator::default(),
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.shots == 0 || self.repeats == 0 {
            return Err(Error::domain("shots and repeats must be at least 1"));
        }
        Ok(())
    }
}

/// Mean over repeats with the standard error `sd/√n` (absent for `n = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: Option<f64>,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let stderr = (xs.len() > 1).then(|| {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        });
        Estimate { mean, stderr }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub beta: f64,
    pub mode: Mode,
    pub h_qr: Estimate,
    /// Entanglement mode only.
    pub s_ab_bound: Option<Estimate>,
    /// Bell mode only.
    pub chsh: Option<Estimate>,
    /// `|P0 − P1| − √2/2` for `Q`, from the mean of `P0 − P1` over repeats.
    pub d_f_margin: Estimate,
}

/// Exact values of every estimated quantity on the noisy state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub h_qr: f64,
    pub s_ab_bound: f64,
    pub chsh_max: f64,
    pub d_f_margin: f64,
}

pub fn closed_form(beta: f64, noise: NoiseConfig) -> Result<ClosedForm> {
    let rho = noisy_state(beta, noise)?;
    let (q, r) = family_axes();
    let s_a = partial_trace(&rho, Subsystem::A).bloch();
    Ok(ClosedForm {
        h_qr: h_qr(&rho),
        s_ab_bound: eur_memory_bound(&rho, q, r, MeasurementAxis::Z, MeasurementAxis::X),
        chsh_max: chsh_max(&rho),
        d_f_margin: q.dot(s_a).abs() - FRAC_1_SQRT_2,
    })
}

struct RepeatOutcome {
    h_qr: f64,
    bound: Option<f64>,
    chsh: Option<f64>,
    q_expectation: f64,
}

fn settings(beta: f64, mode: Mode) -> Result<Vec<(MeasurementAxis, MeasurementAxis)>> {
    let (q, r) = family_axes();
    Ok(match mode {
        Mode::Entanglement => vec![(q, MeasurementAxis::Z), (r, MeasurementAxis::X)],
        Mode::Bell => {
            let s = optimal_settings(&family_state(beta)?.density())?;
            vec![(q, s.b0), (q, s.b1), (r, s.b0), (r, s.b1)]
        }
    })
}

fn marginal_a(p: &[f64; 4]) -> [f64; 2] {
    [p[0] + p[1], p[2] + p[3]]
}

fn marginal_b(p: &[f64; 4]) -> [f64; 2] {
    [p[0] + p[2], p[1] + p[3]]
}

fn correlator(p: &[f64; 4]) -> f64 {
    p[0] - p[1] - p[2] + p[3]
}

fn one_repeat(
    rho: &TwoQubitDensity,
    setting_list: &[(MeasurementAxis, MeasurementAxis)],
    config: &ExperimentConfig,
    mode: Mode,
    repeat: usize,
) -> Result<RepeatOutcome> {
    let [fa, fb] = config.readout;
    let mut corrected = Vec::with_capacity(setting_list.len());
    for (k, &(a, b)) in setting_list.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream((repeat * 8 + k) as u64);
        let observed = corrupt_readout(joint_probs(rho, a, b), fa, fb);
        let counts = sample_multinomial(observed, config.shots, &mut rng);
        let freq = counts.map(|n| n as f64 / config.shots as f64);
        corrected.push(correct_readout(freq, fa, fb)?);
    }
    let n = config.shots;
    let est = config.estimator;
    Ok(match mode {
        Mode::Entanglement => {
            let (pq, pr) = (&corrected[0], &corrected[1]);
            let h_q = est.entropy(&marginal_a(pq), n);
            let h_r = est.entropy(&marginal_a(pr), n);
            let cond = |p: &[f64; 4]| est.entropy(p, n) - est.entropy(&marginal_b(p), n);
            let mq = marginal_a(pq);
            RepeatOutcome {
                h_qr: h_q + h_r,
                bound: Some(cond(pq) + cond(pr) - 1.0),
                chsh: None,
                q_expectation: mq[0] - mq[1],
            }
        }
        Mode::Bell => {
            let pooled = |i: usize, j: usize| {
                let (x, y) = (marginal_a(&corrected[i]), marginal_a(&corrected[j]));
                [0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])]
            };
            let (mq, mr) = (pooled(0, 1), pooled(2, 3));
            let e: Vec<f64> = corrected.iter().map(correlator).collect();
            RepeatOutcome {
                h_qr: est.entropy(&mq, 2 * n) + est.entropy(&mr, 2 * n),
                bound: None,
                chsh: Some((e[0] + e[1] + e[2] - e[3]).abs()),
                q_expectation: mq[0] - mq[1],
            }
        }
    })
}

/// Runs `config.repeats` independent repetitions on the noisy family state.
pub fn run_experiment(
    beta: f64,
    config: &ExperimentConfig,
    mode: Mode,
) -> Result<ExperimentResult> {
    config.validate()?;
    let rho = noisy_state(beta, config.noise)?;
    let setting_list = settings(beta, mode)?;
    let outcomes: Vec<RepeatOutcome> = (0..config.repeats)
        .into_par_iter()
        .map(|r| one_repeat(&rho, &setting_list, config, mode, r))
        .collect::<Result<_>>()?;

    let column = |f: &dyn Fn(&RepeatOutcome) -> Option<f64>| -> Option<Estimate> {
        let xs: Option<Vec<f64>> = outcomes.iter().map(f).collect();
        xs.map(|xs| Estimate::from_samples(&xs))
    };
    let q_exp = column(&|o| Some(o.q_expectation)).expect("always present");
    Ok(ExperimentResult {
        beta,
        mode,
        h_qr: column(&|o| Some(o.h_qr)).expect("always present"),
        s_ab_bound: column(&|o| o.bound),
        chsh: column(&|o| o.chsh),
        d_f_margin: Estimate {
            mean: q_exp.mean.abs() - FRAC_1_SQRT_2,
            stderr: q_exp.stderr,
        },
    })
}
