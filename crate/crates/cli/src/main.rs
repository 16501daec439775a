//! `prepctx`: command-line front end to the contextuality toolkit.
//!
//! Results go to stdout as JSON (single evaluations) or CSV (sweeps and
//! simulations). Exit status is 0 on success, 2 on malformed arguments or
//! state files, and 1 when the library rejects an input.

mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prepctx::contextuality::{
    a1sq_orbit_set, b2_orbit_set, classify_region, expectation_criterion, faithful_criterion,
    inverse_binary_entropy, joint_predictability, optimal_frame, probability_difference_margin,
    sufficient_criterion,
};
use prepctx::nonlocal::{
    chsh_max, chsh_value, correlation_matrix, eur_memory_bound, horodecki_parameter,
    optimal_settings, optimize_memory_measurements,
};
use prepctx::ontic::{construct_model, feasibility_oracle, verify_model};
use prepctx::qstate::{conditional_entropy, partial_trace};
use prepctx::sim::{run_experiment, EntropyEstimator};
use prepctx::tradeoff::{family_state, h_qr, sweep, theorem2_value, theorem3_value, DEFAULT_BETAS};
use prepctx::{
    BlochVector, Error, ExperimentConfig, FamilyParams, MeasurementAxis, Mode, NoiseConfig,
    ReadoutFidelity, Subsystem, TwoQubitDensity,
};

use output::{cell, round_json};

#[derive(Parser)]
#[command(
    name = "prepctx",
    version,
    about = "Preparation contextuality, entanglement and nonlocality of qubit states"
)]
struct Cli {
    /// Significant digits of every printed number.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Contextuality verdict for a qubit state.
    Criterion {
        #[command(flatten)]
        state: StateInput,
        #[arg(long, value_enum, default_value_t = Test::Faithful)]
        test: Test,
        /// First axis for `sufficient`/`joint` (default: the optimal frame).
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        axis1: Option<[f64; 3]>,
        /// Second axis, orthogonal to the first.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        axis2: Option<[f64; 3]>,
    },
    /// The four-state set generated from a qubit state.
    Set {
        #[command(flatten)]
        state: StateInput,
        #[arg(long, value_enum, default_value_t = SetSymmetry::B2)]
        symmetry: SetSymmetry,
        /// `M1′` for the a1sq orbit.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        m1: Option<[f64; 3]>,
        /// `M2′` for the a1sq orbit.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        m2: Option<[f64; 3]>,
    },
    /// Four-ontic-state noncontextual model for a predictability level.
    Ontic(OnticInput),
    /// Horodecki parameter, maximal CHSH value and optimal settings.
    Chsh {
        #[command(flatten)]
        state: StateInput,
    },
    /// Memory-assisted entropic bound `H(Q|MB′) + H(R|MB) − 1`.
    EurBound {
        #[command(flatten)]
        state: StateInput,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        q: Option<[f64; 3]>,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        r: Option<[f64; 3]>,
        /// Minimise over Bob's axes instead of measuring `z` (with Q) and `x` (with R).
        #[arg(long)]
        optimize: bool,
    },
    /// Both trade-off functions for one two-qubit state.
    Tradeoff {
        #[command(flatten)]
        state: StateInput,
    },
    /// Trade-off table over the benchmark family, as CSV.
    Sweep {
        /// Comma-separated β values, or `default13`.
        #[arg(long, default_value = "default13")]
        betas: String,
    },
    /// Shot-level replica of the two-qubit experiment, as CSV.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 3000)]
        shots: u64,
        #[arg(long, default_value_t = 30)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.0076)]
        p_depol: f64,
        #[arg(long, value_enum, default_value_t = SimMode::Ent)]
        mode: SimMode,
        /// Readout fidelities `f0A,f1A,f0B,f1B`.
        #[arg(long, value_parser = parse_quad)]
        readout: Option<[f64; 4]>,
        #[arg(long, value_enum, default_value_t = Estimator::MillerMadow)]
        estimator: Estimator,
    },
    /// Region of the `(H(Q′), H(R′))` plane.
    Region {
        #[arg(long)]
        hq: f64,
        #[arg(long)]
        hr: f64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateInput {
    /// Qubit Bloch vector `x,y,z`.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    bloch: Option<[f64; 3]>,
    /// Member of the benchmark two-qubit family.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// JSON file holding a 4×4 array of `[re, im]` entries.
    #[arg(long)]
    density: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OnticInput {
    /// Common predictability `⟨M1⟩` of the four preparations.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    /// Use `⟨M1⟩` of the optimal four-state set of this Bloch vector.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    bloch: Option<[f64; 3]>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Test {
    Faithful,
    Expectation,
    Sufficient,
    Joint,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetSymmetry {
    B2,
    A1sq,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimMode {
    Ent,
    Bell,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    MillerMadow,
    PlugIn,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    parse_floats::<3>(s)
}

fn parse_quad(s: &str) -> Result<[f64; 4], String> {
    parse_floats::<4>(s)
}

fn axis(v: [f64; 3]) -> Outcome<MeasurementAxis> {
    Ok(MeasurementAxis::new(BlochVector::from_array(v))?)
}

fn load_density(path: &Path) -> Outcome<TwoQubitDensity> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let rows: [[[f64; 2]; 4]; 4] = serde_json::from_str(&text).map_err(|e| {
        Failure::Usage(format!(
            "{}: expected a 4x4 array of [re, im] pairs ({e})",
            path.display()
        ))
    })?;
    Ok(TwoQubitDensity::from_rows(rows)?)
}

/// The qubit a command acts on: the Bloch vector itself, or Alice's
/// reduced state of a two-qubit input.
fn qubit(input: &StateInput) -> Outcome<BlochVector> {
    if let Some(s) = input.bloch {
        let s = BlochVector::from_array(s);
        s.check_physical()?;
        return Ok(s);
    }
    Ok(partial_trace(&two_qubit(input)?, Subsystem::A).bloch())
}

fn two_qubit(input: &StateInput) -> Outcome<TwoQubitDensity> {
    match (input.beta, &input.density) {
        (Some(b), _) => Ok(family_state(b)?.density()),
        (None, Some(p)) => load_density(p),
        _ => Err(Failure::Usage(
            "this command needs a two-qubit state (--beta or --density)".into(),
        )),
    }
}

fn settings_json(rho: &TwoQubitDensity) -> Outcome<Value> {
    let t = correlation_matrix(rho);
    let s = optimal_settings(rho)?;
    Ok(json!({
        "M": horodecki_parameter(&t),
        "chsh_max": chsh_max(rho),
        "settings": s,
        "chsh_value": chsh_value(rho, &s),
    }))
}

fn run(cli: Cli) -> Outcome<String> {
    let digits = cli.precision as usize;
    let emit = |v: Value| {
        serde_json::to_string_pretty(&round_json(v, digits)).expect("JSON value serialises")
    };
    match cli.command {
        Command::Criterion {
            state,
            test,
            axis1,
            axis2,
        } => {
            let s = qubit(&state)?;
            let frame = optimal_frame(s);
            let pair = |d1, d2| -> Outcome<_> {
                Ok((
                    axis1.map(axis).transpose()?.unwrap_or(d1),
                    axis2.map(axis).transpose()?.unwrap_or(d2),
                ))
            };
            let (name, v) = match test {
                Test::Faithful => ("faithful", faithful_criterion(s)?),
                Test::Expectation => ("expectation", expectation_criterion(s)?),
                Test::Sufficient => {
                    let (a, b) = pair(frame.q, frame.r)?;
                    ("sufficient", sufficient_criterion(s, a, b)?)
                }
                Test::Joint => {
                    let (a, b) = pair(frame.m1, frame.m2)?;
                    ("joint", joint_predictability(s, a, b)?)
                }
            };
            Ok(emit(json!({
                "state": s.to_array(),
                "criterion": name,
                "witness": v.witness,
                "threshold": v.threshold,
                "verdict": v.kind,
                "d_f_margin": probability_difference_margin(s)?,
            })))
        }
        Command::Set {
            state,
            symmetry,
            m1,
            m2,
        } => {
            let s = qubit(&state)?;
            let set = match symmetry {
                SetSymmetry::B2 => b2_orbit_set(s)?,
                SetSymmetry::A1sq => {
                    let (Some(m1), Some(m2)) = (m1, m2) else {
                        return Err(Failure::Usage("--symmetry a1sq needs --m1 and --m2".into()));
                    };
                    a1sq_orbit_set(s, axis(m1)?, axis(m2)?)?
                }
            };
            let mut v = serde_json::to_value(set).expect("set serialises");
            v["relation_residual"] = json!(set.relation_residual());
            Ok(emit(v))
        }
        Command::Ontic(input) => {
            let m = match (input.m, input.bloch) {
                (Some(m), _) => m,
                (None, Some(b)) => {
                    let s = BlochVector::from_array(b);
                    s.check_physical()?;
                    optimal_frame(s).m1.dot(s)
                }
                (None, None) => unreachable!("clap enforces one input"),
            };
            let model = construct_model(m)?;
            let report = model.as_ref().map(|mdl| verify_model(mdl, m));
            Ok(emit(json!({
                "m": m,
                "feasible": feasibility_oracle(m),
                "model": model,
                "report": report,
                "all_passed": report.map(|r| r.all_passed()),
            })))
        }
        Command::Chsh { state } => Ok(emit(settings_json(&two_qubit(&state)?)?)),
        Command::EurBound {
            state,
            q,
            r,
            optimize,
        } => {
            let rho = two_qubit(&state)?;
            let (dq, dr) = match state.beta {
                Some(b) => FamilyParams::new(b)?.measurement_axes(),
                None => {
                    let f = optimal_frame(partial_trace(&rho, Subsystem::A).bloch());
                    (f.q, f.r)
                }
            };
            let q = q.map(axis).transpose()?.unwrap_or(dq);
            let r = r.map(axis).transpose()?.unwrap_or(dr);
            let (mbp, mb, bound) = if optimize {
                let (pair, bound) = optimize_memory_measurements(&rho, q, r);
                (pair.mbp, pair.mb, bound)
            } else {
                let (mbp, mb) = (MeasurementAxis::Z, MeasurementAxis::X);
                (mbp, mb, eur_memory_bound(&rho, q, r, mbp, mb))
            };
            Ok(emit(json!({
                "bound": bound,
                "q": q,
                "r": r,
                "mbp": mbp,
                "mb": mb,
                "conditional_entropy": conditional_entropy(&rho),
            })))
        }
        Command::Tradeoff { state } => {
            let rho = two_qubit(&state)?;
            Ok(emit(json!({
                "H_QR": h_qr(&rho),
                "conditional_entropy": conditional_entropy(&rho),
                "chsh_max": chsh_max(&rho),
                "t2": theorem2_value(&rho),
                "t3": theorem3_value(&rho),
            })))
        }
        Command::Sweep { betas } => {
            let betas = if betas.trim() == "default13" {
                DEFAULT_BETAS.to_vec()
            } else {
                betas
                    .split(',')
                    .map(|b| {
                        b.trim()
                            .parse::<f64>()
                            .map_err(|e| Failure::Usage(format!("β `{b}`: {e}")))
                    })
                    .collect::<Outcome<Vec<_>>>()?
            };
            let mut out = String::from("beta,H_QR,S_AB_bound,chsh_max,t2,t3\n");
            for row in sweep(&betas)? {
                let cells = [
                    row.beta,
                    row.h_qr,
                    row.s_ab_bound,
                    row.chsh_max,
                    row.t2_value,
                    row.t3_value,
                ]
                .map(|v| cell(Some(v), digits));
                out += &cells.join(",");
                out.push('\n');
            }
            Ok(out.trim_end().to_string())
        }
        Command::Simulate {
            beta,
            shots,
            repeats,
            seed,
            p_depol,
            mode,
            readout,
            estimator,
        } => {
            let readout = match readout {
                Some([fa0, fa1, fb0, fb1]) => [
                    ReadoutFidelity::new(fa0, fa1)?,
                    ReadoutFidelity::new(fb0, fb1)?,
                ],
                None => [ReadoutFidelity::IDEAL; 2],
            };
            let config = ExperimentConfig {
                shots,
                repeats,
                seed,
                noise: NoiseConfig::new(p_depol)?,
                readout,
                estimator: match estimator {
                    Estimator::MillerMadow => EntropyEstimator::MillerMadow,
                    Estimator::PlugIn => EntropyEstimator::PlugIn,
                },
            };
            let (mode, label) = match mode {
                SimMode::Ent => (Mode::Entanglement, "ent"),
                SimMode::Bell => (Mode::Bell, "bell"),
            };
            let res = run_experiment(beta, &config, mode)?;
            let pair = |e: Option<prepctx::sim::Estimate>| {
                [
                    cell(e.map(|e| e.mean), digits),
                    cell(e.and_then(|e| e.stderr), digits),
                ]
            };
            let mut cells = vec![cell(Some(res.beta), digits), label.to_string()];
            for e in [
                Some(res.h_qr),
                res.s_ab_bound,
                res.chsh,
                Some(res.d_f_margin),
            ] {
                cells.extend(pair(e));
            }
            Ok(format!(
                "beta,mode,H_QR,H_QR_se,S_AB_bound,S_AB_bound_se,chsh,chsh_se,D_f_margin,D_f_margin_se\n{}",
                cells.join(",")
            ))
        }
        Command::Region { hq, hr } => {
            let region = classify_region(hq, hr)?;
            Ok(emit(json!({
                "h_q": hq,
                "h_r": hr,
                "x": 1.0 - 2.0 * inverse_binary_entropy(hq)?,
                "y": 1.0 - 2.0 * inverse_binary_entropy(hr)?,
                "region": region,
            })))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not a failure of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
