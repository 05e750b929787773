//! Command-line front end: encode/decode trajectories, print entanglement
//! profiles and step classifications, run the BB84 simulator, and run the
//! built-in invariant suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/validation error,
//! 3 selfcheck failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use geoqkd::bb84::{BasisPolicy, EveStrategy};
use geoqkd::codes::{
    decode_index, decode_profile, encode, profile, EncoderConfig, Trajectory,
};
use geoqkd::entanglement::GeoKey;
use geoqkd::geometry::{classify_step, ClassifierThresholds, DEFAULT_H};
use geoqkd::selfcheck;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SELFCHECK: u8 = 3;

#[derive(Parser)]
#[command(name = "geoqkd", version, about = "Geometric entanglement codes and a geometric BB84 simulator")]
struct Cli {
    /// Seed for all randomized subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Emit machine-readable JSON where supported.
    #[arg(long, global = true)]
    json: bool,
    /// Path to a key file (GeoKey JSON).
    #[arg(long, global = true)]
    key: Option<PathBuf>,
    /// Path to a public config file (encoder parameters and thresholds).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct EncoderFlags {
    /// Angular step delta (radians).
    #[arg(long)]
    delta: Option<f64>,
    /// Public start index j0.
    #[arg(long)]
    j0: Option<i64>,
    /// Lower window bound.
    #[arg(long)]
    j_min: Option<i64>,
    /// Upper window bound.
    #[arg(long)]
    j_max: Option<i64>,
}

#[derive(Args, Clone, Copy, Default)]
struct ThresholdFlags {
    /// Tangential threshold eps_tan.
    #[arg(long)]
    eps_tan: Option<f64>,
    /// Normal threshold eps_norm.
    #[arg(long)]
    eps_norm: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a bit string into a trajectory file.
    Encode {
        /// Message bits ("1011") or hex with 0x prefix ("0xb").
        message: String,
        /// Output trajectory file.
        #[arg(long, short)]
        out: PathBuf,
        #[command(flatten)]
        enc: EncoderFlags,
    },
    /// Decode a trajectory file back to bits.
    Decode {
        /// Input trajectory file.
        trajectory: PathBuf,
        /// Decoder: "index" (public) or "profile" (keyed).
        #[arg(long, default_value = "profile")]
        mode: String,
        #[command(flatten)]
        enc: EncoderFlags,
        #[command(flatten)]
        th: ThresholdFlags,
    },
    /// Print the keyed entanglement profile of a trajectory.
    Profile {
        trajectory: PathBuf,
    },
    /// Print per-step metrics and T/U/D/M labels of a trajectory.
    Classify {
        trajectory: PathBuf,
        #[command(flatten)]
        th: ThresholdFlags,
    },
    /// Run the BB84 simulator.
    Bb84 {
        /// Number of rounds (>= 1).
        #[arg(long)]
        rounds: u64,
        /// Eavesdropper: "none" or "intercept".
        #[arg(long, default_value = "none")]
        eve: String,
        /// Eve's basis policy: "z", "x", or "random".
        #[arg(long, default_value = "random")]
        eve_basis: String,
        /// Write per-round records as JSON lines to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Run the full invariant suite.
    Selfcheck {
        /// Finite-difference step for the gradient group.
        #[arg(long)]
        h: Option<f64>,
    },
    /// Run the gradient-consistency group of the invariant suite.
    Gradcheck {
        #[arg(long)]
        h: Option<f64>,
    },
}

/// Optional public config file: encoder parameters, thresholds, step size.
#[derive(Deserialize, Default)]
struct FileConfig {
    #[serde(default)]
    encoder: Option<EncoderConfig>,
    #[serde(default)]
    thresholds: Option<ClassifierThresholds>,
    #[serde(default)]
    h: Option<f64>,
}

struct CliError {
    code: u8,
    message: String,
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn usage_err(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn parse_bits(message: &str) -> Result<Vec<u8>, CliError> {
    if let Some(hex) = message.strip_prefix("0x").or_else(|| message.strip_prefix("0X")) {
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for ch in hex.chars() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| usage_err(format!("invalid hex digit {ch:?}")))?;
            for k in (0..4).rev() {
                bits.push(((v >> k) & 1) as u8);
            }
        }
        Ok(bits)
    } else {
        message
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(usage_err(format!(
                    "message must be bits or 0x-prefixed hex, found {other:?}"
                ))),
            })
            .collect()
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(input_err)?;
            serde_json::from_str(&text).map_err(input_err)
        }
    }
}

fn encoder_config(flags: &EncoderFlags, file: &FileConfig) -> EncoderConfig {
    let base = file.encoder.unwrap_or_default();
    EncoderConfig {
        delta: flags.delta.unwrap_or(base.delta),
        j0: flags.j0.unwrap_or(base.j0),
        j_min: flags.j_min.unwrap_or(base.j_min),
        j_max: flags.j_max.unwrap_or(base.j_max),
    }
}

fn thresholds(flags: &ThresholdFlags, file: &FileConfig) -> Result<ClassifierThresholds, CliError> {
    let base = file.thresholds.unwrap_or_default();
    ClassifierThresholds::new(
        flags.eps_tan.unwrap_or(base.eps_tan),
        flags.eps_norm.unwrap_or(base.eps_norm),
    )
    .map_err(input_err)
}

fn load_trajectory(path: &PathBuf) -> Result<Trajectory, CliError> {
    let text = fs::read_to_string(path).map_err(input_err)?;
    let traj: Trajectory = serde_json::from_str(&text).map_err(input_err)?;
    Trajectory::new(traj.states, traj.moves).map_err(input_err)
}

fn load_key(path: &Option<PathBuf>) -> Result<GeoKey, CliError> {
    match path {
        None => Ok(GeoKey::twisted_global(std::f64::consts::FRAC_PI_4)),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(input_err)?;
            serde_json::from_str(&text).map_err(input_err)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_cfg = load_config(&cli.config)?;
    match cli.command {
        Command::Encode { message, out, enc } => {
            let bits = parse_bits(&message)?;
            let cfg = encoder_config(&enc, &file_cfg);
            let traj = encode(&bits, &cfg).map_err(input_err)?;
            fs::write(&out, serde_json::to_string(&traj).map_err(input_err)?)
                .map_err(input_err)?;
            let mut j = cfg.j0;
            let mut walk = vec![j];
            for &b in &bits {
                j += if b != 0 { 1 } else { -1 };
                walk.push(j);
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "bits": bits.len(),
                        "states": traj.states.len(),
                        "walk": walk,
                        "out": out,
                    })
                );
            } else {
                let walk_str: Vec<String> = walk.iter().map(|j| j.to_string()).collect();
                println!(
                    "encoded {} bits into {} states; index walk: {}",
                    bits.len(),
                    traj.states.len(),
                    walk_str.join(" ")
                );
            }
            Ok(())
        }
        Command::Decode {
            trajectory,
            mode,
            enc,
            th,
        } => {
            let traj = load_trajectory(&trajectory)?;
            let rendered = match mode.as_str() {
                "index" => {
                    let cfg = encoder_config(&enc, &file_cfg);
                    decode_index(&traj, &cfg)
                        .map_err(input_err)?
                        .iter()
                        .map(|b| char::from(b'0' + b))
                        .collect::<String>()
                }
                "profile" => {
                    let key = load_key(&cli.key)?;
                    let th = thresholds(&th, &file_cfg)?;
                    decode_profile(&traj, &key, &th)
                        .map_err(input_err)?
                        .iter()
                        .map(|b| match b {
                            Some(v) => char::from(b'0' + v),
                            None => '?',
                        })
                        .collect::<String>()
                }
                other => return Err(usage_err(format!("unknown decode mode {other:?}"))),
            };
            println!("{rendered}");
            Ok(())
        }
        Command::Profile { trajectory } => {
            let traj = load_trajectory(&trajectory)?;
            let key = load_key(&cli.key)?;
            let e = key.functional().map_err(input_err)?;
            let values = profile(&traj, &e).map_err(input_err)?;
            if cli.json {
                println!("{}", serde_json::json!({ "profile": values }));
            } else {
                println!("{:>4}  {:>18}", "k", "e_k");
                for (k, v) in values.iter().enumerate() {
                    println!("{k:>4}  {v:>18.12}");
                }
            }
            Ok(())
        }
        Command::Classify { trajectory, th } => {
            let traj = load_trajectory(&trajectory)?;
            let key = load_key(&cli.key)?;
            let e = key.functional().map_err(input_err)?;
            let th = thresholds(&th, &file_cfg)?;
            let values = profile(&traj, &e).map_err(input_err)?;
            let mut rows = Vec::new();
            for (k, w) in traj.states.windows(2).enumerate() {
                let (label, m) = classify_step(&w[0], &w[1], &e, &th).map_err(input_err)?;
                rows.push((k, values[k], m.delta_s, m.delta_e, label));
            }
            if cli.json {
                let json_rows: Vec<_> = rows
                    .iter()
                    .map(|(k, e_k, ds, de, label)| {
                        serde_json::json!({
                            "k": k,
                            "e_k": e_k,
                            "delta_s": ds,
                            "delta_e": de,
                            "label": label.to_string(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::json!({ "steps": json_rows }));
            } else {
                println!(
                    "{:>4}  {:>18}  {:>14}  {:>14}  label",
                    "k", "e_k", "delta_s", "delta_e"
                );
                for (k, e_k, ds, de, label) in rows {
                    println!("{k:>4}  {e_k:>18.12}  {ds:>14.8}  {de:>14.8}  {label}");
                }
            }
            Ok(())
        }
        Command::Bb84 {
            rounds,
            eve,
            eve_basis,
            log,
        } => {
            if rounds == 0 {
                return Err(usage_err("--rounds must be at least 1"));
            }
            let strategy = match eve.as_str() {
                "none" => EveStrategy::NoEve,
                "intercept" => {
                    let policy = match eve_basis.as_str() {
                        "z" => BasisPolicy::FixedZ,
                        "x" => BasisPolicy::FixedX,
                        "random" => BasisPolicy::Uniform,
                        other => {
                            return Err(usage_err(format!("unknown eve basis {other:?}")))
                        }
                    };
                    EveStrategy::InterceptResend(policy)
                }
                other => return Err(usage_err(format!("unknown eve strategy {other:?}"))),
            };
            let (stats, records) = geoqkd::bb84::run_protocol(rounds, strategy, cli.seed);
            if let Some(path) = log {
                let mut lines = String::new();
                for r in &records {
                    lines.push_str(&serde_json::to_string(r).map_err(input_err)?);
                    lines.push('\n');
                }
                fs::write(&path, lines).map_err(input_err)?;
            }
            println!("{}", serde_json::to_string(&stats).map_err(input_err)?);
            Ok(())
        }
        Command::Selfcheck { h } => {
            let h = h.or(file_cfg.h).unwrap_or(DEFAULT_H);
            let report = selfcheck::run(cli.seed, h).map_err(input_err)?;
            print_selfcheck(&report, cli.json);
            if report.passed {
                Ok(())
            } else {
                Err(CliError {
                    code: EXIT_SELFCHECK,
                    message: "selfcheck failed".into(),
                })
            }
        }
        Command::Gradcheck { h } => {
            let h = h.or(file_cfg.h).unwrap_or(DEFAULT_H);
            let report = selfcheck::run(cli.seed, h).map_err(input_err)?;
            let grad: Vec<_> = report
                .groups
                .iter()
                .filter(|g| g.name == "gradient_consistency")
                .cloned()
                .collect();
            let passed = grad.iter().all(|g| g.passed);
            let partial = selfcheck::SelfcheckReport {
                groups: grad,
                passed,
            };
            print_selfcheck(&partial, cli.json);
            if passed {
                Ok(())
            } else {
                Err(CliError {
                    code: EXIT_SELFCHECK,
                    message: "gradient check failed".into(),
                })
            }
        }
    }
}

fn print_selfcheck(report: &selfcheck::SelfcheckReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string(report).unwrap());
    } else {
        for g in &report.groups {
            let status = if g.passed { "PASS" } else { "FAIL" };
            println!("{status}  {:<26} {}", g.name, g.detail);
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, everything else is a
            // usage error (exit 1 per the CLI contract)
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
