use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand as ClapSubcommand};

use aes_trojan::harness::{run, RunConfig, Subcommand};
use aes_trojan::trojan::Polarity;

/// AES-128 core with a sequential hardware Trojan: simulate, attack, audit.
#[derive(Parser)]
#[command(name = "aes-trojan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Encrypt one block on the clean multicycle core.
    Encrypt {
        #[arg(long)]
        key: String,
        #[arg(long)]
        plaintext: String,
        /// Print one trace line per clock cycle before the ciphertext.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Feed a plaintext to a tampered core Q times, showing counter and payload state.
    Inject {
        #[command(flatten)]
        target: Target,
        /// Defaults to the trigger plaintext.
        #[arg(long)]
        plaintext: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Install a key behind the Trojan, activate it and recover the key.
    Attack {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Out,
    },
    /// Compare clean and tampered cores on random non-trigger stimuli and test patterns.
    StealthCheck {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        patterns: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Structural gate tally for a Trojan config.
    GateReport {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Choose a trigger that no manufacturing test pattern activates.
    SelectTrigger {
        #[arg(long)]
        patterns: Option<PathBuf>,
        /// Trigger width.
        #[arg(long, default_value_t = 5)]
        p: usize,
        #[arg(long, default_value_t = 8)]
        q_max: u32,
        /// `or` (force ones) or `and` (force zeros).
        #[arg(long, default_value = "or", value_parser = parse_polarity)]
        polarity: Polarity,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Target {
    /// Secret key; derived from --seed when omitted.
    #[arg(long)]
    key: Option<String>,
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Out {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_polarity(s: &str) -> Result<Polarity, String> {
    s.parse()
        .map_err(|e: aes_trojan::trojan::TrojanError| e.to_string())
}

impl Command {
    fn into_run_config(self) -> RunConfig {
        let apply_target = |rc: &mut RunConfig, t: Target| {
            rc.key_hex = t.key;
            rc.trojan_config_path = Some(t.config);
            rc.seed = t.seed;
        };
        match self {
            Command::Encrypt {
                key,
                plaintext,
                trace,
                out,
            } => {
                let mut rc = RunConfig::new(Subcommand::Encrypt);
                rc.key_hex = Some(key);
                rc.plaintext_hex = Some(plaintext);
                rc.trace = trace;
                rc.output_path = out.out;
                rc
            }
            Command::Inject {
                target,
                plaintext,
                out,
            } => {
                let mut rc = RunConfig::new(Subcommand::Inject);
                apply_target(&mut rc, target);
                rc.plaintext_hex = plaintext;
                rc.output_path = out.out;
                rc
            }
            Command::Attack { target, out } => {
                let mut rc = RunConfig::new(Subcommand::Attack);
                apply_target(&mut rc, target);
                rc.output_path = out.out;
                rc
            }
            Command::StealthCheck {
                target,
                patterns,
                trials,
                out,
            } => {
                let mut rc = RunConfig::new(Subcommand::StealthCheck);
                apply_target(&mut rc, target);
                rc.pattern_set_path = patterns;
                rc.trials = trials;
                rc.output_path = out.out;
                rc
            }
            Command::GateReport { config, out } => {
                let mut rc = RunConfig::new(Subcommand::GateReport);
                rc.trojan_config_path = Some(config);
                rc.output_path = out.out;
                rc
            }
            Command::SelectTrigger {
                patterns,
                p,
                q_max,
                polarity,
                seed,
                out,
            } => {
                let mut rc = RunConfig::new(Subcommand::SelectTrigger);
                rc.pattern_set_path = patterns;
                rc.width = p;
                rc.q_max = q_max;
                rc.polarity = polarity;
                rc.seed = seed;
                rc.output_path = out.out;
                rc
            }
        }
    }
}

fn main() -> ExitCode {
    let rc = Cli::parse().command.into_run_config();
    match execute(&rc) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(rc: &RunConfig) -> anyhow::Result<bool> {
    let report = run(rc)?;
    match &rc.output_path {
        Some(path) => {
            fs::write(path, &report.text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(report.text.as_bytes())?,
    }
    Ok(report.passed)
}
