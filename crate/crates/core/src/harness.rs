//! Command implementations behind the `aes-trojan` binary.
//!
//! Every command is a pure function of its inputs and seed and returns a
//! line-oriented [`Report`]. Randomness comes only from ChaCha8 streams seeded
//! by `--seed`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aes::{
    expand_key, AesError, Block, Clocked, CoreSim, ProtocolError, RoundKey, SimInputs,
};
use crate::recovery::{run_attack, AttackError};
use crate::trojan::{
    gate_count_report, insert_trojan, select_trigger, trigger_eval, Polarity, TestPatternSet,
    TrojanConfig, TrojanError,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Aes(#[from] AesError),
    #[error(transparent)]
    Trojan(#[from] TrojanError),
    #[error(transparent)]
    Attack(#[from] AttackError),
    #[error("core protocol: {0}")]
    Protocol(#[from] ProtocolError),
}

/// Command output plus its self-check verdict. The process exit code is 0
/// iff `passed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, passed: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Encrypt,
    Inject,
    Attack,
    StealthCheck,
    GateReport,
    SelectTrigger,
}

/// Everything a single invocation needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub key_hex: Option<String>,
    pub plaintext_hex: Option<String>,
    pub trojan_config_path: Option<PathBuf>,
    pub pattern_set_path: Option<PathBuf>,
    pub seed: u64,
    pub trials: u64,
    pub output_path: Option<PathBuf>,
    pub trace: bool,
    /// Trigger width for `select-trigger`.
    pub width: usize,
    /// Counter depth for `select-trigger`.
    pub q_max: u32,
    /// Payload polarity for `select-trigger`.
    pub polarity: Polarity,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> RunConfig {
        RunConfig {
            subcommand,
            key_hex: None,
            plaintext_hex: None,
            trojan_config_path: None,
            pattern_set_path: None,
            seed: 0,
            trials: 1000,
            output_path: None,
            trace: false,
            width: 5,
            q_max: 8,
            polarity: Polarity::ForceOnes,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Usage("--trials must be at least 1".into()));
        }
        for hex in [&self.key_hex, &self.plaintext_hex].into_iter().flatten() {
            Block::from_hex(hex)?;
        }
        Ok(())
    }

    fn config(&self) -> Result<TrojanConfig, HarnessError> {
        let path = self
            .trojan_config_path
            .as_deref()
            .ok_or_else(|| HarnessError::Usage("--config is required".into()))?;
        Ok(TrojanConfig::from_toml(&read(path)?)?)
    }

    fn patterns(&self) -> Result<Option<TestPatternSet>, HarnessError> {
        self.pattern_set_path
            .as_deref()
            .map(|p| Ok(TestPatternSet::parse(&read(p)?)?))
            .transpose()
    }

    fn key(&self) -> Result<RoundKey, HarnessError> {
        key_or_seeded(self.key_hex.as_deref(), self.seed)
    }
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })
}

fn key_or_seeded(key_hex: Option<&str>, seed: u64) -> Result<RoundKey, HarnessError> {
    let block = match key_hex {
        Some(hex) => Block::from_hex(hex)?,
        None => Block(ChaCha8Rng::seed_from_u64(seed).gen()),
    };
    Ok(RoundKey::cipher_key(block))
}

pub fn run(rc: &RunConfig) -> Result<Report, HarnessError> {
    rc.validate()?;
    match rc.subcommand {
        Subcommand::Encrypt => {
            let key = rc
                .key_hex
                .as_deref()
                .ok_or_else(|| HarnessError::Usage("--key is required".into()))?;
            let pt = rc
                .plaintext_hex
                .as_deref()
                .ok_or_else(|| HarnessError::Usage("--plaintext is required".into()))?;
            if rc.trace {
                cmd_encrypt_traced(key, pt)
            } else {
                cmd_encrypt(key, pt)
            }
        }
        Subcommand::Inject => {
            let pt = rc
                .plaintext_hex
                .as_deref()
                .map(Block::from_hex)
                .transpose()?;
            cmd_inject(&rc.key()?, &rc.config()?, pt)
        }
        Subcommand::Attack => cmd_attack(&rc.key()?, &rc.config()?),
        Subcommand::StealthCheck => cmd_stealth_check(
            &rc.key()?,
            &rc.config()?,
            rc.patterns()?.as_ref(),
            rc.trials,
            rc.seed,
        ),
        Subcommand::GateReport => cmd_gate_report(&rc.config()?),
        Subcommand::SelectTrigger => cmd_select_trigger(
            &rc.patterns()?.unwrap_or_default(),
            rc.width,
            rc.q_max,
            rc.polarity,
            rc.seed,
        ),
    }
}

/// Ciphertext hex through the multicycle core, one line.
pub fn cmd_encrypt(key_hex: &str, plaintext_hex: &str) -> Result<Report, HarnessError> {
    let key = RoundKey::cipher_key(Block::from_hex(key_hex)?);
    let pt = Block::from_hex(plaintext_hex)?;
    let mut core = CoreSim::new(expand_key(&key)?);
    let (ct, _) = core.encrypt(pt)?;
    Ok(Report::ok(format!("{ct}\n")))
}

/// As [`cmd_encrypt`], preceded by one trace line per clock cycle.
pub fn cmd_encrypt_traced(key_hex: &str, plaintext_hex: &str) -> Result<Report, HarnessError> {
    let key = RoundKey::cipher_key(Block::from_hex(key_hex)?);
    let pt = Block::from_hex(plaintext_hex)?;
    let mut core = CoreSim::new(expand_key(&key)?);
    let mut text = String::new();
    let mut cycle = 0u64;
    let mut clock = |core: &mut CoreSim, inputs: SimInputs, text: &mut String| {
        cycle += 1;
        core.step(inputs)?;
        let _ = writeln!(text, "{}", core.trace_line(cycle));
        Ok::<_, HarnessError>(())
    };
    clock(&mut core, SimInputs::load(pt), &mut text)?;
    clock(&mut core, SimInputs::start(), &mut text)?;
    while !core.done() {
        clock(&mut core, SimInputs::idle(), &mut text)?;
    }
    let _ = writeln!(text, "{}", core.round_register());
    Ok(Report::ok(text))
}

/// Feeds `plaintext` (default: the trigger plaintext) to a tampered core
/// `q_max` times and shows the counter and payload state after each load.
pub fn cmd_inject(
    key: &RoundKey,
    config: &TrojanConfig,
    plaintext: Option<Block>,
) -> Result<Report, HarnessError> {
    let pt = plaintext.unwrap_or_else(|| config.trigger_plaintext());
    let mut core = insert_trojan(expand_key(key)?, config.clone())?;
    let mut text = String::new();
    for i in 1..=config.q_max() {
        let (ct, _) = core.encrypt(pt)?;
        let _ = writeln!(
            text,
            "load,{i},plaintext,{pt},counter,{},active,{},cipher,{ct}",
            core.counter().state(),
            core.activated() as u8
        );
    }
    Ok(Report::ok(text))
}

/// Installs `key` behind a Trojan built from `config`, runs the attack and
/// compares the recovered key with the installed one.
pub fn cmd_attack(key: &RoundKey, config: &TrojanConfig) -> Result<Report, HarnessError> {
    let mut core = insert_trojan(expand_key(key)?, config.clone())?;
    let result = run_attack(&mut core, config)?;
    let passed = result.recovered_key == *key;
    let mut text = result.to_report();
    let _ = writeln!(text, "installed_key,{}", key.to_hex());
    let _ = writeln!(text, "result,{}", if passed { "PASS" } else { "FAIL" });
    Ok(Report { text, passed })
}

/// Differential run of clean and tampered cores over `trials` random
/// non-trigger plaintexts and every test pattern. One line.
pub fn cmd_stealth_check(
    key: &RoundKey,
    config: &TrojanConfig,
    patterns: Option<&TestPatternSet>,
    trials: u64,
    seed: u64,
) -> Result<Report, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::Usage("--trials must be at least 1".into()));
    }
    let ks = expand_key(key)?;
    let mut clean = CoreSim::new(ks);
    let mut tampered = insert_trojan(ks, config.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut mismatches = 0u64;
    let mut compare = |pt: Block| -> Result<(), HarnessError> {
        let a = clean.encrypt(pt)?;
        let b = tampered.encrypt(pt)?;
        if a != b {
            mismatches += 1;
        }
        Ok(())
    };

    for _ in 0..trials {
        let pt = loop {
            let candidate = Block(rng.gen());
            if !trigger_eval(config, &candidate) {
                break candidate;
            }
        };
        compare(pt)?;
    }
    let empty = TestPatternSet::new();
    let patterns = patterns.unwrap_or(&empty);
    let mut violations = 0u64;
    for p in patterns.iter() {
        if trigger_eval(config, p) {
            violations += 1;
        }
        compare(*p)?;
    }

    let passed = mismatches == 0 && violations == 0;
    let text = format!(
        "stealth,trials,{trials},patterns,{},mismatches,{mismatches},evasion_violations,{violations},result,{}\n",
        patterns.len(),
        if passed { "PASS" } else { "FAIL" }
    );
    Ok(Report { text, passed })
}

pub fn cmd_gate_report(config: &TrojanConfig) -> Result<Report, HarnessError> {
    let mut text = format!("p,{}\nq_max,{}\n", config.width(), config.q_max());
    text.push_str(&gate_count_report(config).to_report());
    text.push_str(
        "note,synthesized area depends on the cell library and is not modeled; counts are structural\n",
    );
    Ok(Report::ok(text))
}

/// Emits a config file whose trigger misses every pattern.
pub fn cmd_select_trigger(
    patterns: &TestPatternSet,
    p: usize,
    q_max: u32,
    polarity: Polarity,
    seed: u64,
) -> Result<Report, HarnessError> {
    let config = select_trigger(patterns, p, q_max, polarity, seed)?;
    Ok(Report::ok(config.to_toml()))
}
