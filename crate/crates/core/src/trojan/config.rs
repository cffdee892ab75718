use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TrojanError;
use crate::aes::Block;

/// What the payload gates force the round input to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// OR gates: every bit forced to 1.
    #[serde(rename = "or")]
    ForceOnes,
    /// AND gates: every bit forced to 0.
    #[serde(rename = "and")]
    ForceZeros,
}

impl Polarity {
    /// The block the payload forces.
    pub fn forced_block(self) -> Block {
        match self {
            Polarity::ForceOnes => Block::ONES,
            Polarity::ForceZeros => Block::ZERO,
        }
    }

    pub fn gate_name(self) -> &'static str {
        match self {
            Polarity::ForceOnes => "or",
            Polarity::ForceZeros => "and",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.gate_name())
    }
}

impl FromStr for Polarity {
    type Err = TrojanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "or" => Ok(Polarity::ForceOnes),
            "and" => Ok(Polarity::ForceZeros),
            other => Err(TrojanError::Parse(format!("unknown polarity `{other}`"))),
        }
    }
}

/// A Type-p sequential Trojan: a p-input comparator on plaintext bits, a
/// counter of depth `q_max`, and 128 payload gates in front of the last round.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrojanConfig {
    positions: Vec<u8>,
    values: Vec<bool>,
    q_max: u32,
    polarity: Polarity,
    insertion_round: u8,
}

impl TrojanConfig {
    pub const INSERTION_ROUND: u8 = 10;

    /// `positions` index plaintext bits MSB-first from byte 0 (see [`Block::bit`]).
    pub fn new(
        positions: Vec<u8>,
        values: Vec<bool>,
        q_max: u32,
        polarity: Polarity,
    ) -> Result<TrojanConfig, TrojanError> {
        let config = TrojanConfig {
            positions,
            values,
            q_max,
            polarity,
            insertion_round: Self::INSERTION_ROUND,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), TrojanError> {
        let p = self.positions.len();
        if p == 0 {
            return Err(TrojanError::EmptyTrigger);
        }
        if p > 128 {
            return Err(TrojanError::TriggerTooWide(p));
        }
        if self.values.len() != p {
            return Err(TrojanError::LengthMismatch {
                positions: p,
                values: self.values.len(),
            });
        }
        let mut seen = [false; 128];
        for &pos in &self.positions {
            let slot = seen
                .get_mut(pos as usize)
                .ok_or(TrojanError::PositionOutOfRange(pos as u32))?;
            if *slot {
                return Err(TrojanError::DuplicatePosition(pos));
            }
            *slot = true;
        }
        if self.q_max == 0 {
            return Err(TrojanError::ZeroDepth);
        }
        if self.insertion_round != Self::INSERTION_ROUND {
            return Err(TrojanError::InsertionRound(self.insertion_round));
        }
        Ok(())
    }

    /// Trigger width `p`.
    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[u8] {
        &self.positions
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn insertion_round(&self) -> u8 {
        self.insertion_round
    }

    /// The plaintext with trigger bits set to their trigger values and all
    /// other bits zero.
    pub fn trigger_plaintext(&self) -> Block {
        let mut b = Block::ZERO;
        for (&pos, &v) in self.positions.iter().zip(&self.values) {
            b.set_bit(pos as usize, v);
        }
        b
    }

    pub fn from_toml(text: &str) -> Result<TrojanConfig, TrojanError> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| TrojanError::Parse(e.message().to_string()))?;
        file.try_into()
    }

    pub fn to_toml(&self) -> String {
        let file = ConfigFile {
            p: self.width(),
            positions: self.positions.iter().map(|&p| p as u32).collect(),
            values: self.values.iter().map(|&v| v as u8).collect(),
            q_max: self.q_max,
            polarity: self.polarity,
        };
        toml::to_string(&file).expect("config serializes")
    }
}

/// On-disk layout.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    p: usize,
    positions: Vec<u32>,
    values: Vec<u8>,
    q_max: u32,
    polarity: Polarity,
}

impl TryFrom<ConfigFile> for TrojanConfig {
    type Error = TrojanError;

    fn try_from(file: ConfigFile) -> Result<Self, Self::Error> {
        if file.p != file.positions.len() {
            return Err(TrojanError::Parse(format!(
                "p = {} but {} positions listed",
                file.p,
                file.positions.len()
            )));
        }
        let positions = file
            .positions
            .iter()
            .map(|&p| {
                u8::try_from(p)
                    .ok()
                    .filter(|&p| p < 128)
                    .ok_or(TrojanError::PositionOutOfRange(p))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let values = file
            .values
            .iter()
            .map(|&v| match v {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(TrojanError::Parse(format!(
                    "trigger value {other} is not a bit"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        TrojanConfig::new(positions, values, file.q_max, file.polarity)
    }
}
