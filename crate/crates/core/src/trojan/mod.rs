//! The sequential hardware Trojan: trigger comparator, Q-state counter,
//! payload gates, insertion into the multicycle core, and trigger selection
//! against a known manufacturing test set.

mod config;
mod counter;
mod gates;
mod patterns;
mod select;
mod tampered;

pub use config::{Polarity, TrojanConfig};
pub use counter::CounterFsm;
pub use gates::{counter_bits, gate_count_report, GateReport, PAYLOAD_GATES};
pub use patterns::TestPatternSet;
pub use select::{select_trigger, select_trigger_bounded, MAX_ATTEMPTS};
pub use tampered::{insert_trojan, payload_apply, trigger_eval, TamperedCore};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrojanError {
    #[error("trigger must have at least one input")]
    EmptyTrigger,
    #[error("trigger width {0} exceeds 128 plaintext bits")]
    TriggerTooWide(usize),
    #[error("{positions} trigger positions but {values} trigger values")]
    LengthMismatch { positions: usize, values: usize },
    #[error("trigger position {0} is outside 0..128")]
    PositionOutOfRange(u32),
    #[error("trigger position {0} listed twice")]
    DuplicatePosition(u8),
    #[error("counter depth must be at least 1")]
    ZeroDepth,
    #[error("payload can only be inserted before round 10, not round {0}")]
    InsertionRound(u8),
    #[error("config: {0}")]
    Parse(String),
    #[error("pattern file line {line}: {message}")]
    PatternLine { line: usize, message: String },
    #[error("no width-{p} trigger evades the pattern set after {attempts} attempts")]
    NoEvadingTrigger { p: usize, attempts: u32 },
}
