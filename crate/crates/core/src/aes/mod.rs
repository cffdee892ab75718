//! Bit-exact AES-128: round layers, key expansion, one-shot encryption and a
//! multicycle core model.

mod block;
mod cipher;
mod key_schedule;
mod layers;
mod sbox;
mod sim;

pub use block::{Block, RoundKey, Word};
pub use cipher::{encrypt_block, encrypt_with_schedule, round};
pub use key_schedule::{expand_key, f_function, KeySchedule, RoundConstants, RC};
pub use layers::{add_round_key, mix_columns, shift_rows, sub_bytes};
pub use sbox::{sub_byte, SBOX};
pub use sim::{Clocked, CoreSim, Phase, ProtocolError, Signals, SimInputs, CYCLES_PER_ENCRYPTION};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AesError {
    #[error("round index {0} is outside the valid range")]
    RoundOutOfRange(u8),
    #[error("expected a round key with index {expected}, got {found}")]
    WrongRoundIndex { expected: u8, found: u8 },
    #[error("expected 32 hex characters, got {0}")]
    HexLength(usize),
    #[error("invalid hex: {0}")]
    Hex(String),
}
