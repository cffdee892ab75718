use super::block::{Block, RoundKey};
use super::key_schedule::{expand_key, KeySchedule};
use super::layers::{add_round_key, mix_columns, shift_rows, sub_bytes};
use super::AesError;

/// One full round. Round 10 skips MixColumns.
pub fn round(state: Block, key: &RoundKey) -> Block {
    let s = shift_rows(sub_bytes(state));
    let s = if key.round() == RoundKey::LAST_ROUND {
        s
    } else {
        mix_columns(s)
    };
    add_round_key(s, key)
}

pub fn encrypt_with_schedule(plaintext: Block, ks: &KeySchedule) -> Block {
    let state = add_round_key(plaintext, ks.cipher_key());
    ks.keys()[1..].iter().fold(state, round)
}

/// AES-128 encryption of one block under the cipher key `key`.
pub fn encrypt_block(plaintext: Block, key: &RoundKey) -> Result<Block, AesError> {
    Ok(encrypt_with_schedule(plaintext, &expand_key(key)?))
}
