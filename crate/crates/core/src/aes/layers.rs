//! The four round layers. Each takes the state by value and returns the new state.

use super::block::{Block, RoundKey};
use super::sbox::sub_byte;
use crate::gf::xtime;

pub fn sub_bytes(state: Block) -> Block {
    Block(state.0.map(sub_byte))
}

/// Row `r` rotates left by `r` positions.
pub fn shift_rows(state: Block) -> Block {
    let mut out = [0u8; 16];
    for col in 0..4 {
        for row in 0..4 {
            out[4 * col + row] = state.at(row, (col + row) % 4);
        }
    }
    Block(out)
}

pub fn mix_columns(state: Block) -> Block {
    let mut out = state.0;
    for column in out.chunks_exact_mut(4) {
        let [a0, a1, a2, a3] = [column[0], column[1], column[2], column[3]];
        let all = a0 ^ a1 ^ a2 ^ a3;
        // 2a_i ^ 3a_{i+1} ^ a_{i+2} ^ a_{i+3} = a_i ^ all ^ 2(a_i ^ a_{i+1})
        column[0] = a0 ^ all ^ xtime(a0 ^ a1);
        column[1] = a1 ^ all ^ xtime(a1 ^ a2);
        column[2] = a2 ^ all ^ xtime(a2 ^ a3);
        column[3] = a3 ^ all ^ xtime(a3 ^ a0);
    }
    Block(out)
}

pub fn add_round_key(state: Block, key: &RoundKey) -> Block {
    state ^ key.to_block()
}
