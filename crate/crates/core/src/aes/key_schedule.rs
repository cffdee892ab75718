//! Forward AES-128 key expansion.
//!
//! Each subkey is built from the previous one word by word:
//!
//! ```text
//! W0[i] = W0[i-1] ^ f(W3[i-1], i)
//! W1[i] = W0[i]   ^ W1[i-1]
//! W2[i] = W1[i]   ^ W2[i-1]
//! W3[i] = W2[i]   ^ W3[i-1]
//! ```
//!
//! where `f` rotates its word by one byte, substitutes each byte through the
//! s-box and XORs the round constant into the first byte.

use super::block::{RoundKey, Word};
use super::sbox::sub_byte;
use super::AesError;
use crate::gf::xtime;

/// The round constants `RC_1..RC_10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundConstants([u8; 10]);

impl RoundConstants {
    pub const fn generate() -> RoundConstants {
        let mut rc = [0u8; 10];
        rc[0] = 0x01;
        let mut i = 1;
        while i < 10 {
            rc[i] = xtime(rc[i - 1]);
            i += 1;
        }
        RoundConstants(rc)
    }

    /// `RC_round` for `round` in 1..=10.
    pub fn get(&self, round: u8) -> Result<u8, AesError> {
        match round {
            1..=10 => Ok(self.0[round as usize - 1]),
            _ => Err(AesError::RoundOutOfRange(round)),
        }
    }

    pub fn as_slice(&self) -> &[u8; 10] {
        &self.0
    }
}

pub const RC: RoundConstants = RoundConstants::generate();

/// The key-schedule word function for `round` in 1..=10.
pub fn f_function(w: Word, round: u8) -> Result<Word, AesError> {
    let rc = RC.get(round)?;
    let [f0, f1, f2, f3] = w.0;
    Ok(Word([
        sub_byte(f1) ^ rc,
        sub_byte(f2),
        sub_byte(f3),
        sub_byte(f0),
    ]))
}

/// `K_0` through `K_10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeySchedule {
    keys: [RoundKey; 11],
}

impl KeySchedule {
    pub fn keys(&self) -> &[RoundKey; 11] {
        &self.keys
    }

    pub fn round_key(&self, round: u8) -> &RoundKey {
        &self.keys[round as usize]
    }

    pub fn cipher_key(&self) -> &RoundKey {
        &self.keys[0]
    }

    pub fn last(&self) -> &RoundKey {
        &self.keys[10]
    }
}

/// One forward step, `K_{i-1}` to `K_i`.
fn next_round_key(prev: &RoundKey) -> Result<RoundKey, AesError> {
    let round = prev.round() + 1;
    let [p0, p1, p2, p3] = *prev.words();
    let w0 = p0 ^ f_function(p3, round)?;
    let w1 = w0 ^ p1;
    let w2 = w1 ^ p2;
    let w3 = w2 ^ p3;
    RoundKey::from_words([w0, w1, w2, w3], round)
}

pub fn expand_key(key: &RoundKey) -> Result<KeySchedule, AesError> {
    if key.round() != 0 {
        return Err(AesError::WrongRoundIndex {
            expected: 0,
            found: key.round(),
        });
    }
    let mut keys = [*key; 11];
    for i in 1..11 {
        keys[i] = next_round_key(&keys[i - 1])?;
    }
    Ok(KeySchedule { keys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aes::block::Block;

    #[test]
    fn round_constant_chain() {
        assert_eq!(
            RC.as_slice(),
            &[0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36]
        );
        assert!(RC.get(0).is_err());
        assert!(RC.get(11).is_err());
    }

    #[test]
    fn f_function_examples() {
        assert_eq!(
            f_function(Word([0; 4]), 1).unwrap(),
            Word([0x62, 0x63, 0x63, 0x63])
        );
        assert_eq!(
            f_function(Word([0; 4]), 2).unwrap(),
            Word([0x61, 0x63, 0x63, 0x63])
        );
        let w = Word([0x12, 0x34, 0x56, 0x78]);
        assert_eq!(f_function(w, 5).unwrap().0[3], sub_byte(0x12));
        assert!(matches!(
            f_function(w, 0),
            Err(AesError::RoundOutOfRange(0))
        ));
        assert!(matches!(
            f_function(w, 11),
            Err(AesError::RoundOutOfRange(11))
        ));
    }

    #[test]
    fn zero_key_first_subkey() {
        let ks = expand_key(&RoundKey::cipher_key(Block::ZERO)).unwrap();
        assert_eq!(ks.round_key(1).to_hex(), "62636363626363636263636362636363");
        assert_eq!(ks.last().to_hex(), "b4ef5bcb3e92e21123e951cf6f8f188e");
    }

    #[test]
    fn standard_example_key_last_subkey() {
        let key = Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c").unwrap();
        let ks = expand_key(&RoundKey::cipher_key(key)).unwrap();
        assert_eq!(ks.round_key(1).to_hex(), "a0fafe1788542cb123a339392a6c7605");
        assert_eq!(ks.last().to_hex(), "d014f9a8c9ee2589e13f0cc8b6630ca6");
        assert_eq!(ks.cipher_key().to_block(), key);
        for (i, k) in ks.keys().iter().enumerate() {
            assert_eq!(k.round() as usize, i);
        }
    }

    #[test]
    fn rejects_non_initial_key() {
        let k = RoundKey::new(Block::ZERO, 10).unwrap();
        assert!(matches!(
            expand_key(&k),
            Err(AesError::WrongRoundIndex {
                expected: 0,
                found: 10
            })
        ));
    }
}
