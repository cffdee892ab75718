use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use super::AesError;

/// A 128-bit AES state.
///
/// Byte `j` sits at row `j % 4`, column `j / 4` of the 4x4 state matrix
/// (column-major, as in the AES standard). Hex text is big-endian: the
/// leftmost hex pair is byte 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Block(pub [u8; 16]);

impl Block {
    pub const ZERO: Block = Block([0x00; 16]);
    pub const ONES: Block = Block([0xff; 16]);

    /// A block with every byte equal to `b`.
    pub const fn splat(b: u8) -> Block {
        Block([b; 16])
    }

    pub fn from_hex(s: &str) -> Result<Block, AesError> {
        let s = s.trim();
        if s.len() != 32 {
            return Err(AesError::HexLength(s.len()));
        }
        let mut out = [0u8; 16];
        hex::decode_to_slice(s, &mut out).map_err(|e| AesError::Hex(e.to_string()))?;
        Ok(Block(out))
    }

    /// Lowercase, 32 characters, no separators.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn as_bytes(&self) -> &[u8; 16] {
        &self.0
    }

    /// Byte at (`row`, `col`) of the state matrix.
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> u8 {
        self.0[4 * col + row]
    }

    /// Bit `i` of the block, counting from the most significant bit of byte 0.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.0[i / 8] >> (7 - i % 8)) & 1 == 1
    }

    #[inline]
    pub fn set_bit(&mut self, i: usize, v: bool) {
        let mask = 1u8 << (7 - i % 8);
        if v {
            self.0[i / 8] |= mask;
        } else {
            self.0[i / 8] &= !mask;
        }
    }

    /// The block as a big-endian integer; bit `i` of [`Block::bit`] is bit
    /// `127 - i` here.
    pub fn to_u128(&self) -> u128 {
        u128::from_be_bytes(self.0)
    }

    pub fn column(&self, col: usize) -> Word {
        let mut w = [0u8; 4];
        w.copy_from_slice(&self.0[4 * col..4 * col + 4]);
        Word(w)
    }
}

impl BitXor for Block {
    type Output = Block;

    fn bitxor(self, rhs: Block) -> Block {
        let mut out = self.0;
        out.iter_mut().zip(rhs.0).for_each(|(a, b)| *a ^= b);
        Block(out)
    }
}

impl From<[u8; 16]> for Block {
    fn from(bytes: [u8; 16]) -> Self {
        Block(bytes)
    }
}

impl FromStr for Block {
    type Err = AesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Block::from_hex(s)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block({})", self.to_hex())
    }
}

/// A 32-bit key-schedule word, bytes `k^0..k^3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub [u8; 4]);

impl BitXor for Word {
    type Output = Word;

    fn bitxor(self, rhs: Word) -> Word {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Word([a0 ^ b0, a1 ^ b1, a2 ^ b2, a3 ^ b3])
    }
}

/// One 128-bit subkey `K_i` split into its four words.
///
/// Round 0 is the cipher key itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RoundKey {
    words: [Word; 4],
    round: u8,
}

impl RoundKey {
    pub const LAST_ROUND: u8 = 10;

    pub fn new(block: Block, round: u8) -> Result<RoundKey, AesError> {
        if round > Self::LAST_ROUND {
            return Err(AesError::RoundOutOfRange(round));
        }
        Ok(RoundKey {
            words: [
                block.column(0),
                block.column(1),
                block.column(2),
                block.column(3),
            ],
            round,
        })
    }

    /// The cipher key, round index 0.
    pub fn cipher_key(block: Block) -> RoundKey {
        RoundKey {
            words: [
                block.column(0),
                block.column(1),
                block.column(2),
                block.column(3),
            ],
            round: 0,
        }
    }

    pub fn from_words(words: [Word; 4], round: u8) -> Result<RoundKey, AesError> {
        if round > Self::LAST_ROUND {
            return Err(AesError::RoundOutOfRange(round));
        }
        Ok(RoundKey { words, round })
    }

    pub fn words(&self) -> &[Word; 4] {
        &self.words
    }

    pub fn round(&self) -> u8 {
        self.round
    }

    pub fn to_block(&self) -> Block {
        let mut out = [0u8; 16];
        for (chunk, w) in out.chunks_exact_mut(4).zip(&self.words) {
            chunk.copy_from_slice(&w.0);
        }
        Block(out)
    }

    pub fn to_hex(&self) -> String {
        self.to_block().to_hex()
    }
}
