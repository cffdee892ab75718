//! A software model of an AES-128 hardware core carrying a sequential
//! hardware Trojan, and the attack that uses it to pull out the secret key.
//!
//! The Trojan watches `p` plaintext bits. After `Q` consecutive loads whose
//! plaintext matches the trigger pattern, its payload forces the input of the
//! last AES round to all ones (OR payload) or all zeros (AND payload). The
//! ciphertext then equals a known constant XOR the last round key `K_10`,
//! and inverting the key schedule from `K_10` yields the cipher key.
//!
//! ```
//! use aes_trojan::aes::{expand_key, Block, RoundKey};
//! use aes_trojan::recovery::run_attack;
//! use aes_trojan::trojan::{insert_trojan, Polarity, TrojanConfig};
//!
//! let key = RoundKey::cipher_key(Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c")?);
//! let config = TrojanConfig::new(vec![3, 17, 64, 90, 127], vec![true; 5], 8, Polarity::ForceOnes)?;
//! let mut core = insert_trojan(expand_key(&key)?, config.clone())?;
//!
//! let result = run_attack(&mut core, &config)?;
//! assert_eq!(result.recovered_key, key);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Modules:
//!
//! * [`aes`]: round layers, key expansion, one-shot encryption and the
//!   13-cycle multicycle core.
//! * [`trojan`]: trigger comparator, counter FSM, payload, insertion, trigger
//!   selection against a test-pattern set, and a structural gate tally.
//! * [`recovery`]: `K_10` extraction, reverse key schedule, end-to-end attack.
//! * [`harness`]: the commands behind the `aes-trojan` binary.
//!
//! The `book/` directory next to the workspace walks through each piece; its
//! code listings are compiled and run as doctests of this crate.

pub mod aes;
pub mod gf;
pub mod harness;
pub mod recovery;
pub mod trojan;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/aes.md")]
    mod aes {}
    #[doc = include_str!("../../../book/src/multicycle.md")]
    mod multicycle {}
    #[doc = include_str!("../../../book/src/trojan.md")]
    mod trojan {}
    #[doc = include_str!("../../../book/src/key-recovery.md")]
    mod key_recovery {}
    #[doc = include_str!("../../../book/src/stealth.md")]
    mod stealth {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
