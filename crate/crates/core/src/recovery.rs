//! Key extraction from a Trojan-activated ciphertext.
//!
//! With the last round's input forced to a constant `A`, the ciphertext is
//! `SR(SB(A)) ^ K_10`, so `K_10` falls out with one XOR. The key schedule is
//! then walked backwards to `K_0`:
//!
//! ```text
//! W3[i-1] = W3[i] ^ W2[i]
//! W2[i-1] = W2[i] ^ W1[i]
//! W1[i-1] = W1[i] ^ W0[i]
//! W0[i-1] = W0[i] ^ f(W3[i-1], i)
//! ```

use std::fmt::Write as _;

use crate::aes::{
    encrypt_block, f_function, shift_rows, sub_bytes, AesError, Block, Clocked, ProtocolError,
    RoundKey,
};
use crate::trojan::{Polarity, TamperedCore, TrojanConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AttackError {
    #[error(transparent)]
    Aes(#[from] AesError),
    #[error("core protocol: {0}")]
    Protocol(#[from] ProtocolError),
    #[error("trojan did not activate: {0}")]
    ActivationFailure(String),
}

/// What the round-10 input constant looks like after SubBytes and ShiftRows.
pub fn forced_last_round_output(polarity: Polarity) -> Block {
    shift_rows(sub_bytes(polarity.forced_block()))
}

/// `K_10 = C ^ SR(SB(A))`. Only meaningful for a ciphertext produced with the
/// payload active; any other ciphertext yields an unrelated block.
pub fn k10_from_ciphertext(c: Block, polarity: Polarity) -> RoundKey {
    RoundKey::new(c ^ forced_last_round_output(polarity), RoundKey::LAST_ROUND)
        .expect("round 10 is in range")
}

/// One backwards step of the key schedule, `K_i` to `K_{i-1}`.
pub fn recover_previous_subkey(ki: &RoundKey) -> Result<RoundKey, AesError> {
    let round = ki.round();
    if round == 0 {
        return Err(AesError::RoundOutOfRange(0));
    }
    let [w0, w1, w2, w3] = *ki.words();
    let prev3 = w3 ^ w2;
    let prev2 = w2 ^ w1;
    let prev1 = w1 ^ w0;
    let prev0 = w0 ^ f_function(prev3, round)?;
    RoundKey::from_words([prev0, prev1, prev2, prev3], round - 1)
}

/// Walks `K_10` back to the cipher key.
pub fn reverse_key_schedule(k10: &RoundKey) -> Result<RoundKey, AesError> {
    if k10.round() != RoundKey::LAST_ROUND {
        return Err(AesError::WrongRoundIndex {
            expected: RoundKey::LAST_ROUND,
            found: k10.round(),
        });
    }
    (0..10).try_fold(*k10, |k, _| recover_previous_subkey(&k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackResult {
    pub recovered_k10: RoundKey,
    pub recovered_key: RoundKey,
    /// Trigger loads issued, `Q`.
    pub activation_cycles: u32,
    /// One `(plaintext, ciphertext)` pair per trigger load; the last one is
    /// the activated encryption.
    pub transcript: Vec<(Block, Block)>,
    /// Dormant encryption issued before the trigger sequence. It clears the
    /// counter and lets the recovered key be checked.
    pub probe: (Block, Block),
}

impl AttackResult {
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "recovered_key,{}", self.recovered_key.to_hex());
        let _ = writeln!(out, "k10,{}", self.recovered_k10.to_hex());
        let _ = writeln!(out, "activation_loads,{}", self.activation_cycles);
        let _ = writeln!(out, "probe,{},cipher,{}", self.probe.0, self.probe.1);
        for (p, c) in &self.transcript {
            let _ = writeln!(out, "load,{p},cipher,{c}");
        }
        out
    }
}

/// Drives the full attack against `core`, knowing only `config`.
///
/// 1. Encrypt a non-trigger probe plaintext, which resets the counter.
/// 2. Encrypt the trigger plaintext `Q` times back to back; the `Q`-th run
///    has the payload active.
/// 3. Peel `K_10` off the last ciphertext and reverse the key schedule.
///
/// The recovered key must reproduce the probe ciphertext, and for `Q > 1` the
/// activated ciphertext must differ from the first dormant one; otherwise the
/// Trojan never fired and [`AttackError::ActivationFailure`] is returned.
pub fn run_attack(
    core: &mut TamperedCore,
    config: &TrojanConfig,
) -> Result<AttackResult, AttackError> {
    let trigger = config.trigger_plaintext();
    let mut probe_pt = trigger;
    let first = config.positions()[0] as usize;
    probe_pt.set_bit(first, !trigger.bit(first));

    let (probe_ct, _) = core.encrypt(probe_pt)?;

    let transcript = (0..config.q_max())
        .map(|_| core.encrypt(trigger).map(|(c, _)| (trigger, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let captured = transcript.last().expect("q_max >= 1").1;

    if transcript.len() > 1 && transcript[0].1 == captured {
        return Err(AttackError::ActivationFailure(
            "activated ciphertext equals the dormant one".into(),
        ));
    }

    let recovered_k10 = k10_from_ciphertext(captured, config.polarity());
    let recovered_key = reverse_key_schedule(&recovered_k10)?;

    if encrypt_block(probe_pt, &recovered_key)? != probe_ct {
        return Err(AttackError::ActivationFailure(
            "recovered key does not reproduce the probe encryption".into(),
        ));
    }

    Ok(AttackResult {
        recovered_k10,
        recovered_key,
        activation_cycles: config.q_max(),
        transcript,
        probe: (probe_pt, probe_ct),
    })
}
