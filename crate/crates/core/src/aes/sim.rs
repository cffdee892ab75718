//! Clock-level model of a multicycle AES-128 core.
//!
//! One round datapath is reused for all ten rounds; its result is written back
//! to a single round register. The handshake is `load` (capture plaintext),
//! `start` (begin encryption) and `done` (ciphertext valid in the register).
//!
//! Cycle budget, counted from the load cycle:
//!
//! | cycle | action                                   |
//! |-------|------------------------------------------|
//! | 1     | `load`: plaintext into the round register |
//! | 2     | `start`: initial AddRoundKey with `K_0`  |
//! | 3..12 | rounds 1..10                             |
//! | 13    | `done` raised, register holds ciphertext |

use std::fmt;

use super::block::Block;
use super::cipher::round;
use super::key_schedule::KeySchedule;
use super::layers::add_round_key;

/// Cycles from the load edge to `done`.
pub const CYCLES_PER_ENCRYPTION: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Idle,
    Loaded,
    Running,
    Done,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Idle => "idle",
            Phase::Loaded => "loaded",
            Phase::Running => "running",
            Phase::Done => "done",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pin values for one clock edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SimInputs {
    pub load: bool,
    pub start: bool,
    pub plaintext: Block,
}

impl SimInputs {
    pub fn idle() -> SimInputs {
        SimInputs::default()
    }

    pub fn load(plaintext: Block) -> SimInputs {
        SimInputs {
            load: true,
            start: false,
            plaintext,
        }
    }

    pub fn start() -> SimInputs {
        SimInputs {
            load: false,
            start: true,
            plaintext: Block::ZERO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Signals {
    pub load: bool,
    pub start: bool,
    pub done: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ProtocolError {
    #[error("start asserted in phase `{0}` without a loaded plaintext")]
    StartWithoutLoad(Phase),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSim {
    round_register: Block,
    round_index: u8,
    key_schedule: KeySchedule,
    phase: Phase,
    last_load: bool,
    last_start: bool,
}

impl CoreSim {
    /// A freshly reset core with `ks` installed.
    pub fn new(key_schedule: KeySchedule) -> CoreSim {
        CoreSim {
            round_register: Block::ZERO,
            round_index: 0,
            key_schedule,
            phase: Phase::Idle,
            last_load: false,
            last_start: false,
        }
    }

    /// Back to `Idle` with a zeroed register. The key schedule is kept.
    pub fn reset(&mut self) {
        *self = CoreSim::new(self.key_schedule);
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn round_index(&self) -> u8 {
        self.round_index
    }

    pub fn round_register(&self) -> Block {
        self.round_register
    }

    pub fn key_schedule(&self) -> &KeySchedule {
        &self.key_schedule
    }

    pub fn done(&self) -> bool {
        self.phase == Phase::Done
    }

    pub fn signals(&self) -> Signals {
        Signals {
            load: self.last_load,
            start: self.last_start,
            done: self.done(),
        }
    }

    /// The ciphertext, once `done` is high.
    pub fn output(&self) -> Option<Block> {
        self.done().then_some(self.round_register)
    }

    /// Advance one clock edge.
    pub fn step(&mut self, inputs: SimInputs) -> Result<(), ProtocolError> {
        self.step_with(inputs, |b| b)
    }

    /// Advance one clock edge with `tap` spliced into the path from the round
    /// register to the round datapath.
    pub(crate) fn step_with(
        &mut self,
        inputs: SimInputs,
        tap: impl FnOnce(Block) -> Block,
    ) -> Result<(), ProtocolError> {
        if inputs.load {
            self.round_register = inputs.plaintext;
            self.round_index = 0;
            self.phase = Phase::Loaded;
        } else {
            match self.phase {
                Phase::Idle | Phase::Done if inputs.start => {
                    return Err(ProtocolError::StartWithoutLoad(self.phase));
                }
                Phase::Idle | Phase::Done => {}
                Phase::Loaded => {
                    if inputs.start {
                        self.round_register =
                            add_round_key(self.round_register, self.key_schedule.cipher_key());
                        self.phase = Phase::Running;
                    }
                }
                Phase::Running if self.round_index < 10 => {
                    self.round_index += 1;
                    let key = self.key_schedule.round_key(self.round_index);
                    self.round_register = round(tap(self.round_register), key);
                }
                Phase::Running => self.phase = Phase::Done,
            }
        }
        self.last_load = inputs.load;
        self.last_start = inputs.start;
        Ok(())
    }

    /// `cycle,<n>,phase,<name>,round,<i>,reg,<hex32>`
    pub fn trace_line(&self, cycle: u64) -> String {
        format!(
            "cycle,{cycle},phase,{},round,{},reg,{}",
            self.phase,
            self.round_index,
            self.round_register.to_hex()
        )
    }
}

impl Clocked for CoreSim {
    fn step(&mut self, inputs: SimInputs) -> Result<(), ProtocolError> {
        CoreSim::step(self, inputs)
    }

    fn output(&self) -> Option<Block> {
        CoreSim::output(self)
    }
}

/// Anything driven through the load/start/done handshake.
pub trait Clocked {
    fn step(&mut self, inputs: SimInputs) -> Result<(), ProtocolError>;

    fn output(&self) -> Option<Block>;

    /// Load `plaintext`, start, and clock until `done`. Returns the ciphertext
    /// and the number of cycles from the load edge.
    fn encrypt(&mut self, plaintext: Block) -> Result<(Block, u32), ProtocolError> {
        self.step(SimInputs::load(plaintext))?;
        self.step(SimInputs::start())?;
        let mut cycles = 2;
        loop {
            self.step(SimInputs::idle())?;
            cycles += 1;
            if let Some(c) = self.output() {
                return Ok((c, cycles));
            }
            assert!(cycles <= CYCLES_PER_ENCRYPTION, "core never raised done");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aes::block::RoundKey;
    use crate::aes::cipher::encrypt_block;
    use crate::aes::key_schedule::expand_key;

    fn core_for(key_hex: &str) -> (CoreSim, RoundKey) {
        let key = RoundKey::cipher_key(Block::from_hex(key_hex).unwrap());
        (CoreSim::new(expand_key(&key).unwrap()), key)
    }

    #[test]
    fn reset_state() {
        let (mut core, _) = core_for("000102030405060708090a0b0c0d0e0f");
        let ks = *core.key_schedule();
        assert!(!core.done());
        assert_eq!(core.phase(), Phase::Idle);
        assert_eq!(core.round_register(), Block::ZERO);

        core.encrypt(Block::splat(7)).unwrap();
        core.reset();
        let once = core.clone();
        core.reset();
        assert_eq!(core, once);
        assert!(!core.done());
        assert_eq!(core.key_schedule(), &ks);
    }

    #[test]
    fn multicycle_matches_one_shot_in_thirteen_cycles() {
        let (mut core, key) = core_for("000102030405060708090a0b0c0d0e0f");
        let pt = Block::from_hex("00112233445566778899aabbccddeeff").unwrap();
        let (ct, cycles) = core.encrypt(pt).unwrap();
        assert_eq!(ct.to_hex(), "69c4e0d86a7b0430d8cdb78070b4c55a");
        assert_eq!(ct, encrypt_block(pt, &key).unwrap());
        assert_eq!(cycles, CYCLES_PER_ENCRYPTION);
    }

    #[test]
    fn done_low_until_completion_and_round_index_monotone() {
        let (mut core, _) = core_for("2b7e151628aed2a6abf7158809cf4f3c");
        let mut inputs = vec![SimInputs::load(Block::splat(0x42)), SimInputs::start()];
        inputs.extend(std::iter::repeat_n(SimInputs::idle(), 10));
        let mut prev = core.round_index();
        for i in inputs {
            core.step(i).unwrap();
            assert!(!core.done());
            assert!(core.round_index() <= prev + 1);
            prev = core.round_index();
        }
        core.step(SimInputs::idle()).unwrap();
        assert!(core.done());
        assert!(core.signals().done);
    }

    #[test]
    fn done_holds_until_next_load_and_reload_is_clean() {
        let (mut core, key) = core_for("2b7e151628aed2a6abf7158809cf4f3c");
        let (c1, _) = core.encrypt(Block::splat(1)).unwrap();
        for _ in 0..5 {
            core.step(SimInputs::idle()).unwrap();
            assert_eq!(core.output(), Some(c1));
        }
        let p2 = Block::from_hex("3243f6a8885a308d313198a2e0370734").unwrap();
        core.step(SimInputs::load(p2)).unwrap();
        assert!(!core.done());
        core.step(SimInputs::start()).unwrap();
        while !core.done() {
            core.step(SimInputs::idle()).unwrap();
        }
        assert_eq!(
            core.output().unwrap().to_hex(),
            "3925841d02dc09fbdc118597196a0b32"
        );
        assert_eq!(core.output().unwrap(), encrypt_block(p2, &key).unwrap());
    }

    #[test]
    fn start_without_load_is_a_protocol_error() {
        let (mut core, _) = core_for("00000000000000000000000000000000");
        let before = core.clone();
        assert_eq!(
            core.step(SimInputs::start()),
            Err(ProtocolError::StartWithoutLoad(Phase::Idle))
        );
        assert_eq!(core, before);

        core.encrypt(Block::ZERO).unwrap();
        assert_eq!(
            core.step(SimInputs::start()),
            Err(ProtocolError::StartWithoutLoad(Phase::Done))
        );
        assert!(core.done());
    }

    #[test]
    fn trace_line_format() {
        let (mut core, _) = core_for("00000000000000000000000000000000");
        core.step(SimInputs::load(Block::splat(0xab))).unwrap();
        assert_eq!(
            core.trace_line(1),
            "cycle,1,phase,loaded,round,0,reg,abababababababababababababababab"
        );
    }
}
