use super::config::{Polarity, TrojanConfig};
use super::counter::CounterFsm;
use super::TrojanError;
use crate::aes::{Block, Clocked, CoreSim, KeySchedule, ProtocolError, SimInputs};

/// The p-input AND comparator: `EN` is high iff every trigger bit of
/// `plaintext` equals its trigger value.
pub fn trigger_eval(config: &TrojanConfig, plaintext: &Block) -> bool {
    config
        .positions()
        .iter()
        .zip(config.values())
        .all(|(&pos, &v)| plaintext.bit(pos as usize) == v)
}

/// The 128 payload gates. Transparent while `active` is low.
pub fn payload_apply(state: Block, polarity: Polarity, active: bool) -> Block {
    if active {
        polarity.forced_block()
    } else {
        state
    }
}

/// A multicycle core with the Trojan wired in.
///
/// The counter is clocked by `load`. When a load brings the counter to `S_Q`
/// the payload latches on and stays on for that whole encryption; the next
/// load re-evaluates it. While latched, the payload overrides the round
/// register on its way into the round datapath.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamperedCore {
    core: CoreSim,
    config: TrojanConfig,
    counter: CounterFsm,
    activated: bool,
}

pub fn insert_trojan(ks: KeySchedule, config: TrojanConfig) -> Result<TamperedCore, TrojanError> {
    config.validate()?;
    Ok(TamperedCore {
        core: CoreSim::new(ks),
        counter: CounterFsm::new(config.q_max()),
        config,
        activated: false,
    })
}

impl TamperedCore {
    pub fn step(&mut self, inputs: SimInputs) -> Result<(), ProtocolError> {
        if inputs.load {
            let en = trigger_eval(&self.config, &inputs.plaintext);
            self.activated = self.counter.step(en);
        }
        let (polarity, active) = (self.config.polarity(), self.activated);
        self.core
            .step_with(inputs, |reg| payload_apply(reg, polarity, active))
    }

    pub fn core(&self) -> &CoreSim {
        &self.core
    }

    pub fn counter(&self) -> &CounterFsm {
        &self.counter
    }

    pub fn activated(&self) -> bool {
        self.activated
    }

    pub fn config(&self) -> &TrojanConfig {
        &self.config
    }

    pub fn done(&self) -> bool {
        self.core.done()
    }

    pub fn output(&self) -> Option<Block> {
        self.core.output()
    }
}

impl Clocked for TamperedCore {
    fn step(&mut self, inputs: SimInputs) -> Result<(), ProtocolError> {
        TamperedCore::step(self, inputs)
    }

    fn output(&self) -> Option<Block> {
        TamperedCore::output(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aes::{expand_key, RoundKey, CYCLES_PER_ENCRYPTION};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn config(q: u32, polarity: Polarity) -> TrojanConfig {
        TrojanConfig::new(
            vec![3, 50, 64, 99, 120],
            vec![true, true, false, true, false],
            q,
            polarity,
        )
        .unwrap()
    }

    fn schedule(seed: u64) -> KeySchedule {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        expand_key(&RoundKey::cipher_key(Block(rng.gen()))).unwrap()
    }

    #[test]
    fn trigger_comparator() {
        let c = config(2, Polarity::ForceOnes);
        let t = c.trigger_plaintext();
        assert!(trigger_eval(&c, &t));
        for &pos in c.positions() {
            let mut flipped = t;
            flipped.set_bit(pos as usize, !t.bit(pos as usize));
            assert!(!trigger_eval(&c, &flipped));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p: Block = Block(rng.gen());
        let exact = TrojanConfig::new(
            (0..128).collect(),
            (0..128).map(|i| p.bit(i)).collect(),
            1,
            Polarity::ForceOnes,
        )
        .unwrap();
        assert!(trigger_eval(&exact, &p));
    }

    #[test]
    fn payload_polarities() {
        let x = Block::splat(0x3c);
        assert_eq!(payload_apply(x, Polarity::ForceOnes, false), x);
        assert_eq!(payload_apply(x, Polarity::ForceZeros, false), x);
        assert_eq!(payload_apply(x, Polarity::ForceOnes, true), Block::ONES);
        assert_eq!(payload_apply(x, Polarity::ForceZeros, true), Block::ZERO);
    }

    #[test]
    fn q_trigger_loads_force_last_round_input() {
        for polarity in [Polarity::ForceOnes, Polarity::ForceZeros] {
            let ks = schedule(1);
            let c = config(3, polarity);
            let t = c.trigger_plaintext();
            let mut core = insert_trojan(ks, c).unwrap();
            let mut clean = CoreSim::new(ks);
            for _ in 0..2 {
                assert_eq!(core.encrypt(t).unwrap(), clean.encrypt(t).unwrap());
                assert!(!core.activated());
            }
            let (ct, cycles) = core.encrypt(t).unwrap();
            assert!(core.activated());
            assert_eq!(cycles, CYCLES_PER_ENCRYPTION);
            let constant = match polarity {
                Polarity::ForceOnes => Block::splat(0x16),
                Polarity::ForceZeros => Block::splat(0x63),
            };
            assert_eq!(ct ^ constant, ks.last().to_block());
        }
    }

    #[test]
    fn a_miss_resets_the_counter() {
        let ks = schedule(2);
        let c = config(3, Polarity::ForceOnes);
        let t = c.trigger_plaintext();
        let mut miss = t;
        miss.set_bit(3, false);
        let mut core = insert_trojan(ks, c).unwrap();
        let mut clean = CoreSim::new(ks);
        for p in [t, t, miss, t, t, miss, t, t] {
            assert_eq!(core.encrypt(p).unwrap(), clean.encrypt(p).unwrap());
            assert!(!core.activated());
        }
        core.encrypt(t).unwrap();
        assert!(core.activated());
        // a further trigger load keeps it active (saturation); a miss clears it
        core.encrypt(t).unwrap();
        assert!(core.activated());
        assert_eq!(core.encrypt(miss).unwrap(), clean.encrypt(miss).unwrap());
        assert!(!core.activated());
    }

    #[test]
    fn dormant_trace_matches_clean_cycle_by_cycle() {
        let ks = schedule(3);
        let c = config(2, Polarity::ForceOnes);
        let t = c.trigger_plaintext();
        let mut core = insert_trojan(ks, c).unwrap();
        let mut clean = CoreSim::new(ks);
        let stimulus = [
            SimInputs::load(t),
            SimInputs::start(),
            SimInputs::idle(),
            SimInputs::idle(),
            SimInputs::load(Block::splat(0x11)),
            SimInputs::start(),
        ]
        .into_iter()
        .chain(std::iter::repeat_n(SimInputs::idle(), 14));
        for (cycle, i) in stimulus.enumerate() {
            core.step(i).unwrap();
            clean.step(i).unwrap();
            assert_eq!(
                core.core().trace_line(cycle as u64),
                clean.trace_line(cycle as u64)
            );
        }
    }

    #[test]
    fn protocol_errors_propagate() {
        let mut core = insert_trojan(schedule(4), config(1, Polarity::ForceOnes)).unwrap();
        assert!(core.step(SimInputs::start()).is_err());
    }
}
