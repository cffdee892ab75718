//! Structural gate tally for an inserted Trojan.
//!
//! This counts cells, it does not size them: synthesized area depends on the
//! cell library and is out of scope here.

use std::fmt::Write as _;

use super::config::{Polarity, TrojanConfig};

/// Payload width: one gate per state bit.
pub const PAYLOAD_GATES: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateReport {
    /// Inputs of the single AND comparator (`p`).
    pub trigger_inputs: u32,
    pub trigger_gates: u32,
    /// `ceil(log2(Q + 1))`, the bits needed to hold states `S_0..=S_Q`.
    pub counter_flip_flops: u32,
    /// Incrementer (n XOR + n-1 carry AND), synchronous reset (n AND) and one
    /// terminal-count detector.
    pub counter_logic_gates: u32,
    pub payload_gates: u32,
    pub payload_kind: Polarity,
}

impl GateReport {
    pub fn total(&self) -> u32 {
        self.trigger_gates + self.counter_flip_flops + self.counter_logic_gates + self.payload_gates
    }

    /// True when the payload outweighs everything else combined.
    pub fn payload_dominant(&self) -> bool {
        self.payload_gates > self.total() - self.payload_gates
    }

    /// Line-oriented `key,value` text with a fixed field order.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let kind = self.payload_kind.gate_name();
        let _ = writeln!(out, "trigger_and_gates,{}", self.trigger_gates);
        let _ = writeln!(out, "trigger_inputs,{}", self.trigger_inputs);
        let _ = writeln!(out, "counter_flip_flops,{}", self.counter_flip_flops);
        let _ = writeln!(out, "counter_logic_gates,{}", self.counter_logic_gates);
        let _ = writeln!(out, "payload_{kind}_gates,{}", self.payload_gates);
        let _ = writeln!(out, "total_cells,{}", self.total());
        let dominant = if self.payload_dominant() {
            "payload"
        } else {
            "trigger+counter"
        };
        let _ = writeln!(out, "dominant,{dominant}");
        out
    }
}

/// Bits needed to count up to `q`, i.e. `ceil(log2(q + 1))`.
pub fn counter_bits(q: u32) -> u32 {
    u32::BITS - q.leading_zeros()
}

pub fn gate_count_report(config: &TrojanConfig) -> GateReport {
    let n = counter_bits(config.q_max());
    GateReport {
        trigger_inputs: config.width() as u32,
        trigger_gates: 1,
        counter_flip_flops: n,
        counter_logic_gates: n + (n - 1) + n + 1,
        payload_gates: PAYLOAD_GATES,
        payload_kind: config.polarity(),
    }
}
