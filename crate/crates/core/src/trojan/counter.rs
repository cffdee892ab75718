/// The Q-state trigger counter.
///
/// States run `S_0..=S_Q`. Each clock with `EN = 1` advances one state and
/// saturates at `S_Q`; any clock with `EN = 0` returns to `S_0`. The output is
/// high exactly in `S_Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterFsm {
    state: u32,
    q_max: u32,
}

impl CounterFsm {
    /// Panics if `q_max` is zero; configs are validated before this point.
    pub fn new(q_max: u32) -> CounterFsm {
        assert!(q_max >= 1, "counter depth must be at least 1");
        CounterFsm { state: 0, q_max }
    }

    pub fn state(&self) -> u32 {
        self.state
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }

    pub fn output(&self) -> bool {
        self.state == self.q_max
    }

    pub fn step(&mut self, en: bool) -> bool {
        self.state = if en {
            (self.state + 1).min(self.q_max)
        } else {
            0
        };
        self.output()
    }

    /// Value-style step.
    pub fn stepped(mut self, en: bool) -> CounterFsm {
        self.step(en);
        self
    }
}
