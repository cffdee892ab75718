use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Polarity, TrojanConfig};
use super::patterns::TestPatternSet;
use super::TrojanError;

/// Candidate (positions, values) draws before giving up.
pub const MAX_ATTEMPTS: u32 = 100_000;

/// Picks a width-`p` trigger that no pattern in `patterns` satisfies.
///
/// Each attempt draws `p` distinct positions and `p` values from a ChaCha8
/// stream seeded with `seed` and keeps the first draw that misses every
/// pattern. Identical inputs always yield the identical config.
pub fn select_trigger(
    patterns: &TestPatternSet,
    p: usize,
    q_max: u32,
    polarity: Polarity,
    seed: u64,
) -> Result<TrojanConfig, TrojanError> {
    select_trigger_bounded(patterns, p, q_max, polarity, seed, MAX_ATTEMPTS)
}

pub fn select_trigger_bounded(
    patterns: &TestPatternSet,
    p: usize,
    q_max: u32,
    polarity: Polarity,
    seed: u64,
    max_attempts: u32,
) -> Result<TrojanConfig, TrojanError> {
    if p == 0 {
        return Err(TrojanError::EmptyTrigger);
    }
    if p > 128 {
        return Err(TrojanError::TriggerTooWide(p));
    }
    if q_max == 0 {
        return Err(TrojanError::ZeroDepth);
    }
    let words: Vec<u128> = patterns.iter().map(|b| b.to_u128()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..max_attempts {
        let mut positions: Vec<u8> = sample(&mut rng, 128, p)
            .into_iter()
            .map(|i| i as u8)
            .collect();
        positions.sort_unstable();
        let values: Vec<bool> = (0..p).map(|_| rng.gen()).collect();

        let (mut mask, mut want) = (0u128, 0u128);
        for (&pos, &v) in positions.iter().zip(&values) {
            let bit = 1u128 << (127 - pos as u32);
            mask |= bit;
            if v {
                want |= bit;
            }
        }
        if words.iter().all(|&w| w & mask != want) {
            return TrojanConfig::new(positions, values, q_max, polarity);
        }
    }
    Err(TrojanError::NoEvadingTrigger {
        p,
        attempts: max_attempts,
    })
}
