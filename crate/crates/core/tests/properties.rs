use proptest::prelude::*;

use aes_trojan::aes::{
    add_round_key, encrypt_block, expand_key, f_function, mix_columns, shift_rows, sub_bytes,
    Block, Clocked, CoreSim, RoundKey,
};
use aes_trojan::recovery::{k10_from_ciphertext, reverse_key_schedule};
use aes_trojan::trojan::Polarity;

fn block() -> impl Strategy<Value = Block> {
    any::<[u8; 16]>().prop_map(Block)
}

proptest! {
    #[test]
    fn schedule_satisfies_word_recurrence(key in block()) {
        let ks = expand_key(&RoundKey::cipher_key(key)).unwrap();
        for i in 1..=10u8 {
            let [p0, p1, p2, p3] = *ks.round_key(i - 1).words();
            let [w0, w1, w2, w3] = *ks.round_key(i).words();
            prop_assert_eq!(w0, p0 ^ f_function(p3, i).unwrap());
            prop_assert_eq!(w1, w0 ^ p1);
            prop_assert_eq!(w2, w1 ^ p2);
            prop_assert_eq!(w3, w2 ^ p3);
        }
    }

    #[test]
    fn reverse_inverts_expand(key in block()) {
        let key = RoundKey::cipher_key(key);
        prop_assert_eq!(reverse_key_schedule(expand_key(&key).unwrap().last()).unwrap(), key);
    }

    #[test]
    fn expand_inverts_reverse(k10 in block()) {
        let k10 = RoundKey::new(k10, 10).unwrap();
        let key = reverse_key_schedule(&k10).unwrap();
        let ks = expand_key(&key).unwrap();
        prop_assert_eq!(ks.last(), &k10);
    }

    #[test]
    fn shift_rows_is_a_byte_permutation(s in block()) {
        let mut a = s.0.to_vec();
        let mut b = shift_rows(s).0.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        prop_assert_eq!(shift_rows(shift_rows(shift_rows(shift_rows(s)))), s);
    }

    #[test]
    fn mix_columns_is_linear(a in block(), b in block()) {
        prop_assert_eq!(mix_columns(a ^ b), mix_columns(a) ^ mix_columns(b));
    }

    #[test]
    fn add_round_key_is_an_involution(s in block(), k in block(), round in 0u8..=10) {
        let k = RoundKey::new(k, round).unwrap();
        prop_assert_eq!(add_round_key(add_round_key(s, &k), &k), s);
    }

    #[test]
    fn sub_bytes_leaves_input_untouched(s in block()) {
        let copy = s;
        let _ = sub_bytes(s);
        prop_assert_eq!(s, copy);
    }

    #[test]
    fn multicycle_matches_one_shot(key in block(), pt in block()) {
        let key = RoundKey::cipher_key(key);
        let mut core = CoreSim::new(expand_key(&key).unwrap());
        let (ct, cycles) = core.encrypt(pt).unwrap();
        prop_assert_eq!(ct, encrypt_block(pt, &key).unwrap());
        prop_assert_eq!(cycles, 13);
    }

    #[test]
    fn k10_extraction_twice_is_identity(c in block()) {
        for polarity in [Polarity::ForceOnes, Polarity::ForceZeros] {
            let once = k10_from_ciphertext(c, polarity).to_block();
            prop_assert_eq!(k10_from_ciphertext(once, polarity).to_block(), c);
        }
    }
}

#[test]
fn sub_bytes_is_a_bijection() {
    let mut seen = std::collections::HashSet::new();
    for b in 0..=255u8 {
        seen.insert(sub_bytes(Block::splat(b)).0[0]);
    }
    assert_eq!(seen.len(), 256);
}
