//! Differential check against the RustCrypto `aes` crate, which shares no
//! code with this crate.

use aes::cipher::{BlockEncrypt, KeyInit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aes_trojan::aes::{encrypt_block, Block, RoundKey};

fn reference(key: &[u8; 16], pt: &[u8; 16]) -> [u8; 16] {
    let cipher = aes::Aes128::new(key.into());
    let mut block = (*pt).into();
    cipher.encrypt_block(&mut block);
    block.into()
}

#[test]
fn fixed_vectors_agree_with_reference() {
    let vectors = [
        (
            "000102030405060708090a0b0c0d0e0f",
            "00112233445566778899aabbccddeeff",
        ),
        (
            "2b7e151628aed2a6abf7158809cf4f3c",
            "3243f6a8885a308d313198a2e0370734",
        ),
        (
            "00000000000000000000000000000000",
            "00000000000000000000000000000000",
        ),
        (
            "ffffffffffffffffffffffffffffffff",
            "ffffffffffffffffffffffffffffffff",
        ),
    ];
    for (k, p) in vectors {
        let key = Block::from_hex(k).unwrap();
        let pt = Block::from_hex(p).unwrap();
        let ours = encrypt_block(pt, &RoundKey::cipher_key(key)).unwrap();
        assert_eq!(ours.0, reference(&key.0, &pt.0), "key {k}");
    }
}

#[test]
fn random_vectors_agree_with_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let key: [u8; 16] = rng.gen();
        let pt: [u8; 16] = rng.gen();
        let ours = encrypt_block(Block(pt), &RoundKey::cipher_key(Block(key))).unwrap();
        assert_eq!(ours.0, reference(&key, &pt));
    }
}
