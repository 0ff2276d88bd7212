//! PRF-based mask expansion.
//!
//! Masks are AES-128 counter-mode keystream: key = SHA-256(seed || "mask")
//! truncated to 16 bytes, counter block = iteration number (32-bit BE) ||
//! block index (64-bit BE) || zero padding. Each 128-bit block yields four
//! 32-bit ring elements (little-endian words), which makes the expansion
//! prefix-consistent in the vector length.
//!
//! The randomness lane is domain-separated: a scalar mod the group order
//! derived as SHA-256(seed || "rho-lane" || t).

use aes::cipher::{BlockEncrypt, KeyInit};
use aes::Aes128;
use sha2::{Digest, Sha256};

use super::group::Scalar;
use super::kx::SharedSeed;

const WORDS_PER_BLOCK: usize = 4;

fn mask_cipher(seed: &SharedSeed) -> Aes128 {
    let mut hasher = Sha256::new();
    hasher.update(seed.as_bytes());
    hasher.update(b"mask");
    let digest = hasher.finalize();
    Aes128::new_from_slice(&digest[..16]).expect("16-byte AES key")
}

/// Expands `d` ring elements (mod 2^32) for iteration `t` under `seed`.
pub fn prf_expand_masks(seed: &SharedSeed, t: u32, d: usize) -> Vec<u32> {
    let cipher = mask_cipher(seed);
    let mut out = Vec::with_capacity(d);
    let blocks = d.div_ceil(WORDS_PER_BLOCK);
    let mut block = [0u8; 16];
    block[..4].copy_from_slice(&t.to_be_bytes());
    for index in 0..blocks as u64 {
        block[4..12].copy_from_slice(&index.to_be_bytes());
        let mut buf = aes::Block::from(block);
        cipher.encrypt_block(&mut buf);
        for word in buf.chunks_exact(4) {
            if out.len() == d {
                break;
            }
            out.push(u32::from_le_bytes(word.try_into().unwrap()));
        }
    }
    out
}

/// Derives the randomness-lane scalar for iteration `t` under `seed`,
/// reduced mod the group order.
pub fn prf_derive_scalar(seed: &SharedSeed, t: u32) -> Scalar {
    let mut hasher = Sha256::new();
    hasher.update(seed.as_bytes());
    hasher.update(b"rho-lane");
    hasher.update(t.to_be_bytes());
    let digest: [u8; 32] = hasher.finalize().into();
    Scalar::reduce_from_wide(&digest)
}
