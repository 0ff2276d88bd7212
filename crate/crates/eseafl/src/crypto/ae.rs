//! Authenticated encryption for setup-phase secret distribution.
//!
//! AES-256-GCM keyed by SHA-256(seed || "ae-key"). Nonces are fixed
//! purpose labels: each (seed, purpose) pair encrypts at most one message in
//! the protocol's lifetime, so no nonce ever repeats under a key.

use aes_gcm::aead::{Aead, KeyInit, Payload};
use aes_gcm::{Aes256Gcm, Nonce};
use sha2::{Digest, Sha256};

use super::kx::SharedSeed;
use super::CryptoError;

/// AEAD nonce length in bytes.
pub const NONCE_LEN: usize = 12;
/// Authentication tag length appended to every ciphertext.
pub const TAG_LEN: usize = 16;

/// Nonce label for the commitment-key ciphertext a dealer node sends each user.
pub const NONCE_COMMIT_KEY: &[u8; NONCE_LEN] = b"rho-dist\0\0\0\0";
/// Nonce label for mask-seed ciphertexts in master-derived seed mode.
pub const NONCE_MASK_SEED: &[u8; NONCE_LEN] = b"seed-dist\0\0\0";
/// Nonce label for master-secret shares exchanged between assisting nodes.
pub const NONCE_MASTER_SHARE: &[u8; NONCE_LEN] = b"share-dist\0\0";

fn cipher_for(seed: &SharedSeed) -> Aes256Gcm {
    let mut hasher = Sha256::new();
    hasher.update(seed.as_bytes());
    hasher.update(b"ae-key");
    let key = hasher.finalize();
    Aes256Gcm::new(&key)
}

/// Encrypts `plaintext` under the seed-derived key. Output is ciphertext
/// followed by a 16-byte tag.
pub fn ae_encrypt(seed: &SharedSeed, plaintext: &[u8], nonce: &[u8; NONCE_LEN]) -> Vec<u8> {
    cipher_for(seed)
        .encrypt(
            Nonce::from_slice(nonce),
            Payload {
                msg: plaintext,
                aad: &[],
            },
        )
        .expect("AES-GCM encryption is infallible for in-memory buffers")
}

/// Decrypts and authenticates; any tampering or wrong key yields `AuthFailure`.
pub fn ae_decrypt(
    seed: &SharedSeed,
    ciphertext: &[u8],
    nonce: &[u8; NONCE_LEN],
) -> Result<Vec<u8>, CryptoError> {
    cipher_for(seed)
        .decrypt(
            Nonce::from_slice(nonce),
            Payload {
                msg: ciphertext,
                aad: &[],
            },
        )
        .map_err(|_| CryptoError::AuthFailure)
}
