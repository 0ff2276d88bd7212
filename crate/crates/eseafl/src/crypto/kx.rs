//! Non-interactive key exchange (ECDH) producing the per-pair shared seeds
//! that key all mask expansion.

use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};

use super::group::{CompressedPoint, Point, Scalar};
use super::CryptoError;

/// Byte length of a shared seed.
pub const SEED_LEN: usize = 32;

/// A 32-byte secret shared between one user and one assisting node.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct SharedSeed(pub [u8; SEED_LEN]);

impl std::fmt::Debug for SharedSeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Never print seed material.
        write!(f, "SharedSeed(..)")
    }
}

impl SharedSeed {
    pub fn as_bytes(&self) -> &[u8; SEED_LEN] {
        &self.0
    }
}

/// Key-exchange key pair: a scalar secret and its fixed-base public point.
#[derive(Debug, Clone)]
pub struct KxKeyPair {
    pub secret: Scalar,
    pub public: CompressedPoint,
}

/// Generates a key-exchange key pair. Zero scalars are resampled internally,
/// so this never fails.
pub fn kx_keygen<R: RngCore + CryptoRng>(rng: &mut R) -> KxKeyPair {
    let secret = loop {
        let candidate = Scalar::random(rng);
        if !candidate.is_zero() {
            break candidate;
        }
    };
    let public = Point::base_mul(&secret).compress();
    KxKeyPair { secret, public }
}

/// Derives the shared seed from our secret and the counterparty's public key.
/// Symmetric in the two parties' roles: the seed is the SHA-256 hash of the
/// compressed Diffie-Hellman point.
pub fn kx_derive(my_secret: &Scalar, their_public: &[u8]) -> Result<SharedSeed, CryptoError> {
    let point = Point::decompress(their_public)?;
    let shared = point.mul(my_secret);
    if shared.is_identity() {
        return Err(CryptoError::InvalidPoint);
    }
    let digest = Sha256::digest(shared.compress());
    Ok(SharedSeed(digest.into()))
}
