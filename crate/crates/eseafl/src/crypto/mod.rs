//! Cryptographic primitives: curve group operations, key exchange, signatures,
//! authenticated encryption, PRF-based mask expansion, and Shamir secret sharing.
//!
//! Everything here is a pure function of its inputs plus an injected entropy
//! source, so values can be shared freely across threads.

pub mod ae;
pub mod group;
pub mod kx;
pub mod prf;
pub mod shamir;
pub mod sig;

pub use ae::{ae_decrypt, ae_encrypt, NONCE_LEN, TAG_LEN};
pub use group::{CompressedPoint, Point, Scalar, COMPRESSED_POINT_LEN, SCALAR_LEN};
pub use kx::{kx_derive, kx_keygen, KxKeyPair, SharedSeed, SEED_LEN};
pub use prf::{prf_derive_scalar, prf_expand_masks};
pub use shamir::{shamir_reconstruct, shamir_share, Field, ShamirShare};
pub use sig::{sig_sign, sig_verify, SigKeyPair, Signature, SIGNATURE_LEN};

/// Errors produced by the primitives in this module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CryptoError {
    /// A byte string did not decode to a valid curve point.
    #[error("invalid curve point encoding")]
    InvalidPoint,
    /// Authenticated decryption failed (wrong key or tampered ciphertext).
    #[error("authentication failure")]
    AuthFailure,
    /// Shamir threshold outside 1..=shares.
    #[error("invalid threshold {threshold} for {shares} shares")]
    InvalidThreshold { threshold: u32, shares: u32 },
    /// Fewer distinct shares than the reconstruction threshold.
    #[error("insufficient shares: got {got}, need {need}")]
    InsufficientShares { got: usize, need: usize },
    /// Two shares carry the same index.
    #[error("duplicate share index {0}")]
    DuplicateIndex(u32),
}
