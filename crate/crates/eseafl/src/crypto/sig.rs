//! ECDSA signatures over the canonical frame bytes produced by the transport
//! codec. Signatures are the raw 64-byte `(r, s)` form.

use k256::ecdsa::signature::hazmat::PrehashVerifier;
use k256::ecdsa::signature::{Signer, Verifier};
use k256::ecdsa::{SigningKey, VerifyingKey};
use rand::{CryptoRng, RngCore};

use super::group::{CompressedPoint, COMPRESSED_POINT_LEN};

/// Byte length of a serialized signature.
pub const SIGNATURE_LEN: usize = 64;

/// Raw 64-byte signature as carried in message bodies.
pub type Signature = [u8; SIGNATURE_LEN];

/// Signature key pair; the public key is kept in compressed form for the wire.
#[derive(Clone)]
pub struct SigKeyPair {
    secret: SigningKey,
    pub public: CompressedPoint,
}

impl std::fmt::Debug for SigKeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SigKeyPair({})", hex::encode(self.public))
    }
}

impl SigKeyPair {
    pub fn generate<R: RngCore + CryptoRng>(rng: &mut R) -> SigKeyPair {
        let secret = SigningKey::random(rng);
        let public = compress_verifying_key(secret.verifying_key());
        SigKeyPair { secret, public }
    }

    pub fn from_secret_bytes(bytes: &[u8; 32]) -> Option<SigKeyPair> {
        let secret = SigningKey::from_bytes(bytes.into()).ok()?;
        let public = compress_verifying_key(secret.verifying_key());
        Some(SigKeyPair { secret, public })
    }

    pub fn secret_bytes(&self) -> [u8; 32] {
        self.secret.to_bytes().into()
    }
}

fn compress_verifying_key(vk: &VerifyingKey) -> CompressedPoint {
    let encoded = vk.to_encoded_point(true);
    let mut out = [0u8; COMPRESSED_POINT_LEN];
    out.copy_from_slice(encoded.as_bytes());
    out
}

/// Signs a message; deterministic (RFC 6979), so no entropy source is needed.
pub fn sig_sign(keys: &SigKeyPair, message: &[u8]) -> Signature {
    let sig: k256::ecdsa::Signature = keys.secret.sign(message);
    sig.to_bytes().into()
}

/// Verifies a 64-byte signature. Any malformed input (bad key bytes, bad
/// signature encoding) yields `false` rather than an error.
pub fn sig_verify(public: &[u8], message: &[u8], signature: &[u8]) -> bool {
    let Ok(vk) = VerifyingKey::from_sec1_bytes(public) else {
        return false;
    };
    let Ok(sig) = k256::ecdsa::Signature::from_slice(signature) else {
        return false;
    };
    vk.verify(message, &sig).is_ok()
}

/// Verification from a prehashed digest; used only by tests that cross-check
/// the signing path.
#[allow(dead_code)]
pub fn sig_verify_prehash(public: &[u8], digest: &[u8; 32], signature: &[u8]) -> bool {
    let Ok(vk) = VerifyingKey::from_sec1_bytes(public) else {
        return false;
    };
    let Ok(sig) = k256::ecdsa::Signature::from_slice(signature) else {
        return false;
    };
    vk.verify_prehash(digest, &sig).is_ok()
}
