//! Curve group backend.
//!
//! All elliptic-curve material in the crate goes through the [`Point`] and
//! [`Scalar`] wrappers defined here, so the curve can be swapped by editing
//! this one module. The reference backend is secp256k1: a 256-bit prime-order
//! group with 33-byte compressed points and 64-byte ECDSA signatures.

use k256::elliptic_curve::{
    ops::Reduce,
    sec1::{FromEncodedPoint, ToEncodedPoint},
    PrimeField,
};
use k256::{AffinePoint, EncodedPoint, ProjectivePoint, U256};
use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};

use super::CryptoError;

/// Byte length of a compressed point encoding.
pub const COMPRESSED_POINT_LEN: usize = 33;
/// Byte length of a canonical scalar encoding (big-endian).
pub const SCALAR_LEN: usize = 32;

/// Compressed SEC1 point bytes as they appear on the wire.
pub type CompressedPoint = [u8; COMPRESSED_POINT_LEN];

/// An element of the curve's scalar field (integers mod the group order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scalar(pub(crate) k256::Scalar);

impl Scalar {
    pub const ZERO: Scalar = Scalar(k256::Scalar::ZERO);
    pub const ONE: Scalar = Scalar(k256::Scalar::ONE);

    pub fn from_u64(v: u64) -> Scalar {
        Scalar(k256::Scalar::from(v))
    }

    /// Lifts a ring element (mod 2^32) into the scalar field.
    pub fn from_ring(v: u32) -> Scalar {
        Scalar(k256::Scalar::from(u64::from(v)))
    }

    /// Interprets 32 bytes as a big-endian integer reduced mod the group order.
    pub fn reduce_from_wide(bytes: &[u8; 32]) -> Scalar {
        Scalar(<k256::Scalar as Reduce<U256>>::reduce(U256::from_be_slice(
            bytes,
        )))
    }

    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Scalar {
        Scalar(<k256::Scalar as k256::elliptic_curve::Field>::random(rng))
    }

    /// Canonical 32-byte big-endian encoding.
    pub fn to_bytes(&self) -> [u8; SCALAR_LEN] {
        self.0.to_bytes().into()
    }

    /// Decodes a canonical encoding; rejects values >= the group order.
    pub fn from_bytes(bytes: &[u8; SCALAR_LEN]) -> Option<Scalar> {
        Option::from(k256::Scalar::from_repr((*bytes).into())).map(Scalar)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == k256::Scalar::ZERO
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar(self.0 + other.0)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar(self.0 - other.0)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar(self.0 * other.0)
    }

    pub fn neg(&self) -> Scalar {
        Scalar(-self.0)
    }

    pub fn invert(&self) -> Option<Scalar> {
        Option::from(self.0.invert()).map(Scalar)
    }
}

/// A point on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point(pub(crate) ProjectivePoint);

impl Point {
    pub fn generator() -> Point {
        Point(ProjectivePoint::GENERATOR)
    }

    pub fn identity() -> Point {
        Point(ProjectivePoint::IDENTITY)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == ProjectivePoint::IDENTITY
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0 + other.0)
    }

    pub fn neg(&self) -> Point {
        Point(-self.0)
    }

    pub fn mul(&self, scalar: &Scalar) -> Point {
        Point(self.0 * scalar.0)
    }

    /// Fixed-base scalar multiplication of the group generator.
    pub fn base_mul(scalar: &Scalar) -> Point {
        Point(ProjectivePoint::GENERATOR * scalar.0)
    }

    /// Compressed SEC1 encoding. The identity has no compressed form the rest
    /// of the crate ever serializes; encoding it is a caller bug.
    pub fn compress(&self) -> CompressedPoint {
        let encoded = self.0.to_affine().to_encoded_point(true);
        let mut out = [0u8; COMPRESSED_POINT_LEN];
        out.copy_from_slice(encoded.as_bytes());
        out
    }

    pub fn decompress(bytes: &[u8]) -> Result<Point, CryptoError> {
        let encoded = EncodedPoint::from_bytes(bytes).map_err(|_| CryptoError::InvalidPoint)?;
        let affine: Option<AffinePoint> = AffinePoint::from_encoded_point(&encoded).into();
        affine
            .map(|p| Point(ProjectivePoint::from(p)))
            .ok_or(CryptoError::InvalidPoint)
    }

    /// Deterministic try-and-increment hash onto the curve. Candidate x
    /// coordinates are SHA-256 outputs of `input || counter` with an even-y
    /// prefix, so the discrete log of the result is unknown and the point is
    /// never the identity.
    pub fn hash_to_point(input: &[u8]) -> Point {
        for counter in 0u32.. {
            let mut hasher = Sha256::new();
            hasher.update(input);
            hasher.update(counter.to_be_bytes());
            let digest = hasher.finalize();
            let mut candidate = [0u8; COMPRESSED_POINT_LEN];
            candidate[0] = 0x02;
            candidate[1..].copy_from_slice(&digest);
            if let Ok(point) = Point::decompress(&candidate) {
                return point;
            }
        }
        unreachable!("try-and-increment terminates")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn scalar_roundtrip_and_arithmetic() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let a = Scalar::random(&mut rng);
        let b = Scalar::random(&mut rng);
        assert_eq!(Scalar::from_bytes(&a.to_bytes()), Some(a));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b), b.mul(&a));
        let inv = b.invert().unwrap();
        assert_eq!(b.mul(&inv), Scalar::ONE);
    }

    #[test]
    fn point_compress_roundtrip() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let s = Scalar::random(&mut rng);
        let p = Point::base_mul(&s);
        let bytes = p.compress();
        assert_eq!(bytes.len(), COMPRESSED_POINT_LEN);
        assert_eq!(Point::decompress(&bytes).unwrap(), p);
    }

    #[test]
    fn decompress_rejects_garbage() {
        assert_eq!(
            Point::decompress(&[0xff; 33]).unwrap_err(),
            CryptoError::InvalidPoint
        );
        assert_eq!(
            Point::decompress(&[0x02; 5]).unwrap_err(),
            CryptoError::InvalidPoint
        );
    }

    #[test]
    fn hash_to_point_is_deterministic_and_separated() {
        let p1 = Point::hash_to_point(b"label-a");
        let p2 = Point::hash_to_point(b"label-a");
        let p3 = Point::hash_to_point(b"label-b");
        assert_eq!(p1, p2);
        assert_ne!(p1, p3);
        assert!(!p1.is_identity());
    }
}
