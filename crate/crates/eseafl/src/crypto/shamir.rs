//! Shamir secret sharing over a prime field.
//!
//! Generic over [`Field`] so the statistical guessing tests can run in a
//! small prime field where wrong-guess probabilities are observable; the
//! protocol instantiates it with the curve scalar field.

use rand::{CryptoRng, RngCore};

use super::group::Scalar;
use super::CryptoError;

/// Minimal prime-field interface for polynomial sharing.
pub trait Field: Clone + PartialEq + Eq + std::fmt::Debug {
    fn zero() -> Self;
    /// Embeds a nonzero share index as a field element.
    fn from_index(index: u32) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn invert(&self) -> Option<Self>;
    fn random(rng: &mut (impl RngCore + CryptoRng)) -> Self;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::ZERO
    }
    fn from_index(index: u32) -> Self {
        Scalar::from_u64(u64::from(index))
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn invert(&self) -> Option<Self> {
        Scalar::invert(self)
    }
    fn random(rng: &mut (impl RngCore + CryptoRng)) -> Self {
        Scalar::random(rng)
    }
}

/// One share: a nonzero evaluation index and the polynomial value there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamirShare<F: Field = Scalar> {
    pub index: u32,
    pub value: F,
}

/// Splits `secret` into `shares` shares with reconstruction threshold
/// `threshold`; share indices are 1..=shares.
pub fn shamir_share<F: Field>(
    secret: &F,
    threshold: u32,
    shares: u32,
    rng: &mut (impl RngCore + CryptoRng),
) -> Result<Vec<ShamirShare<F>>, CryptoError> {
    if threshold == 0 || threshold > shares {
        return Err(CryptoError::InvalidThreshold { threshold, shares });
    }
    // f(x) = secret + c_1 x + ... + c_{threshold-1} x^{threshold-1}
    let mut coeffs = Vec::with_capacity(threshold as usize);
    coeffs.push(secret.clone());
    for _ in 1..threshold {
        coeffs.push(F::random(rng));
    }
    Ok((1..=shares)
        .map(|index| {
            let x = F::from_index(index);
            let mut value = coeffs.last().expect("nonempty").clone();
            for coeff in coeffs.iter().rev().skip(1) {
                value = value.mul(&x).add(coeff);
            }
            ShamirShare { index, value }
        })
        .collect())
}

/// Reconstructs the secret by Lagrange interpolation at zero from at least
/// `threshold` distinct-index shares. Extra shares beyond the threshold are
/// ignored.
pub fn shamir_reconstruct<F: Field>(
    shares: &[ShamirShare<F>],
    threshold: u32,
) -> Result<F, CryptoError> {
    if shares.len() < threshold as usize {
        return Err(CryptoError::InsufficientShares {
            got: shares.len(),
            need: threshold as usize,
        });
    }
    let used = &shares[..threshold as usize];
    for (i, share) in used.iter().enumerate() {
        if share.index == 0 {
            return Err(CryptoError::DuplicateIndex(0));
        }
        if used[..i].iter().any(|s| s.index == share.index) {
            return Err(CryptoError::DuplicateIndex(share.index));
        }
    }
    let mut acc = F::zero();
    for share in used {
        let xi = F::from_index(share.index);
        let mut num = share.value.clone();
        let mut den = None::<F>;
        for other in used {
            if other.index == share.index {
                continue;
            }
            let xj = F::from_index(other.index);
            num = num.mul(&xj);
            let diff = xj.sub(&xi);
            den = Some(match den {
                Some(d) => d.mul(&diff),
                None => diff,
            });
        }
        let term = match den {
            Some(d) => num.mul(&d.invert().ok_or(CryptoError::DuplicateIndex(share.index))?),
            None => num,
        };
        acc = acc.add(&term);
    }
    Ok(acc)
}
