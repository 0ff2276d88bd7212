//! Fixed-point quantization and mask arithmetic.
//!
//! Gradients live in the ring Z_(2^32): each element is a biased fixed-point
//! encoding of a signed real, kept below a per-element bound `B` so that the
//! modular sum of up to `n` vectors equals the integer sum. User-side masks
//! and node-side aggregated masks are sums of the same PRF expansions and
//! cancel exactly in the aggregate.

use num_traits::Float;

use crate::crypto::{prf_derive_scalar, prf_expand_masks, Scalar, SharedSeed};

/// Errors from mask and vector arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaskingError {
    /// Operand vector lengths disagree.
    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    /// An aggregate over an empty list was requested.
    #[error("empty input list")]
    EmptyList,
}

/// A length-`d` vector of ring elements mod 2^32.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientVector(pub Vec<u32>);

impl GradientVector {
    pub fn zeros(d: usize) -> GradientVector {
        GradientVector(vec![0; d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A masking vector: `d` ring elements plus, in integrity mode, the
/// randomness-lane scalar that feeds the commitment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskVector {
    pub elems: Vec<u32>,
    pub r_lane: Option<Scalar>,
}

/// Fixed-point encoding parameters. Signed reals are scaled by 2^frac_bits,
/// rounded, and biased by `element_bound / 2` so every encoded element lies
/// in `[0, element_bound)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QuantizationConfig {
    pub frac_bits: u32,
    pub element_bound: u32,
}

impl Default for QuantizationConfig {
    fn default() -> Self {
        // 20-bit elements with 16 fractional bits leave headroom for sums of
        // up to 4096 contributors before wrapping mod 2^32.
        QuantizationConfig {
            frac_bits: 16,
            element_bound: 1 << 20,
        }
    }
}

impl QuantizationConfig {
    /// Largest contributor count for which modular sums stay below 2^32.
    pub fn max_contributors(&self) -> u32 {
        (u64::from(u32::MAX) / u64::from(self.element_bound)) as u32
    }

    pub fn bias(&self) -> u32 {
        self.element_bound / 2
    }
}

/// Encodes finite reals as biased fixed-point ring elements, saturating at
/// the bound.
pub fn quantize<F: Float>(xs: &[F], cfg: &QuantizationConfig) -> GradientVector {
    let scale = F::from(1u64 << cfg.frac_bits).expect("scale fits");
    let bias = f64::from(cfg.bias());
    let max = f64::from(cfg.element_bound - 1);
    GradientVector(
        xs.iter()
            .map(|&x| {
                let scaled = (x * scale).round().to_f64().unwrap_or(0.0);
                let biased = scaled + bias;
                // NaN comparisons are false, so a non-finite precondition
                // violation saturates to zero via the cast below.
                let clamped = biased.min(max).max(0.0);
                clamped as u32
            })
            .collect(),
    )
}

/// Decodes the modular sum of `n_contributors` quantized vectors back to the
/// mean-free real domain: `(sum - n * bias) / (n * 2^frac_bits)`.
pub fn dequantize<F: Float>(
    sum: &GradientVector,
    n_contributors: u32,
    cfg: &QuantizationConfig,
) -> Vec<F> {
    let n = f64::from(n_contributors.max(1));
    let offset = n * f64::from(cfg.bias());
    let denom = n * 2f64.powi(cfg.frac_bits as i32);
    sum.0
        .iter()
        .map(|&s| F::from((f64::from(s) - offset) / denom).expect("fits in float"))
        .collect()
}

/// The user-side masking term: the elementwise sum (mod 2^32) of PRF
/// expansions under each of the `k` node seeds, with the randomness lane
/// summed mod the group order when integrity is on.
pub fn derive_user_mask(
    seeds: &[SharedSeed],
    t: u32,
    d: usize,
    integrity: bool,
) -> MaskVector {
    sum_seed_expansions(seeds, t, d, integrity)
}

/// The node-side aggregated masking term over the listed users' seeds.
pub fn node_aggregate_mask(
    seeds: &[SharedSeed],
    t: u32,
    d: usize,
    integrity: bool,
) -> Result<MaskVector, MaskingError> {
    if seeds.is_empty() {
        return Err(MaskingError::EmptyList);
    }
    Ok(sum_seed_expansions(seeds, t, d, integrity))
}

fn sum_seed_expansions(seeds: &[SharedSeed], t: u32, d: usize, integrity: bool) -> MaskVector {
    let mut elems = vec![0u32; d];
    let mut r_lane = integrity.then_some(Scalar::ZERO);
    for seed in seeds {
        let expansion = prf_expand_masks(seed, t, d);
        for (acc, m) in elems.iter_mut().zip(&expansion) {
            *acc = acc.wrapping_add(*m);
        }
        if let Some(r) = r_lane.as_mut() {
            *r = r.add(&prf_derive_scalar(seed, t));
        }
    }
    MaskVector { elems, r_lane }
}

/// Adds the mask to the update elementwise mod 2^32.
pub fn apply_mask(w: &GradientVector, a: &MaskVector) -> Result<GradientVector, MaskingError> {
    if w.len() != a.elems.len() {
        return Err(MaskingError::LengthMismatch {
            expected: w.len(),
            got: a.elems.len(),
        });
    }
    Ok(GradientVector(
        w.0.iter()
            .zip(&a.elems)
            .map(|(&wi, &ai)| wi.wrapping_add(ai))
            .collect(),
    ))
}

/// The server-side unmasking sum: `(sum ys - sum node_masks) mod 2^32`.
pub fn unmask_sum(
    ys: &[GradientVector],
    node_masks: &[MaskVector],
) -> Result<GradientVector, MaskingError> {
    let first = ys.first().ok_or(MaskingError::EmptyList)?;
    if node_masks.is_empty() {
        return Err(MaskingError::EmptyList);
    }
    let d = first.len();
    let mut acc = vec![0u32; d];
    for y in ys {
        if y.len() != d {
            return Err(MaskingError::LengthMismatch {
                expected: d,
                got: y.len(),
            });
        }
        for (a, &v) in acc.iter_mut().zip(&y.0) {
            *a = a.wrapping_add(v);
        }
    }
    for mask in node_masks {
        if mask.elems.len() != d {
            return Err(MaskingError::LengthMismatch {
                expected: d,
                got: mask.elems.len(),
            });
        }
        for (a, &v) in acc.iter_mut().zip(&mask.elems) {
            *a = a.wrapping_sub(v);
        }
    }
    Ok(GradientVector(acc))
}
