//! Single-round secure aggregation for federated learning.
//!
//! A server learns only the sum of per-user gradient vectors. Each user masks
//! its update with pseudorandom terms keyed by seeds shared with a small set
//! of assisting nodes; the nodes hand the server aggregated masking terms so
//! the sum unmasks exactly. Optional layers add signature gating against
//! malicious parties and a homomorphic-commitment proof that lets users verify
//! the server aggregated honestly.

pub mod commit;
pub mod masking;
pub mod messages;
pub mod transport;
pub mod crypto;

/// Floating-point type used for model weights before quantization.
pub type Real = f64;
