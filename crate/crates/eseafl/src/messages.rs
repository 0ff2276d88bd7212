//! Protocol message and identity types shared by the role state machines and
//! the wire codec.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use crate::commit::{AggregationProof, Commitment};
use crate::crypto::{CompressedPoint, Scalar, Signature};
use crate::masking::GradientVector;

/// Party role tag as carried in frame headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Role {
    User = 0x01,
    Node = 0x02,
    Server = 0x03,
}

impl Role {
    pub fn from_byte(b: u8) -> Option<Role> {
        match b {
            0x01 => Some(Role::User),
            0x02 => Some(Role::Node),
            0x03 => Some(Role::Server),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Role::User => "user",
            Role::Node => "node",
            Role::Server => "server",
        }
    }
}

/// Unique party identity: role plus ordinal. Ordinals define the canonical
/// ordering of user lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartyId {
    pub role: Role,
    pub index: u32,
}

impl PartyId {
    pub fn user(index: u32) -> PartyId {
        PartyId {
            role: Role::User,
            index,
        }
    }

    pub fn node(index: u32) -> PartyId {
        PartyId {
            role: Role::Node,
            index,
        }
    }

    pub fn server() -> PartyId {
        PartyId {
            role: Role::Server,
            index: 0,
        }
    }
}

impl std::fmt::Display for PartyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.role.as_str(), self.index)
    }
}

/// Wire message type tags (protocol v1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum MessageType {
    KeyAnnounce = 0x01,
    RhoCiphertext = 0x02,
    Participation = 0x03,
    MaskedUpdate = 0x04,
    NodeAggregate = 0x05,
    RoundResult = 0x06,
    ReconcileRequest = 0x07,
}

impl MessageType {
    pub fn from_byte(b: u8) -> Option<MessageType> {
        match b {
            0x01 => Some(MessageType::KeyAnnounce),
            0x02 => Some(MessageType::RhoCiphertext),
            0x03 => Some(MessageType::Participation),
            0x04 => Some(MessageType::MaskedUpdate),
            0x05 => Some(MessageType::NodeAggregate),
            0x06 => Some(MessageType::RoundResult),
            0x07 => Some(MessageType::ReconcileRequest),
            _ => None,
        }
    }
}

/// Setup-phase public-key announcement, verified against the roster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyAnnounce {
    pub party: PartyId,
    pub kx_pk: Option<CompressedPoint>,
    pub sig_pk: Option<CompressedPoint>,
}

/// Which secret an encrypted setup envelope carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum SecretLane {
    /// The commitment key distributed by the dealer node.
    CommitKey = 0x00,
    /// A master-derived mask seed (recovery-capable seed mode).
    MaskSeed = 0x01,
    /// A Shamir share of a node's master secret, sent to a peer node.
    MasterShare = 0x02,
}

impl SecretLane {
    pub fn from_byte(b: u8) -> Option<SecretLane> {
        match b {
            0x00 => Some(SecretLane::CommitKey),
            0x01 => Some(SecretLane::MaskSeed),
            0x02 => Some(SecretLane::MasterShare),
            _ => None,
        }
    }
}

/// An authenticated-encrypted setup secret. `aux` is the Shamir share index
/// for the master-share lane and zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretEnvelope {
    pub lane: SecretLane,
    pub aux: u32,
    pub ciphertext: Vec<u8>,
}

/// Per-round participation message `m' = (t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParticipationMsg {
    pub t: u32,
    pub sig: Option<Signature>,
}

/// Per-round user message `m = (t, y[, cm])` with its signature in malicious
/// mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedUpdate {
    pub t: u32,
    pub y: GradientVector,
    pub cm: Option<Commitment>,
    pub sig: Option<Signature>,
}

/// Per-round assisting-node message `m'' = (t, |L|, a[, r][, digest])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregatedMaskMsg {
    pub t: u32,
    pub list_len: u32,
    pub mask: Vec<u32>,
    pub r_lane_sum: Option<Scalar>,
    pub list_digest: Option<[u8; 32]>,
    pub sig: Option<Signature>,
}

/// The server's finalized output for one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundResult {
    pub t: u32,
    pub contributor_count: u32,
    pub w: GradientVector,
    pub proof: Option<AggregationProof>,
}

/// A star-topology reconciliation message: the server re-forwards buffered
/// participation messages a node reported missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconcileRequest {
    pub t: u32,
    pub participations: Vec<(u32, ParticipationMsg)>,
}

/// Digest of a sorted duplicate-free user list: SHA-256 over the ordinals as
/// little-endian 4-byte words.
pub fn list_digest(ordinals: &BTreeSet<u32>) -> [u8; 32] {
    let mut hasher = Sha256::new();
    for ordinal in ordinals {
        hasher.update(ordinal.to_le_bytes());
    }
    hasher.finalize().into()
}
