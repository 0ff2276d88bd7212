//! Canonical message-body encoding (wire protocol v1).
//!
//! All integers are little-endian; points are 33-byte compressed SEC1;
//! scalars are 32-byte big-endian; signatures are raw 64-byte `(r, s)`.
//! Optional fields appear exactly when the wire configuration enables them,
//! so a body's length is a function of `(message type, d, config)`.
//!
//! Signatures cover the frame header (message type byte plus sender identity)
//! followed by the body with the trailing signature field stripped. The
//! 4-byte length prefix is never signed. Encoding is canonical, so re-encoding
//! a decoded message can never invalidate its signature.

use crate::commit::{AggregationProof, Commitment};
use crate::crypto::{
    Point, Scalar, Signature, COMPRESSED_POINT_LEN, SCALAR_LEN, SIGNATURE_LEN,
};
use crate::masking::GradientVector;
use crate::messages::{
    AggregatedMaskMsg, KeyAnnounce, MaskedUpdate, MessageType, ParticipationMsg, PartyId,
    ReconcileRequest, Role, RoundResult, SecretEnvelope, SecretLane,
};

use super::TransportError;

/// Which optional wire fields are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WireConfig {
    /// Signature fields on participation, update, and node-aggregate bodies.
    pub malicious: bool,
    /// Commitment, randomness-lane, and proof fields.
    pub integrity: bool,
    /// 32-byte sorted-list digest in node-aggregate bodies. Off reproduces
    /// the size-only list check and its exact byte accounting.
    pub list_digest: bool,
}

impl WireConfig {
    pub fn semi_honest() -> WireConfig {
        WireConfig {
            malicious: false,
            integrity: false,
            list_digest: false,
        }
    }

    pub fn participation_len(&self) -> usize {
        4 + self.sig_len()
    }

    pub fn masked_update_len(&self, d: usize) -> usize {
        4 + 4 * d + if self.integrity { COMPRESSED_POINT_LEN } else { 0 } + self.sig_len()
    }

    pub fn node_aggregate_len(&self, d: usize) -> usize {
        4 + 4
            + 4 * d
            + if self.integrity { SCALAR_LEN } else { 0 }
            + if self.list_digest { 32 } else { 0 }
            + self.sig_len()
    }

    pub fn round_result_len(&self, d: usize) -> usize {
        4 + 4 + 4 * d + if self.integrity { COMPRESSED_POINT_LEN } else { 0 }
    }

    fn sig_len(&self) -> usize {
        if self.malicious {
            SIGNATURE_LEN
        } else {
            0
        }
    }
}

/// The exact bytes a signature covers: frame header fields plus the body with
/// the signature stripped.
pub fn signing_bytes(msg_type: MessageType, sender: PartyId, body_core: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(6 + body_core.len());
    out.push(msg_type as u8);
    out.push(sender.role as u8);
    out.extend_from_slice(&sender.index.to_le_bytes());
    out.extend_from_slice(body_core);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(bytes: &'a [u8]) -> Reader<'a> {
        Reader { bytes, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], TransportError> {
        if self.pos + n > self.bytes.len() {
            return Err(TransportError::MalformedFrame("truncated body"));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32, TransportError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4")))
    }

    fn words(&mut self, d: usize) -> Result<Vec<u32>, TransportError> {
        let raw = self.take(4 * d)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4")))
            .collect())
    }

    fn point(&mut self) -> Result<Point, TransportError> {
        Point::decompress(self.take(COMPRESSED_POINT_LEN)?)
            .map_err(|_| TransportError::MalformedFrame("invalid point"))
    }

    fn scalar(&mut self) -> Result<Scalar, TransportError> {
        let raw: [u8; SCALAR_LEN] = self.take(SCALAR_LEN)?.try_into().expect("32");
        Scalar::from_bytes(&raw).ok_or(TransportError::MalformedFrame("non-canonical scalar"))
    }

    fn signature(&mut self) -> Result<Signature, TransportError> {
        Ok(self.take(SIGNATURE_LEN)?.try_into().expect("64"))
    }

    fn finish(self) -> Result<(), TransportError> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(TransportError::MalformedFrame("trailing bytes"))
        }
    }
}

fn push_words(out: &mut Vec<u8>, words: &[u32]) {
    for w in words {
        out.extend_from_slice(&w.to_le_bytes());
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), TransportError> {
    if expected == got {
        Ok(())
    } else {
        Err(TransportError::LengthMismatch { expected, got })
    }
}

fn append_sig(
    cfg: &WireConfig,
    out: &mut Vec<u8>,
    sig: &Option<Signature>,
) -> Result<(), TransportError> {
    if cfg.malicious {
        let sig = sig.ok_or(TransportError::MalformedFrame("signature required"))?;
        out.extend_from_slice(&sig);
    }
    Ok(())
}

// --- participation -------------------------------------------------------

pub fn participation_core(msg: &ParticipationMsg) -> Vec<u8> {
    msg.t.to_le_bytes().to_vec()
}

pub fn encode_participation(
    cfg: &WireConfig,
    msg: &ParticipationMsg,
) -> Result<Vec<u8>, TransportError> {
    let mut out = participation_core(msg);
    append_sig(cfg, &mut out, &msg.sig)?;
    Ok(out)
}

pub fn decode_participation(
    cfg: &WireConfig,
    body: &[u8],
) -> Result<ParticipationMsg, TransportError> {
    let mut r = Reader::new(body);
    let t = r.u32()?;
    let sig = if cfg.malicious {
        Some(r.signature()?)
    } else {
        None
    };
    r.finish()?;
    Ok(ParticipationMsg { t, sig })
}

// --- masked update --------------------------------------------------------

pub fn masked_update_core(
    cfg: &WireConfig,
    d: usize,
    msg: &MaskedUpdate,
) -> Result<Vec<u8>, TransportError> {
    check_len(d, msg.y.len())?;
    let mut out = Vec::with_capacity(cfg.masked_update_len(d));
    out.extend_from_slice(&msg.t.to_le_bytes());
    push_words(&mut out, &msg.y.0);
    if cfg.integrity {
        let cm = msg
            .cm
            .as_ref()
            .ok_or(TransportError::MalformedFrame("commitment required"))?;
        out.extend_from_slice(&cm.0.compress());
    }
    Ok(out)
}

pub fn encode_masked_update(
    cfg: &WireConfig,
    d: usize,
    msg: &MaskedUpdate,
) -> Result<Vec<u8>, TransportError> {
    let mut out = masked_update_core(cfg, d, msg)?;
    append_sig(cfg, &mut out, &msg.sig)?;
    Ok(out)
}

pub fn decode_masked_update(
    cfg: &WireConfig,
    d: usize,
    body: &[u8],
) -> Result<MaskedUpdate, TransportError> {
    check_len(cfg.masked_update_len(d), body.len())?;
    let mut r = Reader::new(body);
    let t = r.u32()?;
    let y = GradientVector(r.words(d)?);
    let cm = if cfg.integrity {
        Some(Commitment(r.point()?))
    } else {
        None
    };
    let sig = if cfg.malicious {
        Some(r.signature()?)
    } else {
        None
    };
    r.finish()?;
    Ok(MaskedUpdate { t, y, cm, sig })
}

// --- node aggregate -------------------------------------------------------

pub fn node_aggregate_core(
    cfg: &WireConfig,
    d: usize,
    msg: &AggregatedMaskMsg,
) -> Result<Vec<u8>, TransportError> {
    check_len(d, msg.mask.len())?;
    let mut out = Vec::with_capacity(cfg.node_aggregate_len(d));
    out.extend_from_slice(&msg.t.to_le_bytes());
    out.extend_from_slice(&msg.list_len.to_le_bytes());
    push_words(&mut out, &msg.mask);
    if cfg.integrity {
        let r = msg
            .r_lane_sum
            .as_ref()
            .ok_or(TransportError::MalformedFrame("randomness lane required"))?;
        out.extend_from_slice(&r.to_bytes());
    }
    if cfg.list_digest {
        let digest = msg
            .list_digest
            .as_ref()
            .ok_or(TransportError::MalformedFrame("list digest required"))?;
        out.extend_from_slice(digest);
    }
    Ok(out)
}

pub fn encode_node_aggregate(
    cfg: &WireConfig,
    d: usize,
    msg: &AggregatedMaskMsg,
) -> Result<Vec<u8>, TransportError> {
    let mut out = node_aggregate_core(cfg, d, msg)?;
    append_sig(cfg, &mut out, &msg.sig)?;
    Ok(out)
}

pub fn decode_node_aggregate(
    cfg: &WireConfig,
    d: usize,
    body: &[u8],
) -> Result<AggregatedMaskMsg, TransportError> {
    check_len(cfg.node_aggregate_len(d), body.len())?;
    let mut r = Reader::new(body);
    let t = r.u32()?;
    let list_len = r.u32()?;
    let mask = r.words(d)?;
    let r_lane_sum = if cfg.integrity {
        Some(r.scalar()?)
    } else {
        None
    };
    let list_digest = if cfg.list_digest {
        Some(r.take(32)?.try_into().expect("32"))
    } else {
        None
    };
    let sig = if cfg.malicious {
        Some(r.signature()?)
    } else {
        None
    };
    r.finish()?;
    Ok(AggregatedMaskMsg {
        t,
        list_len,
        mask,
        r_lane_sum,
        list_digest,
        sig,
    })
}

// --- round result ---------------------------------------------------------

pub fn encode_round_result(
    cfg: &WireConfig,
    d: usize,
    msg: &RoundResult,
) -> Result<Vec<u8>, TransportError> {
    check_len(d, msg.w.len())?;
    let mut out = Vec::with_capacity(cfg.round_result_len(d));
    out.extend_from_slice(&msg.t.to_le_bytes());
    out.extend_from_slice(&msg.contributor_count.to_le_bytes());
    push_words(&mut out, &msg.w.0);
    if cfg.integrity {
        let proof = msg
            .proof
            .as_ref()
            .ok_or(TransportError::MalformedFrame("proof required"))?;
        out.extend_from_slice(&proof.x.compress());
    }
    Ok(out)
}

pub fn decode_round_result(
    cfg: &WireConfig,
    d: usize,
    body: &[u8],
) -> Result<RoundResult, TransportError> {
    check_len(cfg.round_result_len(d), body.len())?;
    let mut r = Reader::new(body);
    let t = r.u32()?;
    let contributor_count = r.u32()?;
    let w = GradientVector(r.words(d)?);
    let proof = if cfg.integrity {
        Some(AggregationProof { x: r.point()?, t })
    } else {
        None
    };
    r.finish()?;
    Ok(RoundResult {
        t,
        contributor_count,
        w,
        proof,
    })
}

// --- key announce ---------------------------------------------------------

pub fn encode_key_announce(msg: &KeyAnnounce) -> Vec<u8> {
    let mut out = Vec::with_capacity(6 + 2 * COMPRESSED_POINT_LEN);
    out.push(msg.party.role as u8);
    out.extend_from_slice(&msg.party.index.to_le_bytes());
    let flags =
        u8::from(msg.kx_pk.is_some()) | (u8::from(msg.sig_pk.is_some()) << 1);
    out.push(flags);
    if let Some(pk) = &msg.kx_pk {
        out.extend_from_slice(pk);
    }
    if let Some(pk) = &msg.sig_pk {
        out.extend_from_slice(pk);
    }
    out
}

pub fn decode_key_announce(body: &[u8]) -> Result<KeyAnnounce, TransportError> {
    let mut r = Reader::new(body);
    let role = Role::from_byte(r.take(1)?[0])
        .ok_or(TransportError::MalformedFrame("unknown role tag"))?;
    let index = r.u32()?;
    let flags = r.take(1)?[0];
    if flags & !0b11 != 0 {
        return Err(TransportError::MalformedFrame("unknown announce flags"));
    }
    let kx_pk = if flags & 0b01 != 0 {
        Some(r.take(COMPRESSED_POINT_LEN)?.try_into().expect("33"))
    } else {
        None
    };
    let sig_pk = if flags & 0b10 != 0 {
        Some(r.take(COMPRESSED_POINT_LEN)?.try_into().expect("33"))
    } else {
        None
    };
    r.finish()?;
    Ok(KeyAnnounce {
        party: PartyId { role, index },
        kx_pk,
        sig_pk,
    })
}

// --- secret envelope ------------------------------------------------------

pub fn encode_secret_envelope(msg: &SecretEnvelope) -> Vec<u8> {
    let mut out = Vec::with_capacity(5 + msg.ciphertext.len());
    out.push(msg.lane as u8);
    out.extend_from_slice(&msg.aux.to_le_bytes());
    out.extend_from_slice(&msg.ciphertext);
    out
}

pub fn decode_secret_envelope(body: &[u8]) -> Result<SecretEnvelope, TransportError> {
    let mut r = Reader::new(body);
    let lane = SecretLane::from_byte(r.take(1)?[0])
        .ok_or(TransportError::MalformedFrame("unknown secret lane"))?;
    let aux = r.u32()?;
    let ciphertext = r.take(body.len() - 5)?.to_vec();
    r.finish()?;
    Ok(SecretEnvelope {
        lane,
        aux,
        ciphertext,
    })
}

// --- reconcile request ----------------------------------------------------

pub fn encode_reconcile_request(
    cfg: &WireConfig,
    msg: &ReconcileRequest,
) -> Result<Vec<u8>, TransportError> {
    let mut out = Vec::new();
    out.extend_from_slice(&msg.t.to_le_bytes());
    out.extend_from_slice(&(msg.participations.len() as u32).to_le_bytes());
    for (ordinal, participation) in &msg.participations {
        out.extend_from_slice(&ordinal.to_le_bytes());
        out.extend_from_slice(&encode_participation(cfg, participation)?);
    }
    Ok(out)
}

pub fn decode_reconcile_request(
    cfg: &WireConfig,
    body: &[u8],
) -> Result<ReconcileRequest, TransportError> {
    let mut r = Reader::new(body);
    let t = r.u32()?;
    let count = r.u32()? as usize;
    let entry_len = cfg.participation_len();
    let mut participations = Vec::with_capacity(count);
    for _ in 0..count {
        let ordinal = r.u32()?;
        let participation = decode_participation(cfg, r.take(entry_len)?)?;
        participations.push((ordinal, participation));
    }
    r.finish()?;
    Ok(ReconcileRequest { t, participations })
}
