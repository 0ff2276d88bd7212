//! Deterministic in-process transport.
//!
//! Every link is an ordered, lossless queue; delivery interleaves links under
//! a seeded scheduler so arrival order is reproducible but not fixed. Drop
//! rules model network loss for dropout and reconciliation tests. Outbound
//! bytes are accounted per sender as framed length (6-byte header plus body).

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::messages::{MessageType, PartyId};

use super::frame::Frame;

/// Matches frames to drop; `None` fields match anything.
#[derive(Debug, Clone, Default)]
pub struct DropRule {
    pub from: Option<PartyId>,
    pub to: Option<PartyId>,
    pub msg_type: Option<MessageType>,
}

impl DropRule {
    fn matches(&self, from: PartyId, to: PartyId, msg_type: MessageType) -> bool {
        self.from.map_or(true, |f| f == from)
            && self.to.map_or(true, |t| t == to)
            && self.msg_type.map_or(true, |m| m == msg_type)
    }
}

/// The in-process network fabric.
pub struct InProcNet {
    links: BTreeMap<(PartyId, PartyId), VecDeque<Frame>>,
    drop_rules: Vec<DropRule>,
    scheduler: ChaCha20Rng,
    outbound: BTreeMap<PartyId, u64>,
}

impl InProcNet {
    pub fn new(scheduler_seed: u64) -> InProcNet {
        InProcNet {
            links: BTreeMap::new(),
            drop_rules: Vec::new(),
            scheduler: ChaCha20Rng::seed_from_u64(scheduler_seed),
            outbound: BTreeMap::new(),
        }
    }

    pub fn add_drop_rule(&mut self, rule: DropRule) {
        self.drop_rules.push(rule);
    }

    pub fn clear_drop_rules(&mut self) {
        self.drop_rules.clear();
    }

    /// Sends a frame; the sender is the frame's header identity. Dropped
    /// frames still count toward the sender's outbound bytes, since the
    /// sender wrote them.
    pub fn send(&mut self, to: PartyId, frame: Frame) {
        *self.outbound.entry(frame.sender).or_insert(0) += frame.framed_len() as u64;
        let dropped = self
            .drop_rules
            .iter()
            .any(|rule| rule.matches(frame.sender, to, frame.msg_type));
        if !dropped {
            self.links
                .entry((frame.sender, to))
                .or_default()
                .push_back(frame);
        }
    }

    /// Drains everything queued for `to`, interleaving links in a seeded
    /// random order while preserving per-link FIFO order.
    pub fn drain(&mut self, to: PartyId) -> Vec<Frame> {
        let mut queues: Vec<VecDeque<Frame>> = Vec::new();
        let keys: Vec<(PartyId, PartyId)> = self
            .links
            .keys()
            .filter(|(_, dest)| *dest == to)
            .copied()
            .collect();
        for key in keys {
            if let Some(queue) = self.links.remove(&key) {
                if !queue.is_empty() {
                    queues.push(queue);
                }
            }
        }
        let mut out = Vec::new();
        while !queues.is_empty() {
            let pick = self.scheduler.gen_range(0..queues.len());
            if let Some(frame) = queues[pick].pop_front() {
                out.push(frame);
            }
            if queues[pick].is_empty() {
                queues.swap_remove(pick);
            }
        }
        out
    }

    /// Total framed bytes this party has written so far.
    pub fn outbound_bytes(&self, party: PartyId) -> u64 {
        self.outbound.get(&party).copied().unwrap_or(0)
    }

    pub fn reset_outbound_counters(&mut self) {
        self.outbound.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(from: PartyId, t: MessageType, byte: u8) -> Frame {
        Frame::new(t, from, vec![byte])
    }

    #[test]
    fn per_link_order_is_preserved() {
        let mut net = InProcNet::new(1);
        let server = PartyId::server();
        for i in 0..5u8 {
            net.send(server, frame(PartyId::user(1), MessageType::Participation, i));
        }
        let got = net.drain(server);
        let bytes: Vec<u8> = got.iter().map(|f| f.body[0]).collect();
        assert_eq!(bytes, vec![0, 1, 2, 3, 4]);
        assert!(net.drain(server).is_empty());
    }

    #[test]
    fn interleaving_is_deterministic_under_seed() {
        let run = |seed| {
            let mut net = InProcNet::new(seed);
            let server = PartyId::server();
            for user in 0..4 {
                for i in 0..3u8 {
                    net.send(
                        server,
                        frame(PartyId::user(user), MessageType::Participation, i),
                    );
                }
            }
            net.drain(server)
                .iter()
                .map(|f| (f.sender.index, f.body[0]))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn drop_rules_filter_matching_frames() {
        let mut net = InProcNet::new(2);
        let node = PartyId::node(0);
        net.add_drop_rule(DropRule {
            from: Some(PartyId::user(3)),
            to: Some(node),
            msg_type: Some(MessageType::Participation),
        });
        net.send(node, frame(PartyId::user(3), MessageType::Participation, 1));
        net.send(node, frame(PartyId::user(4), MessageType::Participation, 2));
        net.send(node, frame(PartyId::user(3), MessageType::MaskedUpdate, 3));
        let got = net.drain(node);
        assert_eq!(got.len(), 2);
        assert!(got
            .iter()
            .all(|f| !(f.sender.index == 3 && f.msg_type == MessageType::Participation)));
    }

    #[test]
    fn outbound_bytes_count_framed_length() {
        let mut net = InProcNet::new(3);
        let server = PartyId::server();
        net.send(server, frame(PartyId::user(0), MessageType::Participation, 1));
        // 6-byte header + 1 body byte
        assert_eq!(net.outbound_bytes(PartyId::user(0)), 7);
        assert_eq!(net.outbound_bytes(PartyId::user(1)), 0);
    }
}
