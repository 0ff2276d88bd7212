//! Length-prefixed framing.
//!
//! Wire layout: a 4-byte little-endian length counting everything after it,
//! then a 6-byte header (message type byte, sender role byte, sender ordinal
//! as 4-byte little-endian), then the body. The length field therefore always
//! equals `body.len() + 6`.

use std::io::{Read, Write};

use crate::messages::{MessageType, PartyId, Role};

use super::TransportError;

/// Header bytes following the length prefix: type tag plus sender identity.
pub const FRAME_HEADER_LEN: usize = 6;

/// Default maximum accepted frame length (256 MiB).
pub const DEFAULT_MAX_FRAME: u32 = 256 * 1024 * 1024;

/// Read-side limits.
#[derive(Debug, Clone, Copy)]
pub struct FrameLimits {
    pub max_frame: u32,
}

impl Default for FrameLimits {
    fn default() -> Self {
        FrameLimits {
            max_frame: DEFAULT_MAX_FRAME,
        }
    }
}

/// One protocol frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub msg_type: MessageType,
    pub sender: PartyId,
    pub body: Vec<u8>,
}

impl Frame {
    pub fn new(msg_type: MessageType, sender: PartyId, body: Vec<u8>) -> Frame {
        Frame {
            msg_type,
            sender,
            body,
        }
    }

    /// Bytes this frame occupies after the length prefix; the unit used for
    /// all outbound-bandwidth accounting.
    pub fn framed_len(&self) -> usize {
        FRAME_HEADER_LEN + self.body.len()
    }
}

/// Writes one frame; returns the framed length (header + body, excluding the
/// 4-byte length prefix).
pub fn frame_write(writer: &mut impl Write, frame: &Frame) -> Result<usize, TransportError> {
    let framed = frame.framed_len();
    let length = u32::try_from(framed).map_err(|_| TransportError::FrameTooLarge {
        declared: u32::MAX,
        max: DEFAULT_MAX_FRAME,
    })?;
    writer.write_all(&length.to_le_bytes())?;
    writer.write_all(&[frame.msg_type as u8, frame.sender.role as u8])?;
    writer.write_all(&frame.sender.index.to_le_bytes())?;
    writer.write_all(&frame.body)?;
    Ok(framed)
}

/// Reads one frame, handling partial reads. End-of-stream at a frame boundary
/// is `ConnectionClosed`; anywhere else it is a malformed frame.
pub fn frame_read(reader: &mut impl Read, limits: &FrameLimits) -> Result<Frame, TransportError> {
    let mut len_bytes = [0u8; 4];
    read_exact_or(reader, &mut len_bytes, TransportError::ConnectionClosed)?;
    let length = u32::from_le_bytes(len_bytes);
    if length < FRAME_HEADER_LEN as u32 {
        return Err(TransportError::MalformedFrame("length below header size"));
    }
    if length > limits.max_frame {
        return Err(TransportError::FrameTooLarge {
            declared: length,
            max: limits.max_frame,
        });
    }
    let mut header = [0u8; FRAME_HEADER_LEN];
    read_exact_or(
        reader,
        &mut header,
        TransportError::MalformedFrame("truncated header"),
    )?;
    let msg_type = MessageType::from_byte(header[0])
        .ok_or(TransportError::MalformedFrame("unknown message type"))?;
    let role =
        Role::from_byte(header[1]).ok_or(TransportError::MalformedFrame("unknown role tag"))?;
    let index = u32::from_le_bytes(header[2..6].try_into().expect("4 bytes"));
    let mut body = vec![0u8; length as usize - FRAME_HEADER_LEN];
    read_exact_or(
        reader,
        &mut body,
        TransportError::MalformedFrame("truncated body"),
    )?;
    Ok(Frame {
        msg_type,
        sender: PartyId { role, index },
        body,
    })
}

fn read_exact_or(
    reader: &mut impl Read,
    buf: &mut [u8],
    eof_error: TransportError,
) -> Result<(), TransportError> {
    match reader.read_exact(buf) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => Err(eof_error),
        Err(e) => Err(TransportError::Io(e)),
    }
}
