//! Canonical binary encoding, length-prefixed framing, the deterministic
//! in-process transport for tests, and the TCP transport for role binaries.

pub mod codec;
pub mod frame;
pub mod inproc;
pub mod tcp;

pub use codec::WireConfig;
pub use frame::{frame_read, frame_write, Frame, FrameLimits, FRAME_HEADER_LEN};
pub use inproc::{DropRule, InProcNet};
pub use tcp::FramedStream;

/// Errors from framing and message encoding.
#[derive(Debug, thiserror::Error)]
pub enum TransportError {
    /// Frame or body bytes do not parse under the v1 layout.
    #[error("malformed frame: {0}")]
    MalformedFrame(&'static str),
    /// A frame declared a length above the configured maximum.
    #[error("frame of {declared} bytes exceeds maximum {max}")]
    FrameTooLarge { declared: u32, max: u32 },
    /// The peer closed the connection at a frame boundary.
    #[error("connection closed")]
    ConnectionClosed,
    /// A vector being encoded does not match the configured dimension.
    #[error("vector length {got} does not match configured dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
