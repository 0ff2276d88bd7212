//! Blocking TCP transport: one framed stream per peer connection.

use std::io::BufReader;
use std::net::TcpStream;
use std::time::Duration;

use super::frame::{frame_read, frame_write, Frame, FrameLimits};
use super::TransportError;

/// A TCP connection carrying length-prefixed frames, with outbound byte
/// accounting in framed-length units (header plus body).
pub struct FramedStream {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
    limits: FrameLimits,
    outbound: u64,
}

impl FramedStream {
    pub fn new(stream: TcpStream) -> std::io::Result<FramedStream> {
        stream.set_nodelay(true)?;
        let writer = stream.try_clone()?;
        Ok(FramedStream {
            reader: BufReader::new(stream),
            writer,
            limits: FrameLimits::default(),
            outbound: 0,
        })
    }

    pub fn connect(addr: &str) -> std::io::Result<FramedStream> {
        FramedStream::new(TcpStream::connect(addr)?)
    }

    pub fn set_read_timeout(&self, timeout: Option<Duration>) -> std::io::Result<()> {
        self.reader.get_ref().set_read_timeout(timeout)
    }

    pub fn peer_addr(&self) -> std::io::Result<std::net::SocketAddr> {
        self.writer.peer_addr()
    }

    pub fn send(&mut self, frame: &Frame) -> Result<(), TransportError> {
        let written = frame_write(&mut self.writer, frame)?;
        self.outbound += written as u64;
        Ok(())
    }

    pub fn recv(&mut self) -> Result<Frame, TransportError> {
        frame_read(&mut self.reader, &self.limits)
    }

    /// Like `recv`, but a read timeout yields `Ok(None)` instead of an error.
    pub fn recv_timeout(&mut self) -> Result<Option<Frame>, TransportError> {
        match self.recv() {
            Ok(frame) => Ok(Some(frame)),
            Err(TransportError::Io(e))
                if matches!(
                    e.kind(),
                    std::io::ErrorKind::WouldBlock | std::io::ErrorKind::TimedOut
                ) =>
            {
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn outbound_bytes(&self) -> u64 {
        self.outbound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::messages::{MessageType, PartyId};
    use std::net::TcpListener;

    #[test]
    fn frames_cross_a_real_socket() {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        let handle = std::thread::spawn(move || {
            let (stream, _) = listener.accept().unwrap();
            let mut framed = FramedStream::new(stream).unwrap();
            let got = framed.recv().unwrap();
            framed.send(&got).unwrap();
        });
        let mut client = FramedStream::connect(&addr.to_string()).unwrap();
        let frame = Frame::new(MessageType::Participation, PartyId::user(1), vec![5; 16]);
        client.send(&frame).unwrap();
        assert_eq!(client.outbound_bytes(), 22);
        let echoed = client.recv().unwrap();
        assert_eq!(echoed, frame);
        handle.join().unwrap();
    }
}
