//! A growable packed bit sequence with the two dump formats used at the
//! tool boundary: ASCII '0'/'1' lines of 64 bits, and packed bytes with
//! the first bit in the most significant position.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StreamError {
    #[error("invalid stream character {found:?} at bit {position}")]
    BadChar { position: usize, found: char },
    #[error("a bit stream needs at least one bit")]
    Empty,
}

/// A bit sequence packed 64 bits per word; position 0 is the first bit
/// emitted, stored at the least significant end of word 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitStream {
    words: Vec<u64>,
    len: usize,
}

impl BitStream {
    pub fn new() -> Self {
        BitStream::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitStream {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().unwrap() |= 1u64 << (self.len % 64);
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, position: usize) -> bool {
        assert!(position < self.len, "bit position out of range");
        (self.words[position / 64] >> (position % 64)) & 1 == 1
    }

    /// Packed words; unused high bits of the final word are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut s = BitStream::new();
        for b in bits {
            s.push(b);
        }
        s
    }

    /// Build from packed words (64 bits each); surplus bits of the final
    /// word beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        assert_eq!(
            words.len(),
            len.div_ceil(64),
            "word count must match length"
        );
        if !len.is_multiple_of(64) {
            *words.last_mut().unwrap() &= (1u64 << (len % 64)) - 1;
        }
        BitStream { words, len }
    }

    /// Parse ASCII '0'/'1' text; whitespace (line structure) is ignored.
    pub fn from_ascii(text: &str) -> Result<Self, StreamError> {
        let mut s = BitStream::new();
        for c in text.chars() {
            match c {
                '0' => s.push(false),
                '1' => s.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(StreamError::BadChar {
                        position: s.len,
                        found: c,
                    })
                }
            }
        }
        if s.is_empty() {
            return Err(StreamError::Empty);
        }
        Ok(s)
    }

    /// Dump as '0'/'1' lines of 64 bits (the final line may be shorter);
    /// every line is newline-terminated.
    pub fn to_ascii_lines(&self) -> String {
        let mut out = String::with_capacity(self.len + self.len / 64 + 1);
        for (i, b) in self.iter().enumerate() {
            out.push(if b { '1' } else { '0' });
            if i % 64 == 63 {
                out.push('\n');
            }
        }
        if !self.len.is_multiple_of(64) {
            out.push('\n');
        }
        out
    }

    /// Packed byte form: bit 8k is the most significant bit of byte k; a
    /// partial final byte is zero-padded at the low end.
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for (i, b) in self.iter().enumerate() {
            if b {
                out[i / 8] |= 1 << (7 - i % 8);
            }
        }
        out
    }

    /// Inverse of [`BitStream::to_packed_bytes`]; the length is taken to
    /// be 8 bits per byte (padding is not recoverable from the bytes).
    pub fn from_packed_bytes(bytes: &[u8]) -> Self {
        let mut s = BitStream::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            for j in (0..8).rev() {
                s.push(byte >> j & 1 == 1);
            }
        }
        s
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitStream {
    type Err = StreamError;

    fn from_str(s: &str) -> Result<Self, StreamError> {
        BitStream::from_ascii(s)
    }
}
