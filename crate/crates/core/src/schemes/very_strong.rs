//! Very-strong interference scheme (m >= 2n): Kn + (m - 2n) bits per user
//! in K channel uses.
//!
//! Words have m levels; the bottom n stay silent in every block, so each
//! receiver hears its own top n bits clean underneath the neighbour's
//! word. Block 1 sends m-n fresh bits on the upper levels. From block 2
//! on, the top n levels carry fresh bits and the middle m-2n levels repeat
//! the neighbour's middle of the previous block (read clean off feedback).
//! The middle content therefore circulates the ring and lands back at its
//! own receiver in block K, one full cycle delayed.

use super::{Encoder, Feedback, Scheme, SchemeError, SchemeKind};
use crate::channel::{FeedbackMode, LdConfig, LevelWord};

pub(super) struct VeryStrong;

impl Scheme for VeryStrong {
    fn kind(&self) -> SchemeKind {
        SchemeKind::VeryStrong
    }

    fn feedback_mode(&self) -> FeedbackMode {
        FeedbackMode::Local
    }

    fn admit(&self, config: &LdConfig) -> Result<(), SchemeError> {
        if config.cross < 2 * config.direct {
            return Err(SchemeError::WrongRegime {
                scheme: self.kind(),
                config: *config,
                requirement: "m >= 2n (ratio at least 2)",
            });
        }
        Ok(())
    }

    fn blocks(&self, config: &LdConfig) -> usize {
        config.users
    }

    fn payload_bits(&self, config: &LdConfig) -> usize {
        config.users * config.direct + (config.cross - 2 * config.direct)
    }

    fn encoder(&self, config: &LdConfig, _user: usize, message: Vec<bool>) -> Box<dyn Encoder> {
        Box::new(VeryStrongEncoder { config: *config, message, cursor: 0 })
    }

    fn decode(&self, config: &LdConfig, _user: usize, received: &[LevelWord]) -> Vec<bool> {
        let (n, m, k) = (config.direct, config.cross, config.users);
        let mut out = Vec::with_capacity(self.payload_bits(config));
        // own top n of block 1, heard clean on the bottom n positions
        out.extend(received[0].slice(m - n..m));
        // own block-1 middle, back around the ring in the final block
        out.extend(received[k - 1].slice(n..m - n));
        // fresh top bits of blocks 2..K
        for word in &received[1..k] {
            out.extend(word.slice(m - n..m));
        }
        out
    }
}

struct VeryStrongEncoder {
    config: LdConfig,
    message: Vec<bool>,
    cursor: usize,
}

impl VeryStrongEncoder {
    fn fresh(&mut self, count: usize) -> Vec<bool> {
        let bits = self.message[self.cursor..self.cursor + count].to_vec();
        self.cursor += count;
        bits
    }
}

impl Encoder for VeryStrongEncoder {
    fn transmit(&mut self, t: usize, feedback: &Feedback<'_>) -> LevelWord {
        let (n, m) = (self.config.direct, self.config.cross);
        let mut bits = Vec::with_capacity(m);
        if t == 1 {
            bits = self.fresh(m - n);
        } else {
            // the neighbour's word is fully visible in feedback here: its
            // upper m-n bits arrive clean and the rest sits under silence
            let fb = &feedback.local()[t - 2];
            bits.extend(self.fresh(n));
            bits.extend(fb.slice(n..m - n));
        }
        bits.extend(std::iter::repeat_n(false, m - bits.len()));
        LevelWord::from_bits(bits)
    }
}
