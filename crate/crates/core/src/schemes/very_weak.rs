//! Very-weak interference scheme (2m <= n): K(n-m) + m bits per user in
//! K channel uses.
//!
//! Levels of each word split top-down into three parts of sizes m, n-2m, m.
//! Block 1 is all fresh bits. From block 2 on, each encoder recovers the
//! neighbour's top-m part of the previous block from feedback and repeats
//! it on its own top m levels, sending fresh bits on the lower n-m levels.
//! A receiver reads its top n-m levels cleanly each block; the interfered
//! bottom part of block t is cleared once the repeat shows up clean in
//! block t+1 (in the final block the repeat has cycled all the way round
//! to the receiver's own block-1 bits, which it already holds).

use super::{Encoder, Feedback, Scheme, SchemeError, SchemeKind};
use crate::channel::{FeedbackMode, LdConfig, LevelWord};

pub(super) struct VeryWeak;

impl Scheme for VeryWeak {
    fn kind(&self) -> SchemeKind {
        SchemeKind::VeryWeak
    }

    fn feedback_mode(&self) -> FeedbackMode {
        FeedbackMode::Local
    }

    fn admit(&self, config: &LdConfig) -> Result<(), SchemeError> {
        if 2 * config.cross > config.direct {
            return Err(SchemeError::WrongRegime {
                scheme: self.kind(),
                config: *config,
                requirement: "2m <= n (ratio at most 1/2)",
            });
        }
        Ok(())
    }

    fn blocks(&self, config: &LdConfig) -> usize {
        config.users
    }

    fn payload_bits(&self, config: &LdConfig) -> usize {
        config.users * (config.direct - config.cross) + config.cross
    }

    fn encoder(&self, config: &LdConfig, _user: usize, message: Vec<bool>) -> Box<dyn Encoder> {
        Box::new(VeryWeakEncoder { config: *config, message, cursor: 0, sent_prev: None })
    }

    fn decode(&self, config: &LdConfig, _user: usize, received: &[LevelWord]) -> Vec<bool> {
        let (n, m, k) = (config.direct, config.cross, config.users);
        let mut out = Vec::with_capacity(self.payload_bits(config));
        for t in 1..=k {
            let word = &received[t - 1];
            if t == 1 {
                // block 1: top m and middle n-2m arrive clean
                out.extend(word.slice(0..n - m));
            } else {
                // later blocks: only the middle n-2m is fresh payload
                out.extend(word.slice(m..n - m));
            }
            // the bottom m of block t is own-fresh XOR the neighbour's top m;
            // that same top m is repeated clean at the top of block t+1
            // (block K wraps to the receiver's own block-1 top bits)
            let repeat = if t < k { &received[t] } else { &received[0] };
            for i in 0..m {
                out.push(word.bit(n - m + i) ^ repeat.bit(i));
            }
        }
        out
    }
}

struct VeryWeakEncoder {
    config: LdConfig,
    message: Vec<bool>,
    cursor: usize,
    sent_prev: Option<LevelWord>,
}

impl VeryWeakEncoder {
    fn fresh(&mut self, count: usize) -> Vec<bool> {
        let bits = self.message[self.cursor..self.cursor + count].to_vec();
        self.cursor += count;
        bits
    }
}

impl Encoder for VeryWeakEncoder {
    fn transmit(&mut self, t: usize, feedback: &Feedback<'_>) -> LevelWord {
        let (n, m) = (self.config.direct, self.config.cross);
        let mut bits = Vec::with_capacity(n);
        if t == 1 {
            bits = self.fresh(n);
        } else {
            let fb = &feedback.local()[t - 2];
            let prev = self.sent_prev.as_ref().expect("block t-1 was sent");
            // feedback bottom m = own bottom m XOR neighbour top m
            for i in 0..m {
                bits.push(fb.bit(n - m + i) ^ prev.bit(n - m + i));
            }
            bits.extend(self.fresh(n - m));
        }
        let word = LevelWord::from_bits(bits);
        self.sent_prev = Some(word.clone());
        word
    }
}
