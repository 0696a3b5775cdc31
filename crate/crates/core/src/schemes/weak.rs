//! Weak interference scheme (n/2 <= m <= 2n/3): Km + (2n-3m) bits per user
//! in K channel uses.
//!
//! Levels split top-down into four parts of sizes 2m-n, 2n-3m, 2m-n, n-m.
//! Part 3 stays silent in every block. Block 1 sends fresh bits on parts
//! 1, 2 and 4. From block 2 on, part 2 repeats the neighbour's part 2 of
//! the previous block (recovered from feedback), while parts 1 and 4 stay
//! fresh. At a receiver, parts 1 and 2 arrive clean; the slice of part 4
//! hit by the neighbour's part 2 is cleared one block later when that same
//! content shows up clean in the receiver's own part 2 (block K wraps to
//! the receiver's own block-1 content).

use super::{Encoder, Feedback, Scheme, SchemeError, SchemeKind};
use crate::channel::{FeedbackMode, LdConfig, LevelWord};

pub(super) struct Weak;

/// Top-down sizes of the four level parts.
fn part_sizes(config: &LdConfig) -> (usize, usize, usize, usize) {
    let (n, m) = (config.direct, config.cross);
    (2 * m - n, 2 * n - 3 * m, 2 * m - n, n - m)
}

impl Scheme for Weak {
    fn kind(&self) -> SchemeKind {
        SchemeKind::Weak
    }

    fn feedback_mode(&self) -> FeedbackMode {
        FeedbackMode::Local
    }

    fn admit(&self, config: &LdConfig) -> Result<(), SchemeError> {
        let (n, m) = (config.direct, config.cross);
        if 2 * m < n || 3 * m > 2 * n {
            return Err(SchemeError::WrongRegime {
                scheme: self.kind(),
                config: *config,
                requirement: "n/2 <= m <= 2n/3 (ratio between 1/2 and 2/3)",
            });
        }
        Ok(())
    }

    fn blocks(&self, config: &LdConfig) -> usize {
        config.users
    }

    fn payload_bits(&self, config: &LdConfig) -> usize {
        config.users * config.cross + (2 * config.direct - 3 * config.cross)
    }

    fn encoder(&self, config: &LdConfig, _user: usize, message: Vec<bool>) -> Box<dyn Encoder> {
        Box::new(WeakEncoder { config: *config, message, cursor: 0, sent_prev: None })
    }

    fn decode(&self, config: &LdConfig, _user: usize, received: &[LevelWord]) -> Vec<bool> {
        let (n, m, k) = (config.direct, config.cross, config.users);
        let (s1, s2, _s3, _s4) = part_sizes(config);
        let mut out = Vec::with_capacity(self.payload_bits(config));
        for t in 1..=k {
            let word = &received[t - 1];
            // part 1 arrives clean every block
            out.extend(word.slice(0..s1));
            if t == 1 {
                // own part 2 is payload only in block 1
                out.extend(word.slice(s1..s1 + s2));
            }
            // part 4 occupies word positions [m, n); its first s2 bits carry
            // the neighbour's part 2 on top, repeated clean in the next
            // block's own part 2 (block K wraps to own block-1 part 2)
            let repeat = if t < k { &received[t] } else { &received[0] };
            for i in 0..s2 {
                out.push(word.bit(m + i) ^ repeat.bit(s1 + i));
            }
            out.extend(word.slice(m + s2..n));
        }
        out
    }
}

struct WeakEncoder {
    config: LdConfig,
    message: Vec<bool>,
    cursor: usize,
    sent_prev: Option<LevelWord>,
}

impl WeakEncoder {
    fn fresh(&mut self, count: usize) -> Vec<bool> {
        let bits = self.message[self.cursor..self.cursor + count].to_vec();
        self.cursor += count;
        bits
    }
}

impl Encoder for WeakEncoder {
    fn transmit(&mut self, t: usize, feedback: &Feedback<'_>) -> LevelWord {
        let (n, m) = (self.config.direct, self.config.cross);
        let (s1, s2, s3, s4) = part_sizes(&self.config);
        let mut bits = Vec::with_capacity(n);
        bits.extend(self.fresh(s1));
        if t == 1 {
            bits.extend(self.fresh(s2));
        } else {
            let fb = &feedback.local()[t - 2];
            let prev = self.sent_prev.as_ref().expect("block t-1 was sent");
            // neighbour's top m of block t-1 = feedback bottom m XOR own
            // bottom m; its part-2 slice sits at offset s1
            for i in 0..s2 {
                bits.push(fb.bit(n - m + s1 + i) ^ prev.bit(n - m + s1 + i));
            }
        }
        bits.extend(std::iter::repeat_n(false, s3));
        bits.extend(self.fresh(s4));
        let word = LevelWord::from_bits(bits);
        self.sent_prev = Some(word.clone());
        word
    }
}
