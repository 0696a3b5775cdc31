//! Linear deterministic model of the symmetric K-user cyclic Z-interference
//! channel.
//!
//! Signals are bit vectors over `max(n, m)` power levels, index 0 being the
//! top-most (highest-power) level so traces read top-down. Transmitter `k`
//! is heard by receiver `k` over `n` direct levels and by receiver `k-1`
//! (cyclically) over `m` cross levels; interference adds as XOR after the
//! level shift.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChannelError {
    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),
    #[error("word has {got} levels, channel uses {want}")]
    WordLength { got: usize, want: usize },
    #[error("expected {want} channel inputs, got {got}")]
    InputCount { got: usize, want: usize },
}

/// A symmetric LD cyclic Z-interference channel instance.
///
/// `users` transmitter/receiver pairs on a ring, `direct` signal levels per
/// link (`n`) and `cross` interference levels (`m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LdConfig {
    pub users: usize,
    pub direct: usize,
    pub cross: usize,
}

impl LdConfig {
    pub fn new(users: usize, direct: usize, cross: usize) -> Result<Self, ChannelError> {
        if users < 2 {
            return Err(ChannelError::InvalidConfig(format!(
                "need at least 2 users, got {users}"
            )));
        }
        if direct == 0 && cross == 0 {
            return Err(ChannelError::InvalidConfig(
                "direct and cross level counts cannot both be zero".into(),
            ));
        }
        Ok(Self { users, direct, cross })
    }

    /// Length of every channel input and output word: `max(n, m)`.
    pub fn word_length(&self) -> usize {
        self.direct.max(self.cross)
    }

    /// Next user index on the interference ring.
    pub fn next_user(&self, k: usize) -> usize {
        (k + 1) % self.users
    }
}

impl fmt::Display for LdConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, n={}, m={})", self.users, self.direct, self.cross)
    }
}

/// One transmitted or received word: a fixed-length bit vector over the
/// signal levels, most significant level first. Compared by content.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LevelWord {
    bits: Vec<bool>,
}

impl LevelWord {
    pub fn zero(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set_bit(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Copy of the bits in `range` (top-down order preserved).
    pub fn slice(&self, range: Range<usize>) -> Vec<bool> {
        self.bits[range].to_vec()
    }

    pub fn xor(&self, other: &LevelWord) -> LevelWord {
        assert_eq!(self.len(), other.len(), "XOR of unequal-length words");
        LevelWord {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Parse from a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self, ChannelError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ChannelError::InvalidConfig(format!(
                    "invalid bit character {c:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }
}

impl fmt::Display for LevelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl Serialize for LevelWord {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LevelWord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        LevelWord::parse(&s).map_err(D::Error::custom)
    }
}

/// The three named slices of a word.
///
/// With `n >= m`: `upper` is the top `n - m` bits (heard only by the own
/// receiver), `top` the top `m` bits (what lands on the neighbour), `low`
/// the bottom `m` bits (where interference lands). With `n < m` the roles
/// swap sides: `upper` is the top `m - n` bits, `top` and `low` have `n`
/// bits each. `top` and `low` may overlap (they coincide at n = m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    pub upper: LevelWord,
    pub top: LevelWord,
    pub low: LevelWord,
}

/// Slice a word into its `(upper, top, low)` parts for the given channel.
pub fn partition(word: &LevelWord, config: &LdConfig) -> Result<LevelPartition, ChannelError> {
    let len = config.word_length();
    if word.len() != len {
        return Err(ChannelError::WordLength { got: word.len(), want: len });
    }
    let small = config.direct.min(config.cross);
    let excess = len - small;
    Ok(LevelPartition {
        upper: LevelWord::from_bits(word.slice(0..excess)),
        top: LevelWord::from_bits(word.slice(0..small)),
        low: LevelWord::from_bits(word.slice(len - small..len)),
    })
}

/// One channel use: the K transmitted words and the K received words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelUse {
    pub time: usize,
    pub inputs: Vec<LevelWord>,
    pub outputs: Vec<LevelWord>,
}

/// Evaluate one channel use for all K users.
///
/// With `n >= m` receiver k sees `(upper_k, low_k XOR top_{k+1})`; with
/// `n < m` it sees `(upper_{k+1}, low_{k+1} XOR top_k)`, indices wrapping
/// modulo K. Output k therefore depends only on inputs k and k+1.
pub fn channel_step(
    inputs: &[LevelWord],
    config: &LdConfig,
) -> Result<Vec<LevelWord>, ChannelError> {
    if inputs.len() != config.users {
        return Err(ChannelError::InputCount { got: inputs.len(), want: config.users });
    }
    let len = config.word_length();
    let parts: Vec<LevelPartition> = inputs
        .iter()
        .map(|w| partition(w, config))
        .collect::<Result<_, _>>()?;

    let outputs = (0..config.users)
        .map(|k| {
            let next = config.next_user(k);
            let (upper, xor) = if config.direct >= config.cross {
                (&parts[k].upper, parts[k].low.xor(&parts[next].top))
            } else {
                (&parts[next].upper, parts[next].low.xor(&parts[k].top))
            };
            let mut bits = upper.bits().to_vec();
            bits.extend_from_slice(xor.bits());
            debug_assert_eq!(bits.len(), len);
            LevelWord::from_bits(bits)
        })
        .collect();
    Ok(outputs)
}

/// Which outputs an encoder may observe through the feedback link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeedbackMode {
    /// Receiver k feeds back only to transmitter k.
    Local,
    /// Every receiver feeds back to every transmitter.
    Global,
}

/// The causal feedback available to transmitter `user` when forming its
/// input at time `t`: exactly its receiver's outputs over times `1..t-1`,
/// never time `t` or later.
pub fn feedback_view(transcript: &[ChannelUse], user: usize, t: usize) -> Vec<LevelWord> {
    let upto = (t.saturating_sub(1)).min(transcript.len());
    transcript[..upto]
        .iter()
        .map(|u| u.outputs[user].clone())
        .collect()
}

/// Global-feedback variant: all K outputs for each time in `1..t-1`.
pub fn global_feedback_view(transcript: &[ChannelUse], t: usize) -> Vec<Vec<LevelWord>> {
    let upto = (t.saturating_sub(1)).min(transcript.len());
    transcript[..upto].iter().map(|u| u.outputs.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> LevelWord {
        LevelWord::parse(s).unwrap()
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(LdConfig::new(1, 3, 1).is_err());
        assert!(LdConfig::new(4, 0, 0).is_err());
        assert!(LdConfig::new(2, 0, 3).is_ok());
    }

    #[test]
    fn partition_weak_side() {
        // n=3, m=1: upper = top 2, top = top 1, low = bottom 1
        let cfg = LdConfig::new(4, 3, 1).unwrap();
        let p = partition(&word("101"), &cfg).unwrap();
        assert_eq!(p.upper, word("10"));
        assert_eq!(p.top, word("1"));
        assert_eq!(p.low, word("1"));
    }

    #[test]
    fn partition_strong_side() {
        // n=1, m=3: upper = top 2, top = top 1, low = bottom 1
        let cfg = LdConfig::new(4, 1, 3).unwrap();
        let p = partition(&word("011"), &cfg).unwrap();
        assert_eq!(p.upper, word("01"));
        assert_eq!(p.top, word("0"));
        assert_eq!(p.low, word("1"));
    }

    #[test]
    fn partition_equal_levels_overlaps() {
        let cfg = LdConfig::new(4, 2, 2).unwrap();
        let p = partition(&word("10"), &cfg).unwrap();
        assert!(p.upper.is_empty());
        assert_eq!(p.top, word("10"));
        assert_eq!(p.low, word("10"));
    }

    #[test]
    fn partition_checks_length() {
        let cfg = LdConfig::new(4, 3, 1).unwrap();
        assert_eq!(
            partition(&word("10"), &cfg),
            Err(ChannelError::WordLength { got: 2, want: 3 })
        );
    }

    #[test]
    fn step_no_interference_is_identity() {
        let cfg = LdConfig::new(3, 2, 0).unwrap();
        let xs = vec![word("10"), word("01"), word("11")];
        assert_eq!(channel_step(&xs, &cfg).unwrap(), xs);
    }

    #[test]
    fn step_weak_side() {
        // K=4, n=3, m=1: Y_1 = (a1, a2, a3 ^ b1)
        let cfg = LdConfig::new(4, 3, 1).unwrap();
        let xs = vec![word("111"), word("100"), word("000"), word("000")];
        let ys = channel_step(&xs, &cfg).unwrap();
        assert_eq!(ys[0], word("110")); // a3 ^ b1 = 1 ^ 1 = 0
    }

    #[test]
    fn step_strong_side() {
        // K=4, n=1, m=3: Y_1 = (b1, b2, 0 ^ a1)
        let cfg = LdConfig::new(4, 1, 3).unwrap();
        let xs = vec![word("110"), word("010"), word("000"), word("000")];
        let ys = channel_step(&xs, &cfg).unwrap();
        assert_eq!(ys[0], word("011"));
    }

    #[test]
    fn step_wrong_count() {
        let cfg = LdConfig::new(4, 3, 1).unwrap();
        assert!(matches!(
            channel_step(&[word("111")], &cfg),
            Err(ChannelError::InputCount { got: 1, want: 4 })
        ));
    }

    #[test]
    fn feedback_is_causal() {
        let cfg = LdConfig::new(3, 2, 1).unwrap();
        let mut transcript = Vec::new();
        for t in 1..=3 {
            let xs: Vec<_> = (0..3)
                .map(|k| LevelWord::from_bits(vec![t % 2 == 0, k % 2 == 0]))
                .collect();
            let ys = channel_step(&xs, &cfg).unwrap();
            transcript.push(ChannelUse { time: t, inputs: xs, outputs: ys });
        }
        assert!(feedback_view(&transcript, 1, 1).is_empty());
        let v = feedback_view(&transcript, 1, 3);
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], transcript[0].outputs[1]);
        assert_eq!(v[1], transcript[1].outputs[1]);
        let g = global_feedback_view(&transcript, 2);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0], transcript[0].outputs);
    }
}
