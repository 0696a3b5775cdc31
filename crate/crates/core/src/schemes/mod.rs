//! Bit-exact executors for the feedback coding schemes on the LD cyclic
//! Z-interference channel.
//!
//! Every scheme runs as a block-synchronous simulation: per block each
//! encoder is handed exactly its own message bits and its feedback view of
//! the earlier blocks, so causality is enforced by construction rather than
//! by convention. Decoders likewise see only their own receiver's words.
//! A run reports the exact achieved rate as a rational and a full decode
//! trace, and [`verify_decode`] checks the trace against the message bank.

use crate::capacity::Alpha;
use crate::channel::{
    channel_step, feedback_view, global_feedback_view, ChannelError, ChannelUse, FeedbackMode,
    LdConfig, LevelWord,
};
use num_rational::Rational64;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

mod global;
mod very_strong;
mod very_weak;
mod weak;

pub use global::degenerate_global;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("{config} is outside the {scheme} regime: needs {requirement}")]
    WrongRegime {
        scheme: SchemeKind,
        config: LdConfig,
        requirement: &'static str,
    },
    #[error("the two-block global-feedback scheme cannot serve n = m = 1 with an odd user count")]
    DegenerateGlobal,
}

/// The four coding schemes with a bit-level executor.
///
/// The moderate/strong window `2/3 <= m/n <= 2` has no feedback scheme
/// here: feedback does not raise its capacity, so a no-feedback code
/// already meets the formula and the runners refuse those ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    /// Local feedback, ratio in [0, 1/2].
    VeryWeak,
    /// Local feedback, ratio in [1/2, 2/3].
    Weak,
    /// Local feedback, ratio in [2, inf].
    VeryStrong,
    /// Global feedback, two blocks, any ratio.
    GlobalFeedback,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [
        SchemeKind::VeryWeak,
        SchemeKind::Weak,
        SchemeKind::VeryStrong,
        SchemeKind::GlobalFeedback,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::VeryWeak => "very-weak",
            SchemeKind::Weak => "weak",
            SchemeKind::VeryStrong => "very-strong",
            SchemeKind::GlobalFeedback => "global",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-user message bits, drawn i.i.d. uniform from a seeded generator.
/// The same `(users, bits_per_user, seed)` always reproduces the same bank;
/// each user draws from its own stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageBank {
    seed: u64,
    per_user: Vec<Vec<bool>>,
}

impl MessageBank {
    pub fn generate(users: usize, bits_per_user: usize, seed: u64) -> Self {
        let per_user = (0..users)
            .map(|k| {
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                rng.set_stream(k as u64 + 1);
                (0..bits_per_user).map(|_| rng.next_u32() & 1 == 1).collect()
            })
            .collect();
        Self { seed, per_user }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn users(&self) -> usize {
        self.per_user.len()
    }

    pub fn bits_per_user(&self) -> usize {
        self.per_user.first().map_or(0, Vec::len)
    }

    pub fn user(&self, k: usize) -> &[bool] {
        &self.per_user[k]
    }
}

/// Outcome of one scheme run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeResult {
    pub bits_per_user: usize,
    /// Number of channel uses.
    pub blocks: usize,
    /// bits_per_user / blocks, exact.
    pub rate_per_user: Rational64,
    /// rate_per_user / n, exact; `None` when n = 0.
    pub normalized_rate: Option<Rational64>,
    pub decode_success: bool,
    /// What each decoder recovered, in message order.
    pub decoded: Vec<Vec<bool>>,
}

/// A completed run: configuration, messages, transcript, and result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRun {
    pub kind: SchemeKind,
    pub config: LdConfig,
    pub bank: MessageBank,
    pub transcript: Vec<ChannelUse>,
    pub result: SchemeResult,
}

/// Feedback handed to an encoder for block `t`: outputs of blocks `1..t-1`.
pub(crate) enum Feedback<'a> {
    Local(&'a [LevelWord]),
    Global(&'a [Vec<LevelWord>]),
}

impl<'a> Feedback<'a> {
    fn local(&self) -> &[LevelWord] {
        match self {
            Feedback::Local(v) => v,
            Feedback::Global(_) => panic!("scheme expected local feedback"),
        }
    }

    fn global(&self) -> &[Vec<LevelWord>] {
        match self {
            Feedback::Global(v) => v,
            Feedback::Local(_) => panic!("scheme expected global feedback"),
        }
    }
}

pub(crate) trait Encoder {
    /// Produce the word for block `t` (1-based). Called once per block in
    /// order; the encoder sees nothing but its message and `feedback`.
    fn transmit(&mut self, t: usize, feedback: &Feedback<'_>) -> LevelWord;
}

pub(crate) trait Scheme {
    fn kind(&self) -> SchemeKind;
    fn feedback_mode(&self) -> FeedbackMode;
    fn admit(&self, config: &LdConfig) -> Result<(), SchemeError>;
    fn blocks(&self, config: &LdConfig) -> usize;
    fn payload_bits(&self, config: &LdConfig) -> usize;
    fn encoder(&self, config: &LdConfig, user: usize, message: Vec<bool>) -> Box<dyn Encoder>;
    /// Recover user `k`'s message bits from its own received words only.
    fn decode(&self, config: &LdConfig, user: usize, received: &[LevelWord]) -> Vec<bool>;
}

fn scheme_impl(kind: SchemeKind) -> &'static dyn Scheme {
    match kind {
        SchemeKind::VeryWeak => &very_weak::VeryWeak,
        SchemeKind::Weak => &weak::Weak,
        SchemeKind::VeryStrong => &very_strong::VeryStrong,
        SchemeKind::GlobalFeedback => &global::GlobalFeedback,
    }
}

/// Number of message bits per user the scheme carries on `config`,
/// without running it. Errors if the config is out of regime.
pub fn payload_bits(kind: SchemeKind, config: &LdConfig) -> Result<usize, SchemeError> {
    let s = scheme_impl(kind);
    s.admit(config)?;
    Ok(s.payload_bits(config))
}

/// Run a scheme end to end: generate messages, execute the block loop,
/// decode at every receiver, and compare against the bank.
pub fn run_scheme(kind: SchemeKind, config: &LdConfig, seed: u64) -> Result<SchemeRun, SchemeError> {
    let scheme = scheme_impl(kind);
    scheme.admit(config)?;
    LdConfig::new(config.users, config.direct, config.cross)?;

    let blocks = scheme.blocks(config);
    let bits = scheme.payload_bits(config);
    let bank = MessageBank::generate(config.users, bits, seed);

    let mut encoders: Vec<Box<dyn Encoder>> = (0..config.users)
        .map(|k| scheme.encoder(config, k, bank.user(k).to_vec()))
        .collect();

    let mut transcript: Vec<ChannelUse> = Vec::with_capacity(blocks);
    for t in 1..=blocks {
        let inputs: Vec<LevelWord> = match scheme.feedback_mode() {
            FeedbackMode::Local => encoders
                .iter_mut()
                .enumerate()
                .map(|(k, e)| e.transmit(t, &Feedback::Local(&feedback_view(&transcript, k, t))))
                .collect(),
            FeedbackMode::Global => {
                let view = global_feedback_view(&transcript, t);
                encoders
                    .iter_mut()
                    .map(|e| e.transmit(t, &Feedback::Global(&view)))
                    .collect()
            }
        };
        let outputs = channel_step(&inputs, config)?;
        transcript.push(ChannelUse { time: t, inputs, outputs });
    }

    let decoded = decode_transcript(kind, config, &transcript)?;
    let decode_success = (0..config.users).all(|k| decoded[k] == bank.user(k));
    let result = SchemeResult {
        bits_per_user: bits,
        blocks,
        rate_per_user: Rational64::new(bits as i64, blocks as i64),
        normalized_rate: match config.alpha() {
            Alpha::Finite(_) => Some(Rational64::new(
                bits as i64,
                (blocks * config.direct) as i64,
            )),
            Alpha::Infinite => None,
        },
        decode_success,
        decoded,
    };
    Ok(SchemeRun { kind, config: *config, bank, transcript, result })
}

/// Re-run every decoder over a transcript (possibly a tampered one).
pub fn decode_transcript(
    kind: SchemeKind,
    config: &LdConfig,
    transcript: &[ChannelUse],
) -> Result<Vec<Vec<bool>>, SchemeError> {
    let scheme = scheme_impl(kind);
    scheme.admit(config)?;
    Ok((0..config.users)
        .map(|k| {
            let received: Vec<LevelWord> =
                transcript.iter().map(|u| u.outputs[k].clone()).collect();
            scheme.decode(config, k, &received)
        })
        .collect())
}

/// True iff every decoder reproduced every message bit exactly.
pub fn verify_decode(result: &SchemeResult, bank: &MessageBank) -> bool {
    result.decoded.len() == bank.users()
        && (0..bank.users()).all(|k| result.decoded[k] == bank.user(k))
}

pub fn run_very_weak(config: &LdConfig, seed: u64) -> Result<SchemeRun, SchemeError> {
    run_scheme(SchemeKind::VeryWeak, config, seed)
}

pub fn run_weak(config: &LdConfig, seed: u64) -> Result<SchemeRun, SchemeError> {
    run_scheme(SchemeKind::Weak, config, seed)
}

pub fn run_very_strong(config: &LdConfig, seed: u64) -> Result<SchemeRun, SchemeError> {
    run_scheme(SchemeKind::VeryStrong, config, seed)
}

pub fn run_global_fb(config: &LdConfig, seed: u64) -> Result<SchemeRun, SchemeError> {
    run_scheme(SchemeKind::GlobalFeedback, config, seed)
}

/// Local-feedback schemes whose regime admits `config`. Boundary ratios
/// (1/2 exactly, or m = 2n) admit two schemes.
pub fn applicable_schemes(config: &LdConfig) -> Vec<SchemeKind> {
    SchemeKind::ALL
        .iter()
        .copied()
        .filter(|k| *k != SchemeKind::GlobalFeedback)
        .filter(|k| scheme_impl(*k).admit(config).is_ok())
        .collect()
}

/// JSON dump of a full run (per block and user: sent word, received word;
/// plus message and decode trace), for debugging and figure reproduction.
pub fn trace_json(run: &SchemeRun) -> serde_json::Value {
    fn bits_string(bits: &[bool]) -> String {
        bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
    serde_json::json!({
        "schema_version": 1,
        "scheme": run.kind.name(),
        "users": run.config.users,
        "direct": run.config.direct,
        "cross": run.config.cross,
        "seed": run.bank.seed(),
        "blocks": run.transcript.iter().map(|u| serde_json::json!({
            "time": u.time,
            "sent": u.inputs.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "received": u.outputs.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "messages": (0..run.config.users)
            .map(|k| bits_string(run.bank.user(k)))
            .collect::<Vec<_>>(),
        "decoded": run.result.decoded.iter().map(|d| bits_string(d)).collect::<Vec<_>>(),
        "bits_per_user": run.result.bits_per_user,
        "decode_success": run.result.decode_success,
    })
}

#[cfg(test)]
mod tests;
