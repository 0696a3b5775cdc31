//! Two-block global-feedback scheme: max(2n - m, m) bits per user in 2
//! channel uses, for any user count and any level pair except n = m = 1
//! with an odd ring (see below).
//!
//! Block 1 is all fresh bits. The global feedback of block 1, anchored by
//! each transmitter's knowledge of its own word, determines every block-1
//! input at every transmitter ([`reconstruct_inputs`]). Block 2 then
//! delivers the outstanding bits with the interference pre-cancelled at
//! the transmitters, since every interfering word of block 2 is itself a
//! function of block-1 data:
//!
//! * n > m: each transmitter resends its own m interfered bits plus n - m
//!   fresh ones, XOR-ing the incoming interference onto its bottom m
//!   levels so its receiver reads all n clean.
//! * n < m: transmitter k sends the whole message of user k-1 (its ring
//!   predecessor, whose receiver hears it at full strength), cancelling
//!   that receiver's own-signal corruption on the bottom n levels.
//! * n = m: outputs are whole-word XORs of ring neighbours, so receiver k
//!   holds w_k XOR w_{k+1} from block 1. Block 2 sends combinations
//!   G_k(w_k) chosen so that receiver k sees G_k(w_k) XOR G_{k+1}(w_{k+1})
//!   with G_k XOR G_{k+1} invertible; picking the coefficients from
//!   {0, 1, x} in GF(2)[x]/(x^n + x + 1) satisfies the ring of constraints
//!   for every K when n >= 2 and for even K when n = 1. For n = m = 1 and
//!   odd K no two-block scheme exists: the per-level maps would have to be
//!   affine with an odd alternating sum forced to zero, which is
//!   impossible, so that corner is reported as degenerate.

use super::{Encoder, Feedback, Scheme, SchemeError, SchemeKind};
use crate::channel::{FeedbackMode, LdConfig, LevelWord};

pub(super) struct GlobalFeedback;

/// True for the one configuration the two-block global scheme cannot
/// serve: n = m = 1 with an odd number of users.
pub fn degenerate_global(config: &LdConfig) -> bool {
    config.direct == 1 && config.cross == 1 && config.users % 2 == 1
}

impl Scheme for GlobalFeedback {
    fn kind(&self) -> SchemeKind {
        SchemeKind::GlobalFeedback
    }

    fn feedback_mode(&self) -> FeedbackMode {
        FeedbackMode::Global
    }

    fn admit(&self, config: &LdConfig) -> Result<(), SchemeError> {
        if degenerate_global(config) {
            return Err(SchemeError::DegenerateGlobal);
        }
        Ok(())
    }

    fn blocks(&self, _config: &LdConfig) -> usize {
        2
    }

    fn payload_bits(&self, config: &LdConfig) -> usize {
        let (n, m) = (config.direct, config.cross);
        (2 * n).saturating_sub(m).max(m)
    }

    fn encoder(&self, config: &LdConfig, user: usize, message: Vec<bool>) -> Box<dyn Encoder> {
        Box::new(GlobalEncoder { config: *config, user, message, sent_first: None })
    }

    fn decode(&self, config: &LdConfig, user: usize, received: &[LevelWord]) -> Vec<bool> {
        let (n, m) = (config.direct, config.cross);
        if n > m {
            // block 1 top n-m clean, block 2 entirely clean after the
            // transmitter-side cancellation
            let mut out = received[0].slice(0..n - m);
            out.extend(received[1].bits().iter().copied());
            out
        } else if n < m {
            // the predecessor-side retransmission of block 2 is clean
            received[1].bits().to_vec()
        } else {
            // solve [I I; G_k G_{k+1}] from the two received words
            let g = coefficients(config);
            let k = user;
            let next = config.next_user(k);
            // (G_k + G_{k+1}) w_k = y2 + G_{k+1} y1
            let rhs = received[1].xor(&apply(g[next], received[0].bits()));
            let diff = CoefDiff::new(g[k], g[next]);
            diff.solve(&rhs)
        }
    }
}

struct GlobalEncoder {
    config: LdConfig,
    user: usize,
    message: Vec<bool>,
    sent_first: Option<LevelWord>,
}

impl Encoder for GlobalEncoder {
    fn transmit(&mut self, t: usize, feedback: &Feedback<'_>) -> LevelWord {
        let cfg = &self.config;
        let (n, m) = (cfg.direct, cfg.cross);
        if t == 1 {
            let len = cfg.word_length();
            let mut bits = self.message[..self.message.len().min(len)].to_vec();
            bits.extend(std::iter::repeat_n(false, len - bits.len()));
            let word = LevelWord::from_bits(bits);
            self.sent_first = Some(word.clone());
            return word;
        }

        let outputs = &feedback.global()[0];
        let own = self.sent_first.as_ref().expect("block 1 was sent");
        let inputs = reconstruct_inputs(cfg, self.user, own, outputs);

        if n > m {
            // own outstanding bits then fresh ones, minus what will hit us
            let mut intended = self.message[n - m..2 * n - m].to_vec();
            let tops = second_block_tops(cfg, &inputs);
            let next = cfg.next_user(self.user);
            for p in n - m..n {
                intended[p] ^= tops[next][p - (n - m)];
            }
            LevelWord::from_bits(intended)
        } else if n < m {
            // serve the ring predecessor's receiver
            let prev = (self.user + cfg.users - 1) % cfg.users;
            let mut intended = inputs[prev].bits().to_vec();
            let tops = second_block_tops(cfg, &inputs);
            for p in m - n..m {
                intended[p] ^= tops[prev][p - (m - n)];
            }
            LevelWord::from_bits(intended)
        } else {
            // prefix XOR of the per-receiver combinations h_l
            let g = coefficients(cfg);
            let mut word = LevelWord::zero(n);
            for l in 0..self.user {
                let h = apply(g[l], inputs[l].bits())
                    .xor(&apply(g[cfg.next_user(l)], inputs[cfg.next_user(l)].bits()));
                word = word.xor(&h);
            }
            word
        }
    }
}

/// Recover every block-1 input from all K outputs plus one known input.
///
/// Clean upper levels pin bits directly; each XOR level relates two users,
/// and resolving from the anchor walks the ring with strictly descending
/// level indices, so iterating to a fixpoint fills the whole grid.
#[allow(clippy::needless_range_loop)] // ring equations index two users at offset levels
pub(crate) fn reconstruct_inputs(
    config: &LdConfig,
    anchor: usize,
    anchor_input: &LevelWord,
    outputs: &[LevelWord],
) -> Vec<LevelWord> {
    let (n, m, users) = (config.direct, config.cross, config.users);
    let len = config.word_length();
    let small = n.min(m);
    let excess = len - small;

    let mut known: Vec<Vec<Option<bool>>> = vec![vec![None; len]; users];
    for (p, slot) in known[anchor].iter_mut().enumerate() {
        *slot = Some(anchor_input.bit(p));
    }
    // clean upper levels: Y_l[0..excess) is a verbatim copy
    for l in 0..users {
        let src = if n >= m { l } else { config.next_user(l) };
        for p in 0..excess {
            known[src][p] = Some(outputs[l].bit(p));
        }
    }
    // XOR levels: Y_l[excess + j] = X_a[len - small + j] ^ X_b[j]
    loop {
        let mut progress = false;
        for l in 0..users {
            let (a, b) = if n >= m { (l, config.next_user(l)) } else { (config.next_user(l), l) };
            for j in 0..small {
                let y = outputs[l].bit(excess + j);
                match (known[a][len - small + j], known[b][j]) {
                    (Some(_), Some(_)) | (None, None) => {}
                    (Some(va), None) => {
                        known[b][j] = Some(y ^ va);
                        progress = true;
                    }
                    (None, Some(vb)) => {
                        known[a][len - small + j] = Some(y ^ vb);
                        progress = true;
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    known
        .into_iter()
        .map(|bits| {
            LevelWord::from_bits(
                bits.into_iter()
                    .map(|b| b.expect("global feedback determines all block-1 inputs"))
                    .collect(),
            )
        })
        .collect()
}

/// Actual top slice (the part that interferes) of every block-2 word.
///
/// Positions below the cancellation window are outstanding block-1 bits;
/// inside the window each bit adds the next user's already-computed top
/// bit at a strictly lower index, so a single ascending pass settles all.
fn second_block_tops(config: &LdConfig, inputs: &[LevelWord]) -> Vec<Vec<bool>> {
    let (n, m, users) = (config.direct, config.cross, config.users);
    if n > m {
        // top m of X_l(2): outstanding bits X_l(1)[n-m..n), cancelled from
        // position n-m on by the successor's top
        let mut tops = vec![vec![false; m]; users];
        for p in 0..m {
            for l in 0..users {
                let mut bit = inputs[l].bit(n - m + p);
                if p >= n - m {
                    bit ^= tops[config.next_user(l)][p - (n - m)];
                }
                tops[l][p] = bit;
            }
        }
        tops
    } else {
        // n < m: top n of X_l(2): predecessor's message bits, cancelled
        // from position m-n on by the predecessor's own top
        let mut tops = vec![vec![false; n]; users];
        for p in 0..n {
            for l in 0..users {
                let prev = (l + users - 1) % users;
                let mut bit = inputs[prev].bit(p);
                if p >= m - n {
                    bit ^= tops[prev][p - (m - n)];
                }
                tops[l][p] = bit;
            }
        }
        tops
    }
}

/// Per-user combination coefficients for the n = m branch, as elements of
/// GF(2)[x]/(x^n + x + 1): alternate 1, 0 around the ring, patching the
/// last slot with x when the ring is odd. Consecutive differences are then
/// 1, 1, ..., x + 1, x — all units since x^n + x + 1 is 1 at both x = 0
/// and x = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coef {
    Zero,
    One,
    X,
}

fn coefficients(config: &LdConfig) -> Vec<Coef> {
    let users = config.users;
    let mut g: Vec<Coef> = (0..users)
        .map(|l| if l % 2 == 0 { Coef::One } else { Coef::Zero })
        .collect();
    if users % 2 == 1 {
        g[users - 1] = Coef::X;
    }
    g
}

/// Multiply a coefficient into a bit word, top bit = lowest-degree term.
fn apply(c: Coef, bits: &[bool]) -> LevelWord {
    let len = bits.len();
    match c {
        Coef::Zero => LevelWord::zero(len),
        Coef::One => LevelWord::from_bits(bits.to_vec()),
        Coef::X => {
            // y = x * w mod (x^n + x + 1): y_0 = w_{n-1},
            // y_1 = w_0 + w_{n-1}, y_i = w_{i-1}
            let mut out = vec![false; len];
            out[0] = bits[len - 1];
            if len > 1 {
                out[1] = bits[0] ^ bits[len - 1];
                out[2..len].copy_from_slice(&bits[1..len - 1]);
            }
            LevelWord::from_bits(out)
        }
    }
}

/// The difference G_k + G_{k+1}, with its inverse action.
enum CoefDiff {
    One,
    X,
    XPlusOne,
}

impl CoefDiff {
    fn new(a: Coef, b: Coef) -> CoefDiff {
        match (a, b) {
            (Coef::One, Coef::Zero) | (Coef::Zero, Coef::One) => CoefDiff::One,
            (Coef::X, Coef::Zero) | (Coef::Zero, Coef::X) => CoefDiff::X,
            (Coef::One, Coef::X) | (Coef::X, Coef::One) => CoefDiff::XPlusOne,
            _ => unreachable!("consecutive coefficients are always distinct"),
        }
    }

    fn solve(&self, rhs: &LevelWord) -> Vec<bool> {
        let y = rhs.bits();
        let len = y.len();
        match self {
            CoefDiff::One => y.to_vec(),
            CoefDiff::X => {
                // invert y = x * w: w_{n-1} = y_0, w_0 = y_1 + y_0,
                // w_{i-1} = y_i for i >= 2
                let mut w = vec![false; len];
                w[len - 1] = y[0];
                if len > 1 {
                    w[0] = y[1] ^ y[0];
                    w[1..len - 1].copy_from_slice(&y[2..len]);
                }
                w
            }
            // (x + 1) w = y: words are tiny, solve densely
            CoefDiff::XPlusOne => solve_dense(len, |row, col| xp1_matrix(len, row, col), y),
        }
    }
}

/// Entry (row, col) of the multiply-by-(x+1) matrix over the quotient ring.
fn xp1_matrix(len: usize, row: usize, col: usize) -> bool {
    // multiply-by-x matrix plus identity
    let x = match row {
        0 => col == len - 1,
        1 => col == 0 || (len > 1 && col == len - 1),
        _ => col == row - 1,
    };
    x ^ (row == col)
}

/// Dense GF(2) solve for tiny systems; the matrix is invertible by
/// construction.
fn solve_dense(len: usize, entry: impl Fn(usize, usize) -> bool, rhs: &[bool]) -> Vec<bool> {
    let mut aug: Vec<Vec<bool>> = (0..len)
        .map(|r| {
            let mut row: Vec<bool> = (0..len).map(|c| entry(r, c)).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    for col in 0..len {
        let pivot = (col..len)
            .find(|&r| aug[r][col])
            .expect("coefficient difference is invertible");
        aug.swap(col, pivot);
        for r in 0..len {
            if r != col && aug[r][col] {
                let (head, tail) = if r < col {
                    let (a, b) = aug.split_at_mut(col);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = aug.split_at_mut(r);
                    (&mut b[0], &a[col])
                };
                for c in 0..=len {
                    head[c] ^= tail[c];
                }
            }
        }
    }
    (0..len).map(|r| aug[r][len]).collect()
}
