//! Closed-form capacity, degrees-of-freedom, and upper-bound formulas for
//! the LD cyclic Z-interference channel, evaluated in exact rationals.
//!
//! Everything here is a pure function of the interference ratio
//! `alpha = m / n` (and the user count where the formula depends on it).
//! Regime boundaries at 1/2, 2/3, 1 and 2 are compared exactly; adjacent
//! branches agree at every boundary, which the tests pin down.

use crate::channel::LdConfig;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Interference ratio m/n. Exact for LD instances; `Infinite` when n = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alpha {
    Finite(Rational64),
    Infinite,
}

impl Alpha {
    pub fn from_levels(direct: usize, cross: usize) -> Alpha {
        if direct == 0 {
            Alpha::Infinite
        } else {
            Alpha::Finite(Rational64::new(cross as i64, direct as i64))
        }
    }

    pub fn as_ratio(&self) -> Option<Rational64> {
        match self {
            Alpha::Finite(r) => Some(*r),
            Alpha::Infinite => None,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(r) => write!(f, "{r}"),
            Alpha::Infinite => write!(f, "inf"),
        }
    }
}

impl LdConfig {
    /// Interference ratio of this instance.
    pub fn alpha(&self) -> Alpha {
        Alpha::from_levels(self.direct, self.cross)
    }
}

/// The five interference regimes. Boundary ratios belong to both adjacent
/// regimes; [`classify_regime`] reports the lower-indexed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegimeLabel {
    VeryWeak,
    Weak,
    Moderate,
    Strong,
    VeryStrong,
}

impl RegimeLabel {
    pub const ALL: [RegimeLabel; 5] = [
        RegimeLabel::VeryWeak,
        RegimeLabel::Weak,
        RegimeLabel::Moderate,
        RegimeLabel::Strong,
        RegimeLabel::VeryStrong,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RegimeLabel::VeryWeak => "very-weak",
            RegimeLabel::Weak => "weak",
            RegimeLabel::Moderate => "moderate",
            RegimeLabel::Strong => "strong",
            RegimeLabel::VeryStrong => "very-strong",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Regime of an interference ratio; boundary values map to the
/// lower-indexed regime (the formulas agree there, so the choice is
/// observationally irrelevant).
pub fn classify_regime(alpha: Alpha) -> RegimeLabel {
    let a = match alpha {
        Alpha::Infinite => return RegimeLabel::VeryStrong,
        Alpha::Finite(a) => a,
    };
    assert!(a >= ratio(0, 1), "negative interference ratio");
    if a <= ratio(1, 2) {
        RegimeLabel::VeryWeak
    } else if a <= ratio(2, 3) {
        RegimeLabel::Weak
    } else if a <= ratio(1, 1) {
        RegimeLabel::Moderate
    } else if a <= ratio(2, 1) {
        RegimeLabel::Strong
    } else {
        RegimeLabel::VeryStrong
    }
}

/// Normalized symmetric feedback capacity of the K-user LD channel.
///
/// Five branches over the interference ratio:
/// `(1-a) + a/K`, `a + (2-3a)/K`, `1 - a/2`, `a/2`, `1 + (a-2)/K`.
pub fn c_sym_ld_fb(alpha: Rational64, users: u32) -> Rational64 {
    let k = ratio(users as i64, 1);
    let one = ratio(1, 1);
    match classify_regime(Alpha::Finite(alpha)) {
        RegimeLabel::VeryWeak => one - alpha + alpha / k,
        RegimeLabel::Weak => alpha + (ratio(2, 1) - ratio(3, 1) * alpha) / k,
        RegimeLabel::Moderate => one - alpha / ratio(2, 1),
        RegimeLabel::Strong => alpha / ratio(2, 1),
        RegimeLabel::VeryStrong => one + (alpha - ratio(2, 1)) / k,
    }
}

/// Per-user feedback degrees of freedom of the K-user Gaussian channel.
/// Branch-for-branch the same expression as [`c_sym_ld_fb`].
pub fn gdof_fb(alpha: Rational64, users: u32) -> Rational64 {
    c_sym_ld_fb(alpha, users)
}

/// Per-user degrees of freedom without feedback: the W-curve
/// `(1-a), a, 1-a/2, a/2, 1`, independent of the user count.
pub fn gdof_nofb(alpha: Rational64) -> Rational64 {
    let one = ratio(1, 1);
    match classify_regime(Alpha::Finite(alpha)) {
        RegimeLabel::VeryWeak => one - alpha,
        RegimeLabel::Weak => alpha,
        RegimeLabel::Moderate => one - alpha / ratio(2, 1),
        RegimeLabel::Strong => alpha / ratio(2, 1),
        RegimeLabel::VeryStrong => one,
    }
}

/// Normalized symmetric capacity with global feedback: the V-curve
/// `max(1 - a/2, a/2)`, independent of the user count.
pub fn c_sym_global_fb(alpha: Rational64) -> Rational64 {
    let half = ratio(1, 2);
    (ratio(1, 1) - half * alpha).max(half * alpha)
}

/// Pairwise (type-I) upper bound on the normalized symmetric feedback
/// capacity: `max(1 - a/2, a/2)` for every user count.
pub fn type1_upper(alpha: Rational64) -> Rational64 {
    c_sym_global_fb(alpha)
}

/// Chain (type-II) upper bound, evaluated in closed form for the two
/// permutation orders that are tight: the forward order for `a <= 2/3`
/// giving `[n + (K-2)(max(0, n-2m) + m) + (n-m)] / nK`, and the reverse
/// order for `a >= 2` giving `[m + (K-2)n] / nK`.
///
/// Returns `None` for mid-regime ratios (the type-I bound governs there)
/// and for n = 0 (no finite normalization).
pub fn type2_upper(config: &LdConfig) -> Option<Rational64> {
    let (k, n, m) = (config.users as i64, config.direct as i64, config.cross as i64);
    if n == 0 {
        return None;
    }
    let norm = n * k;
    if 3 * m <= 2 * n {
        let sum = n + (k - 2) * ((n - 2 * m).max(0) + m) + (n - m);
        Some(ratio(sum, norm))
    } else if m >= 2 * n {
        let sum = m + (k - 2) * n;
        Some(ratio(sum, norm))
    } else {
        None
    }
}

/// [`type2_upper`] as a function of the ratio alone:
/// `max(a, 1-a) + min(a, 2-3a)/K` for `a <= 2/3`, `1 + (a-2)/K` for
/// `a >= 2`, not applicable in between.
pub fn type2_upper_alpha(alpha: Rational64, users: u32) -> Option<Rational64> {
    let k = ratio(users as i64, 1);
    let one = ratio(1, 1);
    if alpha <= ratio(2, 3) {
        let head = alpha.max(one - alpha);
        let tail = alpha.min(ratio(2, 1) - ratio(3, 1) * alpha);
        Some(head + tail / k)
    } else if alpha >= ratio(2, 1) {
        Some(one + (alpha - ratio(2, 1)) / k)
    } else {
        None
    }
}
