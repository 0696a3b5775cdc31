//! The Gaussian bound, rate, and constraint expressions, written once over
//! the [`Real`] abstraction. Logs are base 2 throughout, so every quantity
//! is in bits per channel use.

use super::real::{half_log2, half_log2_pos, half_log2_ratio, Real};
use crate::capacity::RegimeLabel;

pub(crate) struct Bounds<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
}

/// The five bound expressions:
/// A = ½log(1 + S + I + 2√(SI)), B = ½log(1 + S + 2I + I² + 2√(SI)),
/// C = ½log(1 + S + I), D = ½log(1 + S), E = ½log(1 + I).
pub(crate) fn bounds<T: Real>(s: &T, i: &T) -> Bounds<T> {
    let one = T::of(1.0);
    let two = T::of(2.0);
    let cross = two.mul(&s.mul(i).sqrt());
    Bounds {
        a: half_log2(&one.add(s).add(i).add(&cross)),
        b: half_log2(&one.add(s).add(&two.mul(i)).add(&i.mul(i)).add(&cross)),
        c: half_log2(&one.add(s).add(i)),
        d: half_log2(&one.add(s)),
        e: half_log2(&one.add(i)),
    }
}

/// Sub-message rates for the very-weak scheme:
/// R1 = ½log⁺((I+1)/3), R2 = ½log⁺((S/I+1)/(2I+1)), R3 = ½log⁺((I+1)/2).
pub(crate) fn rates_very_weak<T: Real>(s: &T, i: &T) -> [T; 3] {
    let one = T::of(1.0);
    let two = T::of(2.0);
    [
        half_log2_pos(&i.add(&one), &T::of(3.0)),
        half_log2_pos(&s.div(i).add(&one), &two.mul(i).add(&one)),
        half_log2_pos(&i.add(&one), &two),
    ]
}

/// Sub-message rates for the weak scheme:
/// R1 = ½log⁺((I+1)/(2S/I+1)), R2 = ½log⁺((1+S²)/(1+2I³)),
/// R3 = ½log⁺((S/I+2)/2).
pub(crate) fn rates_weak<T: Real>(s: &T, i: &T) -> [T; 3] {
    let one = T::of(1.0);
    let two = T::of(2.0);
    [
        half_log2_pos(&i.add(&one), &two.mul(&s.div(i)).add(&one)),
        half_log2_pos(
            &one.add(&s.mul(s)),
            &one.add(&two.mul(&i.mul(i).mul(i))),
        ),
        half_log2_pos(&s.div(i).add(&two), &two),
    ]
}

/// Common/private rates for the moderate scheme:
/// R1 = ¼log⁺((S+I+1)/(S/I+2)) capped at the two per-user bounds of the
/// common-message MAC, R2 = ½log⁺((S/I+2)/2).
///
/// The cap matters only in a thin slice above ratio 2/3, where
/// (S+I+1)(S/I+2) exceeds (I+S/I+1)² and the uncapped quarter-log point
/// falls outside the MAC region; the cap shrinks R1 by O(1/sqrt(I)) bits
/// there, which the regime's gap budget absorbs.
pub(crate) fn rates_moderate<T: Real>(s: &T, i: &T) -> [T; 2] {
    let one = T::of(1.0);
    let two = T::of(2.0);
    let num = s.add(i).add(&one);
    let den = s.div(i).add(&two);
    let mut r1 = if den.lt(&num) {
        half_log2_ratio(&num, &den).mul(&T::of(0.5))
    } else {
        T::of(0.0)
    };
    for cap in [
        half_log2_pos(&s.add(&two), &den),
        half_log2_pos(&i.add(&s.div(i)).add(&one), &den),
    ] {
        if cap.lt(&r1) {
            r1 = cap;
        }
    }
    [r1, half_log2_pos(&s.div(i).add(&two), &two)]
}

/// Low/high rates for the very-strong scheme:
/// R1 = ½log⁺((I/S²+1)/2), R2 = ½log⁺((S+1)/3).
pub(crate) fn rates_very_strong<T: Real>(s: &T, i: &T) -> [T; 2] {
    let one = T::of(1.0);
    [
        half_log2_pos(&i.div(&s.mul(s)).add(&one), &T::of(2.0)),
        half_log2_pos(&s.add(&one), &T::of(3.0)),
    ]
}

/// Achievable symmetric rate of the regime's scheme, bits/user/use.
pub(crate) fn r_sym<T: Real>(regime: RegimeLabel, s: &T, i: &T, users: u32) -> T {
    let k = T::of(users as f64);
    match regime {
        RegimeLabel::VeryWeak => {
            // (R1 + K R2 + K R3) / K
            let [r1, r2, r3] = rates_very_weak(s, i);
            r1.div(&k).add(&r2).add(&r3)
        }
        RegimeLabel::Weak => {
            // (K R1 + R2 + K R3) / K
            let [r1, r2, r3] = rates_weak(s, i);
            r1.add(&r2.div(&k)).add(&r3)
        }
        RegimeLabel::Moderate => {
            let [r1, r2] = rates_moderate(s, i);
            r1.add(&r2)
        }
        // single-block MAC at C/2
        RegimeLabel::Strong => bounds(s, i).c.mul(&T::of(0.5)),
        RegimeLabel::VeryStrong => {
            // (R1 + K R2) / K
            let [r1, r2] = rates_very_strong(s, i);
            r1.div(&k).add(&r2)
        }
    }
}

/// Per-user upper bound for the regime. The very-weak branch uses the
/// simplified form (B-E) + E/K; the weak branch keeps the full chain
/// (B-E) + (A+C+E-2B)/K; moderate and strong share (A+C-E)/2; very strong
/// uses D + (A+C-2D-E)/K.
pub(crate) fn upper<T: Real>(regime: RegimeLabel, s: &T, i: &T, users: u32) -> T {
    let k = T::of(users as f64);
    let two = T::of(2.0);
    let bs = bounds(s, i);
    match regime {
        RegimeLabel::VeryWeak => bs.b.sub(&bs.e).add(&bs.e.div(&k)),
        RegimeLabel::Weak => {
            let tail = bs.a.add(&bs.c).add(&bs.e).sub(&two.mul(&bs.b));
            bs.b.sub(&bs.e).add(&tail.div(&k))
        }
        RegimeLabel::Moderate | RegimeLabel::Strong => {
            bs.a.add(&bs.c).sub(&bs.e).div(&two)
        }
        RegimeLabel::VeryStrong => {
            let tail = bs.a.add(&bs.c).sub(&two.mul(&bs.d)).sub(&bs.e);
            bs.d.add(&tail.div(&k))
        }
    }
}

/// The tighter very-weak chain bound (B-E) + (A+C+E-2B)/K.
pub(crate) fn upper_very_weak_full<T: Real>(s: &T, i: &T, users: u32) -> T {
    let k = T::of(users as f64);
    let bs = bounds(s, i);
    let tail = bs.a.add(&bs.c).add(&bs.e).sub(&T::of(2.0).mul(&bs.b));
    bs.b.sub(&bs.e).add(&tail.div(&k))
}

/// Decodability constraints of a regime as `(id, lhs, rhs)` triples, each
/// meaning `lhs <= rhs`. The very-weak list ends with the algebraic slack
/// (S - I²) + (S - S/I) + I + 2 >= 0 that underwrites its second entry.
pub(crate) fn constraints<T: Real>(
    regime: RegimeLabel,
    s: &T,
    i: &T,
) -> Vec<(&'static str, T, T)> {
    let one = T::of(1.0);
    let two = T::of(2.0);
    match regime {
        RegimeLabel::VeryWeak => {
            let [r1, r2, r3] = rates_very_weak(s, i);
            let slack = s
                .sub(&i.mul(i))
                .add(&s.sub(&s.div(i)))
                .add(i)
                .add(&two);
            vec![
                ("vw-1", r1.clone(), half_log2_ratio(&i.add(&one), &two)),
                (
                    "vw-2",
                    r1,
                    half_log2_ratio(&s.add(i).add(&one), &s.div(i).add(i).add(&one)),
                ),
                (
                    "vw-3",
                    r2,
                    half_log2_ratio(&s.div(i).add(i).add(&one), &two.mul(i).add(&one)),
                ),
                ("vw-4", r3, half_log2_ratio(&i.add(&two), &two)),
                ("vw-identity", T::of(0.0), slack),
            ]
        }
        RegimeLabel::Weak => {
            let [r1, r2, r3] = rates_weak(s, i);
            let q = s.div(i);
            let q2 = s.mul(s).div(&i.mul(i));
            vec![
                ("w-enc-1", r1.clone(), half_log2_ratio(&i.add(&one), &q.add(&one))),
                ("w-enc-2", r2.clone(), half_log2_ratio(&q.add(&one), &two)),
                (
                    "w-rx-1",
                    r1.clone(),
                    half_log2_ratio(&s.add(i).add(&one), &q2.add(i).add(&one)),
                ),
                (
                    "w-rx-2",
                    r2,
                    half_log2_ratio(&q2.add(i).add(&one), &q.add(i).add(&one)),
                ),
                (
                    "w-rx-3",
                    r1,
                    half_log2_ratio(&q.add(i).add(&one), &two.mul(&q).add(&one)),
                ),
                ("w-delay", r3, half_log2_ratio(&q.add(&two), &two)),
            ]
        }
        RegimeLabel::Moderate => {
            let [r1, _] = rates_moderate(s, i);
            let q = s.div(i);
            vec![
                (
                    "mod-mac-1",
                    r1.clone(),
                    half_log2_ratio(&s.add(&two), &q.add(&two)),
                ),
                (
                    "mod-mac-2",
                    r1.clone(),
                    half_log2_ratio(&i.add(&q).add(&one), &q.add(&two)),
                ),
                (
                    "mod-mac-3",
                    two.mul(&r1),
                    half_log2_ratio(&s.add(i).add(&one), &q.add(&two)),
                ),
            ]
        }
        RegimeLabel::Strong => {
            let bs = bounds(s, i);
            let r = bs.c.mul(&T::of(0.5));
            vec![
                ("str-mac-1", r.clone(), bs.d),
                ("str-mac-2", r.clone(), bs.e),
                ("str-mac-3", two.mul(&r), bs.c),
            ]
        }
        RegimeLabel::VeryStrong => {
            let [r1, r2] = rates_very_strong(s, i);
            let q = i.div(s);
            vec![
                (
                    "vs-enc-1",
                    r2.clone(),
                    half_log2_ratio(&i.add(&one), &q.add(&one)),
                ),
                ("vs-enc-2", r1.clone(), half_log2(&one.add(&q))),
                (
                    "vs-rx-1",
                    r2.clone(),
                    half_log2_ratio(&i.add(s).add(&one), &q.add(s).add(&one)),
                ),
                (
                    "vs-rx-2",
                    r1,
                    half_log2_ratio(&q.add(s).add(&one), &s.add(&one)),
                ),
                ("vs-rx-3", r2, half_log2_ratio(&s.add(&one), &two)),
            ]
        }
    }
}

/// Lower bound used for an out-of-guard very-weak point, per its marginal
/// case: case II keeps the scheme rate (R2 clamps to zero on its own),
/// case III claims only R2, case IV claims nothing.
pub(crate) fn excluded_lower<T: Real>(case: u8, s: &T, i: &T, users: u32) -> T {
    match case {
        2 => r_sym(RegimeLabel::VeryWeak, s, i, users),
        3 => {
            let [_, r2, _] = rates_very_weak(s, i);
            r2
        }
        4 => T::of(0.0),
        _ => unreachable!("case I points are in-guard"),
    }
}
