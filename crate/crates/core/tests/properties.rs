//! Property tests for the channel model, the scheme executors, and the
//! formula layer.

use czic::capacity::{
    c_sym_global_fb, c_sym_ld_fb, gdof_nofb, type1_upper, type2_upper_alpha,
};
use czic::channel::{channel_step, feedback_view, ChannelUse, LdConfig, LevelWord};
use czic::gaussian::{compute_bounds, GaussianPoint};
use czic::schemes::{
    decode_transcript, degenerate_global, run_scheme, verify_decode, SchemeKind,
};
use num_rational::Rational64;
use proptest::prelude::*;

fn arb_config() -> impl Strategy<Value = LdConfig> {
    (2usize..=8, 0usize..=12, 0usize..=12)
        .prop_filter("levels cannot both be zero", |(_, n, m)| n + m > 0)
        .prop_map(|(k, n, m)| LdConfig::new(k, n, m).unwrap())
}

fn arb_inputs(config: LdConfig) -> impl Strategy<Value = Vec<LevelWord>> {
    let len = config.word_length();
    proptest::collection::vec(
        proptest::collection::vec(any::<bool>(), len).prop_map(LevelWord::from_bits),
        config.users,
    )
}

/// Which received positions the scheme's decoder actually reads in block
/// `t` (0-based). Mirrors each decoder's access pattern.
fn consumed(kind: SchemeKind, config: &LdConfig, t: usize, bit: usize) -> bool {
    let (n, m, k) = (config.direct, config.cross, config.users);
    match kind {
        // every position feeds either a payload slice or a cancellation
        SchemeKind::VeryWeak => true,
        // the neighbour's part 1 lands on the silent part 3 and is dropped
        SchemeKind::Weak => !(bit >= n - m && bit < n - m + (2 * m - n)),
        // the neighbour's upper levels are read only in the final block,
        // and there only the circulated middle
        SchemeKind::VeryStrong => {
            bit >= m - n || (t == k - 1 && bit >= n && bit < m - n)
        }
        SchemeKind::GlobalFeedback => unreachable!("not exercised here"),
    }
}

proptest! {
    // the channel is linear over GF(2)
    #[test]
    fn channel_is_linear(
        (config, xs, ys) in arb_config().prop_flat_map(|c| {
            (Just(c), arb_inputs(c), arb_inputs(c))
        })
    ) {
        let sum: Vec<LevelWord> = xs.iter().zip(&ys).map(|(a, b)| a.xor(b)).collect();
        let lhs = channel_step(&sum, &config).unwrap();
        let rhs: Vec<LevelWord> = channel_step(&xs, &config)
            .unwrap()
            .iter()
            .zip(&channel_step(&ys, &config).unwrap())
            .map(|(a, b)| a.xor(b))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    // perturbing one transmitter touches only its own receiver and the
    // ring predecessor
    #[test]
    fn channel_is_local(
        (config, xs, j, flip) in arb_config().prop_flat_map(|c| {
            (Just(c), arb_inputs(c), 0..c.users, 0..c.word_length())
        })
    ) {
        let base = channel_step(&xs, &config).unwrap();
        let mut xs2 = xs.clone();
        let old = xs2[j].bit(flip);
        xs2[j].set_bit(flip, !old);
        let pert = channel_step(&xs2, &config).unwrap();
        let prev = (j + config.users - 1) % config.users;
        for k in 0..config.users {
            if k != j && k != prev {
                prop_assert_eq!(&base[k], &pert[k], "receiver {} moved", k);
            }
        }
    }

    // at n = m both output conventions coincide: Y_k = X_k XOR X_{k+1}
    #[test]
    fn channel_regimes_agree_at_equal_levels(
        (config, xs) in (2usize..=8, 1usize..=12)
            .prop_map(|(k, n)| LdConfig::new(k, n, n).unwrap())
            .prop_flat_map(|c| (Just(c), arb_inputs(c)))
    ) {
        let ys = channel_step(&xs, &config).unwrap();
        for k in 0..config.users {
            let next = config.next_user(k);
            prop_assert_eq!(&ys[k], &xs[k].xor(&xs[next]));
        }
    }

    // the feedback view is causal and reproduces the receiver's words
    #[test]
    fn feedback_view_is_causal(
        (config, uses, user, t) in arb_config().prop_flat_map(|c| {
            (Just(c), 1usize..=6, 0..c.users, 1usize..=7)
        })
    ) {
        let mut transcript = Vec::new();
        for time in 1..=uses {
            let xs: Vec<LevelWord> = (0..config.users)
                .map(|k| {
                    let bits = (0..config.word_length())
                        .map(|i| (k + i + time) % 3 == 0)
                        .collect();
                    LevelWord::from_bits(bits)
                })
                .collect();
            let ys = channel_step(&xs, &config).unwrap();
            transcript.push(ChannelUse { time, inputs: xs, outputs: ys });
        }
        let view = feedback_view(&transcript, user, t);
        prop_assert_eq!(view.len(), (t - 1).min(uses));
        for (i, word) in view.iter().enumerate() {
            prop_assert_eq!(word, &transcript[i].outputs[user]);
        }
    }

    // every in-regime run decodes perfectly and lands exactly on its
    // capacity formula branch
    #[test]
    fn schemes_decode_and_match_formula(config in arb_config(), seed in any::<u64>()) {
        for kind in SchemeKind::ALL {
            if kind == SchemeKind::GlobalFeedback && degenerate_global(&config) {
                continue;
            }
            let Ok(run) = run_scheme(kind, &config, seed) else { continue };
            prop_assert!(run.result.decode_success, "{} failed at {}", kind, config);
            prop_assert!(verify_decode(&run.result, &run.bank));
            if config.direct > 0 {
                let alpha = Rational64::new(config.cross as i64, config.direct as i64);
                let want = match kind {
                    SchemeKind::GlobalFeedback => c_sym_global_fb(alpha),
                    _ => c_sym_ld_fb(alpha, config.users as u32),
                };
                prop_assert_eq!(run.result.normalized_rate, Some(want));
            }
        }
    }

    // every received bit a decoder consumes is load-bearing: flipping it
    // changes that decoder's output (and only that decoder's)
    #[test]
    fn corruption_is_never_silent(
        (config, seed, t_pick, k_pick, b_pick) in arb_config().prop_flat_map(|c| {
            (Just(c), any::<u64>(), any::<usize>(), 0..c.users, any::<usize>())
        })
    ) {
        for kind in [SchemeKind::VeryWeak, SchemeKind::Weak, SchemeKind::VeryStrong] {
            let Ok(run) = run_scheme(kind, &config, seed) else { continue };
            let mut transcript = run.transcript.clone();
            let t = t_pick % transcript.len();
            let len = transcript[t].outputs[k_pick].len();
            if len == 0 {
                continue;
            }
            let b = b_pick % len;
            let old = transcript[t].outputs[k_pick].bit(b);
            transcript[t].outputs[k_pick].set_bit(b, !old);
            let decoded = decode_transcript(kind, &config, &transcript).unwrap();
            if consumed(kind, &config, t, b) {
                prop_assert_ne!(
                    &decoded[k_pick], &run.result.decoded[k_pick],
                    "{} ignored a flipped bit at {} (block {}, level {})",
                    kind, config, t, b
                );
            } else {
                prop_assert_eq!(&decoded[k_pick], &run.result.decoded[k_pick]);
            }
            // other decoders never read this receiver's words
            for (k, words) in decoded.iter().enumerate() {
                if k != k_pick {
                    prop_assert_eq!(words, &run.result.decoded[k]);
                }
            }
        }
    }

    // ordering of the closed forms on random ratios
    #[test]
    fn formula_sandwich(num in 0i64..=256, den in 1i64..=64, users in 2u32..=32) {
        let alpha = Rational64::new(num, den);
        let c = c_sym_ld_fb(alpha, users);
        prop_assert!(gdof_nofb(alpha) <= c);
        prop_assert!(c <= type1_upper(alpha));
        prop_assert!(c <= c_sym_ld_fb(alpha, 2));
        prop_assert!(c_sym_ld_fb(alpha, users + 1) <= c);
        if let Some(t2) = type2_upper_alpha(alpha, users) {
            prop_assert!(c <= t2);
        }
    }

    // Gaussian bound orderings hold for arbitrary positive powers
    #[test]
    fn gaussian_bound_orderings(se in -4.0f64..60.0, ie in -4.0f64..60.0) {
        let point = GaussianPoint::new(se.exp2(), ie.exp2(), 4).unwrap();
        let b = compute_bounds(&point);
        prop_assert!(b.a <= b.b + 1e-9);
        prop_assert!(b.c <= b.b + 1e-9);
        prop_assert!(b.d <= b.c + 1e-9);
        prop_assert!(b.e <= b.c + 1e-9);
        prop_assert!(b.c <= b.a + 1e-9);
        if point.inr * point.inr <= point.snr {
            prop_assert!(2.0 * b.b <= 6.0f64.log2() + 2.0 * b.d + 1e-9);
        }
    }
}
