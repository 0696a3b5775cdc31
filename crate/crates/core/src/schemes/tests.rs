use super::*;
use crate::capacity::{c_sym_global_fb, c_sym_ld_fb};
use num_rational::Rational64;

fn cfg(k: usize, n: usize, m: usize) -> LdConfig {
    LdConfig::new(k, n, m).unwrap()
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn very_weak_k4_n3_m1_carries_nine_bits() {
    let run = run_very_weak(&cfg(4, 3, 1), 7).unwrap();
    assert_eq!(run.result.bits_per_user, 9);
    assert_eq!(run.result.blocks, 4);
    assert_eq!(run.result.rate_per_user, r(9, 4));
    assert_eq!(run.result.normalized_rate, Some(r(3, 4)));
    assert!(run.result.decode_success);
    assert!(verify_decode(&run.result, &run.bank));
}

#[test]
fn very_weak_interference_free_runs_at_full_rate() {
    let run = run_very_weak(&cfg(3, 2, 0), 1).unwrap();
    assert_eq!(run.result.bits_per_user, 6);
    assert_eq!(run.result.blocks, 3);
    assert_eq!(run.result.normalized_rate, Some(r(1, 1)));
    assert!(run.result.decode_success);
}

#[test]
fn very_weak_k5_n4_m2_matches_formula() {
    let run = run_very_weak(&cfg(5, 4, 2), 99).unwrap();
    assert_eq!(run.result.bits_per_user, 12);
    assert_eq!(run.result.normalized_rate, Some(r(3, 5)));
    assert_eq!(run.result.normalized_rate, Some(c_sym_ld_fb(r(1, 2), 5)));
    assert!(run.result.decode_success);
}

#[test]
fn very_weak_rejects_out_of_regime() {
    assert!(matches!(
        run_very_weak(&cfg(4, 3, 2), 0),
        Err(SchemeError::WrongRegime { scheme: SchemeKind::VeryWeak, .. })
    ));
}

#[test]
fn weak_k3_n7_m4_carries_fourteen_bits() {
    let run = run_weak(&cfg(3, 7, 4), 11).unwrap();
    assert_eq!(run.result.bits_per_user, 14);
    assert_eq!(run.result.blocks, 3);
    assert_eq!(run.result.normalized_rate, Some(r(2, 3)));
    assert!(run.result.decode_success);
}

#[test]
fn weak_k4_n2_m1_matches_formula() {
    let run = run_weak(&cfg(4, 2, 1), 5).unwrap();
    assert_eq!(run.result.bits_per_user, 5);
    assert_eq!(run.result.normalized_rate, Some(r(5, 8)));
    assert_eq!(run.result.normalized_rate, Some(c_sym_ld_fb(r(1, 2), 4)));
    assert!(run.result.decode_success);
}

#[test]
fn weak_boundary_two_thirds_has_empty_relay_payload() {
    let run = run_weak(&cfg(3, 3, 2), 3).unwrap();
    assert_eq!(run.result.bits_per_user, 6);
    assert_eq!(run.result.normalized_rate, Some(r(2, 3)));
    assert!(run.result.decode_success);
}

#[test]
fn weak_rejects_out_of_regime() {
    assert!(run_weak(&cfg(3, 3, 1), 0).is_err());
    assert!(run_weak(&cfg(3, 4, 3), 0).is_err());
}

#[test]
fn very_strong_k4_n1_m3_carries_five_bits() {
    let run = run_very_strong(&cfg(4, 1, 3), 7).unwrap();
    assert_eq!(run.result.bits_per_user, 5);
    assert_eq!(run.result.blocks, 4);
    assert_eq!(run.result.rate_per_user, r(5, 4));
    assert_eq!(run.result.normalized_rate, Some(r(5, 4)));
    assert!(run.result.decode_success);
}

#[test]
fn very_strong_boundary_alpha_two_gains_nothing() {
    let run = run_very_strong(&cfg(3, 2, 4), 2).unwrap();
    assert_eq!(run.result.bits_per_user, 6);
    assert_eq!(run.result.normalized_rate, Some(r(1, 1)));
    assert!(run.result.decode_success);
}

#[test]
fn very_strong_k5_n1_m4_matches_formula() {
    let run = run_very_strong(&cfg(5, 1, 4), 13).unwrap();
    assert_eq!(run.result.bits_per_user, 7);
    assert_eq!(run.result.normalized_rate, Some(r(7, 5)));
    assert_eq!(run.result.normalized_rate, Some(c_sym_ld_fb(r(4, 1), 5)));
    assert!(run.result.decode_success);
}

#[test]
fn very_strong_no_direct_link_relays_everything() {
    let run = run_very_strong(&cfg(4, 0, 3), 21).unwrap();
    assert_eq!(run.result.bits_per_user, 3);
    assert_eq!(run.result.normalized_rate, None);
    assert!(run.result.decode_success);
}

#[test]
fn very_strong_rejects_out_of_regime() {
    assert!(run_very_strong(&cfg(4, 2, 3), 0).is_err());
}

#[test]
fn very_strong_k10_n1_m3_matches_curve_row() {
    let run = run_very_strong(&cfg(10, 1, 3), 4).unwrap();
    assert_eq!(run.result.bits_per_user, 11);
    assert_eq!(run.result.normalized_rate, Some(r(11, 10)));
    assert!(run.result.decode_success);
}

#[test]
fn decode_is_perfect_across_a_thousand_seeds() {
    let config = cfg(4, 3, 1);
    for seed in 0..1000 {
        let run = run_very_weak(&config, seed).unwrap();
        assert!(verify_decode(&run.result, &run.bank), "seed {seed}");
    }
}

#[test]
fn global_k3_n3_m1_rate_five_halves() {
    let run = run_global_fb(&cfg(3, 3, 1), 7).unwrap();
    assert_eq!(run.result.bits_per_user, 5);
    assert_eq!(run.result.blocks, 2);
    assert_eq!(run.result.rate_per_user, r(5, 2));
    assert_eq!(run.result.normalized_rate, Some(r(5, 6)));
    assert!(run.result.decode_success);
}

#[test]
fn global_k3_n1_m3_rate_three_halves() {
    let run = run_global_fb(&cfg(3, 1, 3), 7).unwrap();
    assert_eq!(run.result.bits_per_user, 3);
    assert_eq!(run.result.rate_per_user, r(3, 2));
    assert_eq!(run.result.normalized_rate, Some(r(3, 2)));
    assert!(run.result.decode_success);
}

#[test]
fn global_equal_levels_bottom_of_v_curve() {
    let run = run_global_fb(&cfg(4, 2, 2), 9).unwrap();
    assert_eq!(run.result.bits_per_user, 2);
    assert_eq!(run.result.normalized_rate, Some(r(1, 2)));
    assert!(run.result.decode_success);
}

#[test]
fn global_equal_levels_odd_ring() {
    // width >= 2 works on odd rings through the x-coefficient patch
    for k in [3usize, 5, 7] {
        for n in [2usize, 3, 5] {
            let run = run_global_fb(&cfg(k, n, n), 17).unwrap();
            assert_eq!(run.result.bits_per_user, n);
            assert!(run.result.decode_success, "K={k} n=m={n}");
        }
    }
    // single-level odd ring has no two-block scheme
    assert!(matches!(
        run_global_fb(&cfg(3, 1, 1), 0),
        Err(SchemeError::DegenerateGlobal)
    ));
    assert!(run_global_fb(&cfg(4, 1, 1), 0).is_ok());
}

#[test]
fn global_matches_v_curve_over_small_grid() {
    for k in 2..=6 {
        for n in 0..=6 {
            for m in 0..=6 {
                let Ok(config) = LdConfig::new(k, n, m) else { continue };
                if degenerate_global(&config) {
                    continue;
                }
                let run = run_global_fb(&config, 23).unwrap();
                assert!(run.result.decode_success, "decode failed at {config}");
                if n > 0 {
                    let alpha = r(m as i64, n as i64);
                    assert_eq!(
                        run.result.normalized_rate,
                        Some(c_sym_global_fb(alpha)),
                        "rate mismatch at {config}"
                    );
                }
            }
        }
    }
}

#[test]
fn message_bank_is_reproducible() {
    let a = MessageBank::generate(4, 64, 42);
    let b = MessageBank::generate(4, 64, 42);
    let c = MessageBank::generate(4, 64, 43);
    assert_eq!(a, b);
    assert_ne!(a, c);
    // users draw from distinct streams
    assert_ne!(a.user(0), a.user(1));
}

#[test]
fn corrupting_the_transcript_is_detected() {
    let config = cfg(4, 3, 1);
    let run = run_very_weak(&config, 7).unwrap();
    for (t, u) in run.transcript.iter().enumerate() {
        for k in 0..config.users {
            for i in 0..u.outputs[k].len() {
                let mut tampered = run.transcript.clone();
                let flipped = !tampered[t].outputs[k].bit(i);
                tampered[t].outputs[k].set_bit(i, flipped);
                let decoded = decode_transcript(SchemeKind::VeryWeak, &config, &tampered).unwrap();
                let result = SchemeResult { decoded, ..run.result.clone() };
                assert!(
                    !verify_decode(&result, &run.bank),
                    "flip at block {t}, user {k}, level {i} went unnoticed"
                );
            }
        }
    }
}

#[test]
fn transcript_words_are_causal_functions_of_messages() {
    // same seed, same run, twice: determinism of the whole pipeline
    let config = cfg(5, 4, 2);
    let a = run_very_weak(&config, 31).unwrap();
    let b = run_very_weak(&config, 31).unwrap();
    assert_eq!(a, b);
}

#[test]
fn silence_constraints_hold() {
    // very strong: bottom n levels never carry energy
    let run = run_very_strong(&cfg(4, 2, 5), 3).unwrap();
    for u in &run.transcript {
        for x in &u.inputs {
            for i in 3..5 {
                assert!(!x.bit(i));
            }
        }
    }
    // weak: third part (positions [n-m, m)) never carries energy
    let run = run_weak(&cfg(3, 7, 4), 3).unwrap();
    for u in &run.transcript {
        for x in &u.inputs {
            for i in 3..4 {
                assert!(!x.bit(i));
            }
        }
    }
}

#[test]
fn trace_json_is_complete() {
    let run = run_very_weak(&cfg(4, 3, 1), 7).unwrap();
    let v = trace_json(&run);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(v["decoded"].as_array().unwrap().len(), 4);
    assert_eq!(v["bits_per_user"], 9);
    assert_eq!(v["decode_success"], true);
}
