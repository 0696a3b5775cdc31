//! End-to-end verification harness: reference scheme runs, exhaustive
//! scheme/formula agreement, bound orderings, Gaussian gap certification,
//! and output determinism, each at a pinned tolerance with one verdict per
//! criterion. The CLI's `verify-all` and the acceptance suite both drive
//! this.

use crate::capacity::{
    c_sym_global_fb, c_sym_ld_fb, gdof_fb, gdof_nofb, type1_upper, type2_upper, Alpha,
    RegimeLabel,
};
use crate::channel::LdConfig;
use crate::gaussian::{
    check_constraints, gdof_numeric, guard_holds, CaseLabel, GaussianPoint,
};
use crate::schemes::{
    applicable_schemes, decode_transcript, degenerate_global, run_global_fb, run_scheme,
    run_very_strong, run_very_weak, run_weak, verify_decode, SchemeResult,
};
use crate::sweep::{
    gap_grid, gdof_curve_rows, is_asserted, summarize, write_gap_reports, write_gdof_curve,
    GapGridSpec, GdofCurveSpec, OutputFormat,
};
use num_rational::Rational64;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:2} {:<44} {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name,
            self.detail,
            self.elapsed,
        )
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn run<F: FnOnce() -> Result<String, String>>(
    index: usize,
    name: &'static str,
    f: F,
) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { index, name, passed, detail, elapsed: start.elapsed() }
}

/// Run every criterion. `quick` shrinks the grids (for a fast smoke run);
/// `inject_fault` flips one transcript bit inside the scheme-agreement
/// sweep, which must turn that criterion red (harness self-test).
pub fn run_all(quick: bool, inject_fault: bool) -> Vec<CriterionResult> {
    (1..=11).map(|i| run_one(i, quick, inject_fault)).collect()
}

/// Run a single criterion by index (1-based).
pub fn run_one(index: usize, quick: bool, inject_fault: bool) -> CriterionResult {
    match index {
        1 => run(1, "very-weak reference run (K=4, n=3, m=1)", very_weak_reference),
        2 => run(2, "weak reference run (K=3, n=7, m=4)", weak_reference),
        3 => run(3, "very-strong reference run (K=4, n=1, m=3)", very_strong_reference),
        4 => run(4, "global-feedback reference runs", global_reference),
        5 => run(5, "scheme/formula agreement over the LD grid", move || {
            scheme_formula_agreement(quick, inject_fault)
        }),
        6 => run(6, "LD bound sandwich and continuity", bound_sandwich),
        7 => run(7, "Gaussian constant-gap certification", move || gaussian_gaps(quick)),
        8 => run(8, "marginal-parameter cases", move || excluded_cases(quick)),
        9 => run(9, "degrees-of-freedom convergence", gdof_convergence),
        10 => run(10, "decodability constraints on the guarded grid", move || {
            constraint_verification(quick)
        }),
        11 => run(11, "byte-identical sweep outputs", determinism),
        _ => panic!("criterion index out of range: {index}"),
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn very_weak_reference() -> Result<String, String> {
    let cfg = LdConfig::new(4, 3, 1).unwrap();
    let t0 = Instant::now();
    let user_run = run_very_weak(&cfg, 7).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    let res = &user_run.result;
    check(res.bits_per_user == 9, || format!("bits {}", res.bits_per_user))?;
    check(res.blocks == 4, || format!("blocks {}", res.blocks))?;
    check(res.normalized_rate == Some(r(3, 4)), || {
        format!("rate {:?}", res.normalized_rate)
    })?;
    check(res.decode_success, || "decode failed".into())?;
    check(elapsed < Duration::from_millis(1), || format!("took {elapsed:.2?}"))?;
    Ok(format!("9 bits/user over 4 uses, rate 3/4, in {elapsed:.2?}"))
}

fn weak_reference() -> Result<String, String> {
    let cfg = LdConfig::new(3, 7, 4).unwrap();
    let user_run = run_weak(&cfg, 7).map_err(|e| e.to_string())?;
    let res = &user_run.result;
    check(res.bits_per_user == 14, || format!("bits {}", res.bits_per_user))?;
    check(res.blocks == 3, || format!("blocks {}", res.blocks))?;
    check(res.normalized_rate == Some(r(2, 3)), || {
        format!("rate {:?}", res.normalized_rate)
    })?;
    check(res.decode_success, || "decode failed".into())?;
    Ok("14 bits/user over 3 uses, rate 2/3".into())
}

fn very_strong_reference() -> Result<String, String> {
    let cfg = LdConfig::new(4, 1, 3).unwrap();
    let user_run = run_very_strong(&cfg, 7).map_err(|e| e.to_string())?;
    let res = &user_run.result;
    check(res.bits_per_user == 5, || format!("bits {}", res.bits_per_user))?;
    check(res.blocks == 4, || format!("blocks {}", res.blocks))?;
    check(res.rate_per_user == r(5, 4), || format!("rate {}", res.rate_per_user))?;
    check(res.decode_success, || "decode failed".into())?;
    Ok("5 bits/user over 4 uses, rate 5/4".into())
}

fn global_reference() -> Result<String, String> {
    let a = run_global_fb(&LdConfig::new(3, 3, 1).unwrap(), 7).map_err(|e| e.to_string())?;
    check(a.result.blocks == 2 && a.result.rate_per_user == r(5, 2), || {
        format!("(n=3, m=1): rate {}", a.result.rate_per_user)
    })?;
    check(a.result.decode_success, || "(n=3, m=1) decode failed".into())?;
    let b = run_global_fb(&LdConfig::new(3, 1, 3).unwrap(), 7).map_err(|e| e.to_string())?;
    check(b.result.blocks == 2 && b.result.rate_per_user == r(3, 2), || {
        format!("(n=1, m=3): rate {}", b.result.rate_per_user)
    })?;
    check(b.result.decode_success, || "(n=1, m=3) decode failed".into())?;
    Ok("rates 5/2 and 3/2 over 2 uses".into())
}

fn scheme_formula_agreement(quick: bool, inject_fault: bool) -> Result<String, String> {
    let t0 = Instant::now();
    let seeds: Vec<u64> = if quick { (0..10).collect() } else { (0..100).collect() };
    let mut runs = 0usize;
    let mut faulted = inject_fault;
    for users in 2..=8usize {
        for n in 0..=12usize {
            for m in 0..=12usize {
                let Ok(cfg) = LdConfig::new(users, n, m) else { continue };
                for kind in applicable_schemes(&cfg) {
                    for &seed in &seeds {
                        let mut scheme_run =
                            run_scheme(kind, &cfg, seed).map_err(|e| e.to_string())?;
                        if faulted {
                            // test-only corruption hook: flip one received
                            // bit and re-decode; the bottom level of the
                            // final block is read by every decoder
                            let mut t = scheme_run.transcript.clone();
                            let last = t.len() - 1;
                            let level = t[last].outputs[0].len() - 1;
                            let flipped = !t[last].outputs[0].bit(level);
                            t[last].outputs[0].set_bit(level, flipped);
                            let decoded = decode_transcript(kind, &cfg, &t)
                                .map_err(|e| e.to_string())?;
                            scheme_run.result = SchemeResult {
                                decode_success: (0..cfg.users)
                                    .all(|k| decoded[k] == scheme_run.bank.user(k)),
                                decoded,
                                ..scheme_run.result
                            };
                            faulted = false;
                        }
                        let res = &scheme_run.result;
                        check(res.decode_success, || {
                            format!("{kind} decode failed at {cfg} seed {seed}")
                        })?;
                        check(verify_decode(res, &scheme_run.bank), || {
                            format!("{kind} trace mismatch at {cfg} seed {seed}")
                        })?;
                        if n > 0 {
                            let alpha = r(m as i64, n as i64);
                            let want = c_sym_ld_fb(alpha, users as u32);
                            check(res.normalized_rate == Some(want), || {
                                format!(
                                    "{kind} rate {:?} != {want} at {cfg}",
                                    res.normalized_rate
                                )
                            })?;
                        } else {
                            // no finite normalization; the payload itself
                            // is pinned: m bits over K uses
                            check(res.rate_per_user == r(m as i64, users as i64), || {
                                format!("{kind} rate {} at {cfg}", res.rate_per_user)
                            })?;
                        }
                        runs += 1;
                    }
                }
                // global feedback runs on every config and must sit on the
                // V-curve (n = m = 1 with odd K has no two-block scheme)
                if !degenerate_global(&cfg) {
                    for &seed in seeds.iter().take(if quick { 2 } else { 10 }) {
                        let g = run_global_fb(&cfg, seed).map_err(|e| e.to_string())?;
                        check(g.result.decode_success, || {
                            format!("global decode failed at {cfg} seed {seed}")
                        })?;
                        if n > 0 {
                            let alpha = r(m as i64, n as i64);
                            check(
                                g.result.normalized_rate == Some(c_sym_global_fb(alpha)),
                                || format!("global rate mismatch at {cfg}"),
                            )?;
                        }
                        runs += 1;
                    }
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:.2?}"))?;
    Ok(format!("{runs} runs, all decode-perfect and on-formula, in {elapsed:.2?}"))
}

fn bound_sandwich() -> Result<String, String> {
    // rational grid of step 1/48 over [0, 4]
    for step in 0..=192i64 {
        let alpha = r(step, 48);
        let nofb = gdof_nofb(alpha);
        let t1 = type1_upper(alpha);
        for users in 2..=16u32 {
            let c = c_sym_ld_fb(alpha, users);
            check(nofb <= c, || format!("no-feedback curve above capacity at {alpha}"))?;
            check(c <= t1, || format!("capacity above pairwise bound at {alpha}"))?;
            check(c <= c_sym_ld_fb(alpha, 2), || {
                format!("two-user curve not dominant at {alpha}, K={users}")
            })?;
            if users < 16 {
                check(c_sym_ld_fb(alpha, users + 1) <= c, || {
                    format!("not monotone in K at {alpha}")
                })?;
            }
            // the K-dependence is exactly a 1/K correction toward the
            // no-feedback curve
            let correction = (c - nofb) * r(users as i64, 1);
            let expected = match crate::capacity::classify_regime(Alpha::Finite(alpha)) {
                RegimeLabel::VeryWeak => alpha,
                RegimeLabel::Weak => r(2, 1) - r(3, 1) * alpha,
                RegimeLabel::Moderate | RegimeLabel::Strong => r(0, 1),
                RegimeLabel::VeryStrong => alpha - r(2, 1),
            };
            check(correction == expected, || format!("1/K structure broken at {alpha}"))?;
            if alpha >= r(2, 3) && alpha <= r(2, 1) {
                check(c == t1, || format!("feedback gain present at {alpha}"))?;
            }
            // type-II bound where applicable (denominator 48 keeps the
            // level counts integral: alpha = step/48 with n = 48)
            let cfg = LdConfig::new(users as usize, 48, step as usize).unwrap();
            if let Some(t2) = type2_upper(&cfg) {
                check(c <= t2, || format!("capacity above chain bound at {alpha}"))?;
            }
        }
    }
    // adjacent branches agree at every regime boundary
    for users in 2..=64u32 {
        for (alpha, left, right) in [
            (r(1, 2), r(1, 2) + r(1, 2) / r(users as i64, 1), r(1, 2) + r(1, 2) / r(users as i64, 1)),
            (r(2, 3), r(2, 3), r(2, 3)),
            (r(1, 1), r(1, 2), r(1, 2)),
            (r(2, 1), r(1, 1), r(1, 1)),
        ] {
            let c = c_sym_ld_fb(alpha, users);
            check(c == left && c == right, || {
                format!("branch mismatch at {alpha}, K={users}")
            })?;
        }
    }
    Ok("193-point grid, K in 2..=16, all orderings exact".into())
}

fn gap_spec(quick: bool) -> GapGridSpec {
    if quick {
        GapGridSpec::quick()
    } else {
        GapGridSpec::standard()
    }
}

fn gaussian_gaps(quick: bool) -> Result<String, String> {
    let t0 = Instant::now();
    let reports = gap_grid(&gap_spec(quick));
    let summary = summarize(&reports);
    if let Some(bad) = reports.iter().find(|r| is_asserted(r) && !r.pass) {
        return Err(format!(
            "gap {:.6} above {:.2} at snr={}, inr={}, K={}",
            bad.gap, bad.regime_constant, bad.point.snr, bad.point.inr, bad.point.users
        ));
    }
    let elapsed = t0.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:.2?}"))?;
    let gaps: Vec<String> = summary
        .max_gap
        .iter()
        .map(|(reg, gap)| format!("{reg} {gap:.3}"))
        .collect();
    Ok(format!(
        "{} points asserted, max gaps: {}, in {elapsed:.2?}",
        summary.asserted,
        gaps.join(", ")
    ))
}

fn excluded_cases(quick: bool) -> Result<String, String> {
    let reports = gap_grid(&gap_spec(quick));
    let summary = summarize(&reports);
    for label in [CaseLabel::II, CaseLabel::III, CaseLabel::IV] {
        let idx = match label {
            CaseLabel::II => 0,
            CaseLabel::III => 1,
            _ => 2,
        };
        check(summary.case_counts[idx] > 0, || {
            format!("no case-{label:?} points on the grid")
        })?;
    }
    if let Some(bad) = reports.iter().find(|r| r.case.is_some() && !r.pass) {
        return Err(format!(
            "case {:?} bound missed at snr={}, inr={}",
            bad.case, bad.point.snr, bad.point.inr
        ));
    }
    Ok(format!(
        "case counts II/III/IV = {}/{}/{}, all within bounds",
        summary.case_counts[0], summary.case_counts[1], summary.case_counts[2]
    ))
}

fn gdof_convergence() -> Result<String, String> {
    let alphas = [r(1, 4), r(1, 3), r(7, 12), r(3, 4), r(1, 1), r(3, 2), r(5, 2), r(3, 1)];
    let mut worst = 0.0f64;
    for alpha in alphas {
        let af = *alpha.numer() as f64 / *alpha.denom() as f64;
        for users in [3u32, 4, 10] {
            let want = gdof_fb(alpha, users);
            let wf = *want.numer() as f64 / *want.denom() as f64;
            let got = gdof_numeric(af, users, 40);
            let err = (got - wf).abs();
            worst = worst.max(err);
            check(err <= 0.05, || {
                format!("estimate {got:.4} vs curve {wf:.4} at alpha={alpha}, K={users}")
            })?;
        }
    }
    Ok(format!("24 points, worst deviation {worst:.4} <= 0.05"))
}

fn constraint_verification(quick: bool) -> Result<String, String> {
    let spec = gap_spec(quick);
    let mut checked = 0usize;
    for &e in &spec.exponents {
        let snr = (e as f64).exp2();
        let f_max = (3 * e).min(120);
        for f in 0..=f_max {
            let inr = (f as f64).exp2();
            for &users in &spec.users {
                let point = GaussianPoint::new(snr, inr, users).unwrap();
                let alpha = point.alpha().unwrap();
                let regime = crate::gaussian::classify_alpha(alpha);
                if !guard_holds(regime, &point) {
                    continue;
                }
                for c in check_constraints(&point, regime) {
                    check(c.satisfied, || {
                        format!(
                            "{} violated at snr=2^{e}, inr=2^{f}, K={users}: {} > {}",
                            c.id, c.lhs, c.rhs
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} inequalities hold"))
}

fn determinism() -> Result<String, String> {
    let rows = gdof_curve_rows(&GdofCurveSpec::default());
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_gdof_curve(&rows, OutputFormat::Csv, &mut a).map_err(|e| e.to_string())?;
    write_gdof_curve(&rows, OutputFormat::Csv, &mut b).map_err(|e| e.to_string())?;
    check(a == b, || "curve output differs between runs".into())?;

    let spec = GapGridSpec::quick();
    let mut c = Vec::new();
    let mut d = Vec::new();
    write_gap_reports(&gap_grid(&spec), OutputFormat::Csv, &mut c).map_err(|e| e.to_string())?;
    write_gap_reports(&gap_grid(&spec), OutputFormat::Csv, &mut d).map_err(|e| e.to_string())?;
    check(c == d, || "gap output differs between runs".into())?;
    Ok(format!("{} + {} bytes, byte-identical across runs", a.len(), c.len()))
}
