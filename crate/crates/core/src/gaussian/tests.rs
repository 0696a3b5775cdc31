use super::*;

fn pt(snr: f64, inr: f64, users: u32) -> GaussianPoint {
    GaussianPoint::new(snr, inr, users).unwrap()
}

#[test]
fn bounds_at_powers_of_two() {
    let b = compute_bounds(&pt(255.0, 15.0, 3));
    assert_eq!(b.d, 4.0);
    assert_eq!(b.e, 2.0);
    // frozen from a 60-digit evaluation of ½ log2(271)
    assert!((b.c - 4.041074520676936).abs() < 1e-12);
}

#[test]
fn bounds_vanish_at_zero_power() {
    let b = compute_bounds(&pt(1e-12, 1e-12, 3));
    for v in [b.a, b.b, b.c, b.d, b.e] {
        assert!(v.abs() < 1e-9);
    }
}

#[test]
fn bound_orderings() {
    for (s, i) in [(255.0, 15.0), (4.0, 2.0), (1e6, 3.0), (3.0, 1e6), (2.0_f64.powi(40), 1024.0)] {
        let b = compute_bounds(&pt(s, i, 4));
        assert!(b.a <= b.b + 1e-12);
        assert!(b.c <= b.b + 1e-12);
        assert!(b.d <= b.c + 1e-12);
        assert!(b.c <= b.a + 1e-12);
        assert!(b.e <= b.c + 1e-12);
        // 2B <= log2(6) + 2D in the very-weak region
        if i * i <= s {
            assert!(2.0 * b.b <= 6.0_f64.log2() + 2.0 * b.d + 1e-12);
        }
    }
}

#[test]
fn very_weak_allocation_and_guard() {
    // log+ clamps R1 at inr = 1
    let alloc = allocate_very_weak(&pt(100.0, 1.0, 3)).unwrap();
    assert_eq!(alloc.rates[0], 0.0);

    // guard true: 1023 >= 2 * 9
    let alloc = allocate_very_weak(&pt(1023.0, 3.0, 3)).unwrap();
    assert!(alloc.guarded);
    assert!((alloc.rates[0] - 0.5 * (4.0f64 / 3.0).log2()).abs() < 1e-12);
    // frozen 60-digit r_sym and its published chain floor
    assert!((alloc.r_sym - 3.374421712960621).abs() < 1e-12);
    let (d, e) = (0.5 * 1024f64.log2(), 0.5 * 4f64.log2());
    let chain = (d - e) + e / 3.0 - 1.0 - 3f64.log2() / 6.0;
    assert!(alloc.r_sym >= chain);

    // power factors telescope to exactly one
    let alloc = allocate_very_weak(&pt(64.0, 4.0, 3)).unwrap();
    let total: f64 = alloc.betas.iter().map(|b| b * b).sum();
    assert!((total - 1.0).abs() < 1e-12);

    assert!(matches!(
        allocate_very_weak(&pt(16.0, 8.0, 3)),
        Err(GaussianError::WrongRegime { .. })
    ));
}

#[test]
fn very_weak_constraints() {
    // guard boundary: inr = 2, snr = 8
    for check in check_constraints_very_weak(&pt(8.0, 2.0, 3)) {
        assert!(check.satisfied, "{} violated at the guard boundary", check.id);
    }
    for check in check_constraints_very_weak(&pt(32.0, 4.0, 3)) {
        assert!(check.satisfied, "{} violated", check.id);
    }
    // out of guard: constraints are reported but the point routes to the
    // marginal cases, not to the main certification
    assert!(!guard_holds(RegimeLabel::VeryWeak, &pt(17.0, 4.0, 3)));
}

#[test]
fn weak_allocation() {
    // alpha = 1 edge is out of regime
    assert!(matches!(
        allocate_weak(&pt(64.0, 64.0, 3)),
        Err(GaussianError::WrongRegime { .. })
    ));

    // snr = 2^12, inr = 2^7: frozen 60-digit r_sym; the merged floor costs
    // a full bit plus 1/K (the R1+R3 merge loses a factor 2, the R2 floor
    // another half bit each side)
    let alloc = allocate_weak(&pt(4096.0, 128.0, 3)).unwrap();
    assert!(alloc.guarded);
    assert!((alloc.r_sym - 2.871494432160247).abs() < 1e-12);
    let (d, e) = (0.5 * 4097f64.log2(), 0.5 * 129f64.log2());
    let chain = e + (2.0 * d - 3.0 * e) / 3.0 - 1.0 - 1.0 / 3.0;
    assert!(alloc.r_sym >= chain);

    // power factors telescope for any in-regime point
    let total: f64 = alloc.betas.iter().map(|b| b * b).sum();
    assert!((total - 1.0).abs() < 1e-12);

    for check in check_constraints(&pt(4096.0, 128.0, 3), RegimeLabel::Weak) {
        assert!(check.satisfied, "{} violated", check.id);
    }
}

#[test]
fn moderate_allocation() {
    // inr = snr: R1 = ¼log((2S+1)/3), R2 = ½log(3/2)
    let alloc = allocate_moderate(&pt(64.0, 64.0, 3)).unwrap();
    assert!((alloc.rates[0] - 0.25 * (129.0f64 / 3.0).log2()).abs() < 1e-12);
    assert!((alloc.rates[1] - 0.5 * 1.5f64.log2()).abs() < 1e-12);

    // snr = 2^12, inr = 2^10: frozen 60-digit r_sym and its floor
    let alloc = allocate_moderate(&pt(4096.0, 1024.0, 3)).unwrap();
    assert!((alloc.r_sym - 3.226793086117513).abs() < 1e-12);
    let (d, e) = (0.5 * 4097f64.log2(), 0.5 * 1025f64.log2());
    assert!(alloc.r_sym >= d - e / 2.0 - 0.5);

    for check in check_constraints(&pt(4096.0, 1024.0, 3), RegimeLabel::Moderate) {
        assert!(check.satisfied, "{} violated", check.id);
    }
    // the sum constraint binds with equality by construction
    let checks = check_constraints(&pt(4096.0, 1024.0, 3), RegimeLabel::Moderate);
    let mac3 = checks.iter().find(|c| c.id == "mod-mac-3").unwrap();
    assert!((mac3.lhs - mac3.rhs).abs() < 1e-12);
}

#[test]
fn strong_allocation() {
    // snr = inr = 3: frozen ¼ log2(7)
    let alloc = allocate_strong(&pt(3.0, 3.0, 3)).unwrap();
    assert!((alloc.r_sym - 0.701838730514401).abs() < 1e-12);
    let alloc = allocate_strong(&pt(1.0, 1.0, 3)).unwrap();
    assert!((alloc.r_sym - 0.25 * 3.0f64.log2()).abs() < 1e-12);
    for check in check_constraints(&pt(3.0, 3.0, 3), RegimeLabel::Strong) {
        assert!(check.satisfied, "{} violated", check.id);
    }
}

#[test]
fn very_strong_allocation() {
    // inr exactly snr²: the relayed payload vanishes
    let alloc = allocate_very_strong(&pt(16.0, 256.0, 4)).unwrap();
    assert_eq!(alloc.rates[0], 0.0);

    // snr = 2^4, inr = 2^10, K = 4: frozen 60-digit values
    let alloc = allocate_very_strong(&pt(16.0, 1024.0, 4)).unwrap();
    assert!((alloc.r_sym - 1.416491182125512).abs() < 1e-12);
    let (d, e) = (0.5 * 17f64.log2(), 0.5 * 1025f64.log2());
    let chain = d + (e - 2.0 * d) / 4.0 - (4.0 * 3f64.log2() + 1.0) / 8.0;
    assert!(alloc.r_sym >= chain);
    let total: f64 = alloc.betas.iter().map(|b| b * b).sum();
    assert!((total - 1.0).abs() < 1e-12);

    for check in check_constraints(&pt(16.0, 1024.0, 4), RegimeLabel::VeryStrong) {
        assert!(check.satisfied, "{} violated", check.id);
    }
}

#[test]
fn upper_bounds_by_regime() {
    // strong: (A + C - E)/2
    let p = pt(64.0, 512.0, 3);
    let b = compute_bounds(&p);
    assert!((upper_bound_in(&p, RegimeLabel::Strong) - (b.a + b.c - b.e) / 2.0).abs() < 1e-12);

    // snr = inr: A - E = ½log((1+4s)/(1+s)) <= 1, so the strong gap <= 1/2
    let p = pt(1024.0, 1024.0, 3);
    let b = compute_bounds(&p);
    assert!(b.a - b.e <= 1.0 + 1e-12);

    // very strong: D + (A + C - 2D - E)/K, frozen from 60-digit arithmetic
    let p = pt(16.0, 1024.0, 4);
    assert!((upper_bound_in(&p, RegimeLabel::VeryStrong) - 2.317279325707373).abs() < 1e-12);

    // the full very-weak chain bound is at most the simplified one
    let p = pt(4096.0, 8.0, 4);
    assert!(upper_bound_very_weak_full(&p) <= upper_bound_in(&p, RegimeLabel::VeryWeak) + 1e-12);
}

#[test]
fn gap_reports_by_regime() {
    // guarded very-weak
    let r = gap_report(&pt(2.0_f64.powi(20), 2.0_f64.powi(6), 4)).unwrap();
    assert_eq!(r.regime, RegimeLabel::VeryWeak);
    assert!(r.guarded && r.pass && r.case.is_none());
    assert!(r.gap <= 2.75);
    assert!(r.upper >= r.lower);

    // strong grid slice stays under half a bit
    for e in [4, 10, 20, 40] {
        let s = 2.0_f64.powi(e);
        let r = gap_report(&pt(s, s * 4.0, 5)).unwrap();
        assert_eq!(r.regime, RegimeLabel::Strong);
        assert!(r.pass && r.gap <= 0.5);
    }

    // very strong with snr >= 2: gap at most 2
    let r = gap_report(&pt(16.0, 2.0_f64.powi(10), 4)).unwrap();
    assert_eq!(r.regime, RegimeLabel::VeryStrong);
    assert!(r.pass && r.gap <= 2.0);

    // moderate: at most 5/4
    let r = gap_report(&pt(2.0_f64.powi(12), 2.0_f64.powi(10), 4)).unwrap();
    assert_eq!(r.regime, RegimeLabel::Moderate);
    assert!(r.pass && r.gap <= 1.25);
}

#[test]
fn excluded_cases() {
    // case II: inr >= 2, snr below twice inr²
    let c = excluded_range_case(&pt(20.0, 4.0, 3)).unwrap();
    assert_eq!(c.label, CaseLabel::II);
    assert!(c.pass && c.gap <= 2.0);

    // case III: inr < 2, snr comfortably large
    let c = excluded_range_case(&pt(100.0, 1.5, 3)).unwrap();
    assert_eq!(c.label, CaseLabel::III);
    assert!(c.pass && c.gap <= 3.0);

    // case IV: both marginal; the upper bound alone is under 5/2
    let c = excluded_range_case(&pt(3.0, 1.5, 3)).unwrap();
    assert_eq!(c.label, CaseLabel::IV);
    assert!(c.pass && c.gap <= 2.5);

    // case I defers to the main analysis
    let c = excluded_range_case(&pt(8.0, 2.0, 3)).unwrap();
    assert_eq!(c.label, CaseLabel::I);
    assert!(c.pass);

    // gap_report routes out-of-guard very-weak points through the cases
    let r = gap_report(&pt(17.0, 4.0, 3)).unwrap();
    assert_eq!(r.case, Some(CaseLabel::II));
    assert!(r.pass);
}

#[test]
fn gdof_numeric_matches_curve() {
    let cases = [
        (3.0, 4, 1.25),
        (1.0, 4, 0.5),
        (1.0 / 3.0, 4, 0.75),
        (0.25, 3, 0.75 + 0.25 / 3.0),
    ];
    for (alpha, k, want) in cases {
        let got = gdof_numeric(alpha, k, 40);
        assert!(
            (got - want).abs() <= 0.05,
            "gdof({alpha}, {k}) = {got}, want about {want}"
        );
    }
}

#[test]
fn point_validation() {
    assert!(GaussianPoint::new(-1.0, 2.0, 3).is_err());
    assert!(GaussianPoint::new(2.0, f64::INFINITY, 3).is_err());
    assert!(GaussianPoint::new(2.0, 2.0, 1).is_err());
    assert!(pt(1.0, 5.0, 3).alpha().is_err());
    assert!((pt(1024.0, 32.0, 3).alpha().unwrap() - 0.5).abs() < 1e-12);
    // inr below one clamps to ratio zero
    assert_eq!(pt(1024.0, 0.5, 3).alpha().unwrap(), 0.0);
}

#[test]
fn classify_alpha_half_open() {
    assert_eq!(classify_alpha(0.0), RegimeLabel::VeryWeak);
    assert_eq!(classify_alpha(0.5), RegimeLabel::Weak);
    assert_eq!(classify_alpha(2.0 / 3.0), RegimeLabel::Moderate);
    assert_eq!(classify_alpha(1.0), RegimeLabel::Strong);
    assert_eq!(classify_alpha(2.0), RegimeLabel::VeryStrong);
}
