//! Acceptance suite. One test per criterion; each prints a single
//! pass/fail line (visible with `cargo test -- --nocapture`).

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harbourne::families::{
    build, cross_check, overall_status, CheckStatus, CrossCheckOptions, FamilyName, FamilySpec,
};
use harbourne::harbourne::{
    h_bruteforce, h_constant_general, h_local_expressions, SingularityProfile,
};
use harbourne::incidence::{verify_configuration, verify_design, DesignKind, KummerModel};
use harbourne::lattice::{pullback_mult_n, strict_transform, DivisorClass, SurfaceLattice};
use harbourne::rational::{rat, Rat};
use harbourne::render::to_stable_json;

struct Criterion {
    number: u32,
    name: &'static str,
    started: Instant,
    budget_secs: Option<f64>,
}

impl Criterion {
    fn start(number: u32, name: &'static str, budget_secs: Option<f64>) -> Self {
        Criterion {
            number,
            name,
            started: Instant::now(),
            budget_secs,
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        let within_budget = self.budget_secs.map(|b| elapsed <= b).unwrap_or(true);
        let verdict = if within_budget { "pass" } else { "fail" };
        println!(
            "criterion {} ({}): {} [{elapsed:.2}s]",
            self.number, self.name, verdict
        );
        if let Some(b) = self.budget_secs {
            assert!(
                within_budget,
                "criterion {} exceeded its {b}s budget: {elapsed:.2}s",
                self.number
            );
        }
    }
}

fn report_for(name: FamilyName, parameter: i64) -> harbourne::families::FamilyReport {
    let spec = FamilySpec::new(name, parameter).expect("admissible parameter");
    build(&spec).expect("family builds")
}

fn verified_report(name: FamilyName, parameter: i64) -> harbourne::families::FamilyReport {
    let report = report_for(name, parameter);
    let checks = cross_check(&report, &CrossCheckOptions::default()).expect("within level cap");
    assert_ne!(
        overall_status(&checks),
        CheckStatus::Fail,
        "{name}({parameter}) failed cross-consistency"
    );
    report
}

#[test]
fn criterion_1_design_suite() {
    let c = Criterion::start(1, "design suite", Some(1.0));

    for (kind, expected_per_curve, expected_lambda) in [
        (DesignKind::SixteenSix, 6, 2),
        (DesignKind::SixteenTen, 10, 6),
    ] {
        let model = KummerModel::new(kind);
        let curves = model.curves();
        let points = model.points();
        let params = verify_configuration(&curves, &points, |c, p| model.incident(*c, *p))
            .expect("configuration axioms");
        assert_eq!(params.curves, 16);
        assert_eq!(params.points, 16);
        assert_eq!(params.points_per_curve, expected_per_curve);
        assert_eq!(params.curves_per_point, expected_per_curve);

        let lambda = verify_design(&curves, &points, |c, p| model.incident(*c, *p))
            .expect("design axioms");
        assert_eq!(lambda, expected_lambda);

        // m(n − 1) = λ(a − 1)
        assert_eq!(
            params.curves_per_point * (params.points_per_curve - 1),
            lambda * (params.curves - 1)
        );
    }

    c.finish();
}

#[test]
fn criterion_2_value_regression() {
    let c = Criterion::start(2, "value regression", Some(5.0));

    for name in [FamilyName::Kummer166, FamilyName::Kummer1610] {
        for n in 1..=3 {
            let report = verified_report(name, n);
            assert_eq!(report.h_report.h_local, Some(rat(-4)), "{name}({n})");
            assert_eq!(report.h_report.h_global, rat(-4), "{name}({n})");
        }
    }

    for name in [FamilyName::KummerImage166, FamilyName::KummerImage1610] {
        for n in 2..=4 {
            let report = verified_report(name, n);
            let n4 = (n as i128).pow(4);
            let expected = Rat::new(-4 * n4, n4 - 1);
            assert_eq!(report.h_report.h_local, Some(expected), "{name}({n})");
            assert_eq!(report.h_report.h_global, expected, "{name}({n})");
            if n == 2 {
                assert_eq!(report.h_report.h_global, Rat::new(-64, 15));
            }
        }
    }

    for k in 1..=10 {
        let report = verified_report(FamilyName::GammaK, k);
        assert_eq!(report.h_report.h_local, Some(rat(-4)), "gamma-k({k})");
        assert_eq!(report.h_report.h_global, rat(-4));
    }

    for n in [1, 3, 5] {
        let report = verified_report(FamilyName::TN, n);
        assert_eq!(report.h_report.h_local, Some(rat(-4)), "t-n({n})");
        assert_eq!(report.h_report.h_global, rat(-4));
    }

    let report = verified_report(FamilyName::KummerImageTN, 3);
    assert_eq!(report.h_report.h_local, Some(Rat::new(-81, 20)));
    assert_eq!(report.lattice_total_self_int, rat(16 * 81 - 18));
    assert_eq!(report.lattice_total_self_int, rat(1278));

    let report = verified_report(FamilyName::Genus5Orbit, 1);
    assert_eq!(report.h_report.h_local, Some(rat(-1)));

    let report = verified_report(FamilyName::Genus3Orbit, 1);
    assert_eq!(report.h_report.h_local, Some(rat(-2)));
    let checks = cross_check(&report, &CrossCheckOptions::default()).unwrap();
    assert_eq!(
        overall_status(&checks),
        CheckStatus::Warn,
        "the 28-vs-24 intersection-count warning must be present"
    );
    assert!(checks
        .iter()
        .any(|c| c.status == CheckStatus::Warn && c.detail.contains("28") && c.detail.contains("24")));

    c.finish();
}

#[test]
fn criterion_3_cross_consistency() {
    let c = Criterion::start(3, "cross-consistency", None);

    for name in [FamilyName::Kummer166, FamilyName::Kummer1610] {
        for n in 1..=3 {
            let report = report_for(name, n);
            let checks = cross_check(&report, &CrossCheckOptions::default()).unwrap();
            for required in [
                "per-curve-marked-points",
                "pairwise-overlap-vs-class",
                "per-point-multiplicity",
                "two-torsion-parity",
            ] {
                let check = checks
                    .iter()
                    .find(|c| c.name == required)
                    .unwrap_or_else(|| panic!("{name}({n}) missing check {required}"));
                assert_eq!(
                    check.status,
                    CheckStatus::Pass,
                    "{name}({n}) {required}: {}",
                    check.detail
                );
            }
        }
    }

    c.finish();
}

#[test]
fn criterion_4_oracle_equivalence() {
    let c = Criterion::start(4, "oracle equivalence", Some(30.0));

    let mut rng = ChaCha8Rng::seed_from_u64(0x4841_5242);
    for trial in 0..500 {
        let s = rng.gen_range(1..=8usize);
        let mults: Vec<u32> = (0..s).map(|_| rng.gen_range(2..=9)).collect();
        let csq = rat(rng.gen_range(-20..=200i128));
        let profile = SingularityProfile::new(csq, &mults, false, None).unwrap();

        let closed = h_constant_general(&profile);
        let oracle = h_bruteforce(&profile, 200, 200).unwrap();

        // asymptote convention: the oracle's finite point sets can never go
        // below the closed form, and any value below -1 is attained exactly
        assert!(
            oracle >= closed.h_global,
            "trial {trial}: oracle {oracle} below closed form {} for C²={csq}, mults {mults:?}",
            closed.h_global
        );
        if closed.h_global < rat(-1) {
            assert_eq!(
                oracle, closed.h_global,
                "trial {trial}: C²={csq}, mults {mults:?}"
            );
        }
    }

    c.finish();
}

#[test]
fn criterion_5_lemma_double_computation() {
    let c = Criterion::start(5, "lemma double-computation", None);

    let specs: Vec<(FamilyName, i64)> = vec![
        (FamilyName::Kummer166, 1),
        (FamilyName::Kummer166, 2),
        (FamilyName::Kummer166, 3),
        (FamilyName::Kummer1610, 1),
        (FamilyName::Kummer1610, 2),
        (FamilyName::Kummer1610, 3),
        (FamilyName::KummerImage166, 2),
        (FamilyName::KummerImage166, 3),
        (FamilyName::KummerImage1610, 2),
        (FamilyName::KummerImage1610, 3),
        (FamilyName::GammaK, 1),
        (FamilyName::GammaK, 4),
        (FamilyName::TN, 1),
        (FamilyName::TN, 3),
        (FamilyName::KummerImageTN, 3),
        (FamilyName::Genus5Orbit, 1),
    ];
    let mut with_components = 0;
    for (name, p) in specs {
        let report = report_for(name, p);
        if !report.profile.is_ordinary() || report.profile.component_self_ints().is_none() {
            continue;
        }
        with_components += 1;
        let (primary, alt) = h_local_expressions(&report.profile).unwrap();
        assert_eq!(
            Some(primary),
            alt,
            "{name}({p}): the two local-H expressions disagree"
        );
        assert_eq!(Some(primary), report.h_report.h_local, "{name}({p})");
    }
    assert!(
        with_components >= 10,
        "expected most families to carry ordinary component data, got {with_components}"
    );

    // strict transform agrees with the extended-lattice bilinear form
    let lat = SurfaceLattice::abelian("C0", 2);
    let c0 = DivisorClass::generator(&lat, 0);
    for n in 1..=4i64 {
        let d = pullback_mult_n(&c0, n).unwrap();
        let points: Vec<(String, u32)> = (0..6).map(|i| (format!("p{i}"), 3)).collect();
        let (extended, direct) = strict_transform(&d, &points).unwrap();
        assert_eq!(extended.self_intersection(), direct);
        assert_eq!(direct, rat(2 * (n as i128).pow(4) - 54));
    }

    c.finish();
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_harbourne"))
}

#[test]
fn criterion_6_cli_contract() {
    let c = Criterion::start(6, "cli contract", None);

    let out = cli()
        .args(["table", "kummer-image-16-6", "--n-max", "4", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "table run failed: {out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        to_stable_json(&value),
        text.trim_end(),
        "JSON must round-trip byte-stably"
    );

    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (row, n) in rows.iter().zip([2i64, 3, 4]) {
        assert_eq!(row["parameter"].as_i64(), Some(n));
        let n4 = n.pow(4);
        let g = gcd(4 * n4, n4 - 1);
        assert_eq!(row["h"]["num"].as_i64(), Some(-4 * n4 / g));
        assert_eq!(row["h"]["den"].as_i64(), Some((n4 - 1) / g));
    }

    for bad in [
        vec!["family", "t-n", "--n", "2"],
        vec!["family", "no-such-family"],
        vec!["table", "kummer16-6"],
        vec!["design", "16-7"],
        vec!["hc", "--csq", "x"],
    ] {
        let out = cli().args(&bad).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "{bad:?} should exit 1");
    }

    let out = cli()
        .args(["family", "kummer16-6", "--n", "2"])
        .env("HARBOURNE_TEST_PERTURB", "1")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(2),
        "perturbed incidence must exit 2"
    );
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("cross-consistency"), "stderr: {stderr}");

    c.finish();
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
