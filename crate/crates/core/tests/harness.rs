use std::collections::BTreeSet;
use std::f64::consts::PI;

use shadowgeom::harness::{
    check, checks, default_corpus, extremizer_search, fmt_sig, parse_bodies, run_suite, BodySpec, CheckResult,
    SearchConfig, Status, SuiteConfig,
};
use shadowgeom::quermass::{b_constant, omega};

fn quick() -> SuiteConfig {
    SuiteConfig { jobs: Some(1), ..SuiteConfig::default().with_samples(4000) }
}

fn one(id: &str, body: &str, n: usize, cfg: &SuiteConfig) -> CheckResult {
    let report = run_suite(&[BodySpec::named(body, n)], &[id.to_string()], cfg).unwrap();
    assert_eq!(report.results.len(), 1);
    report.results.into_iter().next().unwrap()
}

#[test]
fn registry_is_complete_and_unique() {
    let all = checks();
    assert_eq!(all.len(), 27);
    let ids: BTreeSet<&str> = all.iter().map(|c| c.spec().id).collect();
    assert_eq!(ids.len(), 27);
    for id in ["GHP", "T-HYPER-1", "ZON-VOL-ID", "CK-IDENT", "BALL-EQ", "FGM", "T-HIGHER-7"] {
        assert_eq!(check(id).unwrap().spec().id, id);
    }
    assert!(all.iter().all(|c| !c.spec().claim.is_empty()));
    assert!(check("T-NOPE").is_err());
}

#[test]
fn cube_minimal_shadow_surface() {
    // smallest shadow of [-1,1]^3 is a 2x2 square; the partial constant is 6
    let r = one("T-HYPER-1", "cube", 3, &quick());
    assert_eq!(r.status, Status::Pass);
    let lhs = r.lhs.unwrap();
    assert!((lhs.value - 16.0).abs() < 1e-6, "{}", lhs.value);
    let rhs = 2.0 * b_constant(3) * 6.0 / (3.0 * omega(3).powf(1.0 / 3.0)) * 24.0;
    assert!((r.rhs.unwrap().value - rhs).abs() < 1e-6 * rhs);
    assert!((rhs - 48.0).abs() < 0.1);
}

#[test]
fn cube_mean_shadow_perimeter() {
    // perimeter of the shadow is 4 sum_i |sin theta_i|, whose mean is pi/4 each
    let r = one("T-HYPER-5", "cube", 3, &SuiteConfig { jobs: Some(1), ..SuiteConfig::default() });
    assert_eq!(r.status, Status::Pass);
    let lhs = r.lhs.unwrap();
    assert!((lhs.value - 3.0 * PI).abs() < 3.0 * lhs.stderr, "{} +- {}", lhs.value, lhs.stderr);
}

#[test]
fn cube_exact_checks() {
    let cfg = quick();
    let m = one("MINPROJ", "cube", 3, &cfg);
    assert_eq!(m.status, Status::Pass);
    assert!((m.lhs.unwrap().value - 4.0).abs() < 1e-6);
    assert_eq!(one("ZON-VOL-ID", "cube", 3, &cfg).status, Status::Pass);
    assert_eq!(one("S-INRADIUS", "cube", 4, &cfg).status, Status::Pass);
    // S = n |K| / r holds with equality for the cube
    let s = one("S-INRADIUS", "cube", 3, &cfg);
    assert!((s.ratio.unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn class_gates() {
    let cfg = quick();
    for id in ["T-HYPER-2", "L-ZON-1", "T-ZON-2", "T-HIGHER-2"] {
        let r = one(id, "simplex", 3, &cfg);
        assert_eq!(r.status, Status::Skipped, "{id}");
        assert!(r.detail.contains_key("reason"), "{id}: {:?}", r.detail);
    }
    assert_eq!(one("BALL-EQ", "cube", 3, &cfg).status, Status::Skipped);
    assert_eq!(one("T-HYPER-2", "cube", 3, &cfg).status, Status::Pass);
}

#[test]
fn bad_body_is_an_error_row() {
    let spec = BodySpec::vrep("flat", vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]]);
    let report = run_suite(&[spec], &["GHP".to_string()], &quick()).unwrap();
    assert_eq!(report.results[0].status, Status::Error);
    assert!(report.any_fail() || report.count(Status::Error) == 1);
}

#[test]
fn report_is_thread_count_independent() {
    let bodies = vec![BodySpec::named("cube", 3), BodySpec::named("random-hull(12,1)", 3)];
    let ids: Vec<String> = ["GHP", "ALEK", "T-QUER-2", "FGM"].iter().map(|s| s.to_string()).collect();
    let a = run_suite(&bodies, &ids, &quick()).unwrap();
    let b = run_suite(&bodies, &ids, &SuiteConfig { jobs: Some(3), ..quick() }).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.results.len(), 8);
    assert!(a.to_csv().starts_with("id,body,n,lhs,lhs_err,rhs,rhs_err,ratio,status\n"));
}

#[test]
fn corpus_and_body_files() {
    let c = default_corpus(4);
    assert_eq!(c.len(), 14);
    assert!(c.iter().all(|b| b.dim == 4));
    let one = parse_bodies(r#"{"dim":3,"type":"named","data":"cube"}"#).unwrap();
    assert_eq!(one.len(), 1);
    let many = parse_bodies(r#"[{"dim":3,"type":"named","data":"cube"},{"dim":4,"type":"named","data":"cross"}]"#).unwrap();
    assert_eq!(many.len(), 2);
    assert_eq!(many[1].build().unwrap().poly.vertices().len(), 8);
    assert!(parse_bodies("{").is_err());
}

#[test]
fn significant_digits() {
    assert_eq!(fmt_sig(64.0), "64");
    assert_eq!(fmt_sig(2.0 * PI), "6.28318531");
    assert_eq!(fmt_sig(-1.0 / 3.0), "-0.333333333");
    assert_eq!(fmt_sig(f64::NAN), "NaN");
}

#[test]
fn search_improves_monotonically() {
    let cfg = SearchConfig { budget: 30, samples: 400, ..SearchConfig::new("GHP", "perturbed-cube", 3) };
    let t = extremizer_search(&cfg).unwrap();
    assert!(t.maximize);
    assert!(t.evaluations <= 30);
    assert!(t.improvements.windows(2).all(|w| w[1].ratio > w[0].ratio));
    assert_eq!(t.best.ratio, t.improvements.last().unwrap().ratio);
    // the inequality holds, so no body can exceed ratio 1
    assert!(t.best.ratio <= 1.0 && t.best.ratio > 0.3);
    assert_eq!(extremizer_search(&cfg).unwrap(), t);

    let low = SearchConfig { budget: 20, samples: 400, ..SearchConfig::new("T-LOWER-MIN", "random-hull", 3) };
    let t = extremizer_search(&low).unwrap();
    assert!(!t.maximize);
    assert!(t.improvements.windows(2).all(|w| w[1].ratio < w[0].ratio));
    assert!(t.best.ratio >= 1.0);
}
