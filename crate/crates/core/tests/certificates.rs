use std::path::PathBuf;

use strength_core::strengthcert::{
    certify_n32_lower, certify_n32_upper_sample, certify_n33, certify_small_r, recheck, Certificate, N33Options,
    DEFAULT_SEED, UPPER_SAMPLES,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/v1").join(format!("{name}.json"))
}

fn fresh(name: &str) -> Certificate {
    match name {
        "n32-lower" => certify_n32_lower(5, None),
        "n32-upper-sample" => certify_n32_upper_sample(DEFAULT_SEED, UPPER_SAMPLES),
        "n33" => certify_n33(&N33Options::default()),
        "small-r" => certify_small_r(DEFAULT_SEED),
        _ => unreachable!(),
    }
    .unwrap()
}

const NAMES: [&str; 4] = ["n32-lower", "n32-upper-sample", "n33", "small-r"];

/// Set `UPDATE_FIXTURES=1` to regenerate.
#[test]
fn golden_certificates() {
    for name in NAMES {
        let cert = fresh(name);
        assert!(cert.passed, "{name}: {:?}", cert.first_failure());
        let path = fixture(name);
        if std::env::var_os("UPDATE_FIXTURES").is_some() {
            std::fs::write(&path, cert.to_json() + "\n").unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path).unwrap();
        assert_eq!(golden.trim_end(), cert.to_json(), "{name} drifted from its fixture");
    }
}

#[test]
fn fixtures_recheck() {
    for name in NAMES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let report = recheck(&text).unwrap();
        assert!(report.passed, "{name}: {:?}", report.mismatches);
    }
}

#[test]
fn single_bit_flips_are_rejected() {
    let text = std::fs::read_to_string(fixture("small-r")).unwrap();
    let bytes = text.as_bytes();
    // a spread of positions: structure, keys, numbers, strings
    let step = bytes.len() / 40;
    for pos in (1..bytes.len() - 1).step_by(step.max(1)) {
        for bit in [0, 3] {
            let mut b = bytes.to_vec();
            b[pos] ^= 1 << bit;
            let Ok(t) = String::from_utf8(b) else { continue };
            let ok = matches!(recheck(&t), Ok(r) if r.passed);
            assert!(!ok, "flip at byte {pos} bit {bit} went unnoticed");
        }
    }
}

#[test]
fn n33_variants() {
    let cert = certify_n33(&N33Options {
        strengthened: true,
        extra_classes: vec![strength_core::strengthcert::IdealClass::Custom(vec![(1, 1), (1, 3)])],
        exhaustive: true,
    })
    .unwrap();
    assert!(cert.passed);
    assert!(recheck(&cert.to_json()).unwrap().passed);
}
