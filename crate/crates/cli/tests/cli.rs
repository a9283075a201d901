use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pretzel(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pretzel"))
        .args(args)
        .env("APOLY_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn charvar_lists_one_conic_for_the_smallest_knot() {
    let dir = tempfile::tempdir().unwrap();
    let out = pretzel(&["charvar", "--k1", "0", "--k2", "0", "--k3", "1", "--json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let labels: Vec<&str> = v["components"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    // (k1+1)(k2+1)k3 = 1
    assert_eq!(labels.iter().filter(|l| l.starts_with("X2")).count(), 1);
    assert!(labels.contains(&"X3"));
    assert_eq!(v["knot"]["k3"], 1);
}

#[test]
fn oversized_knot_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let out = pretzel(&["apoly", "--k1", "3", "--k2", "3", "--k3", "3"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["charvar", "--k1", "0"][..],
        &["charvar", "--k1", "0", "--k2", "0", "--k3", "0"],
        &["charvar", "--k1", "0", "--k2", "0", "--k3", "1", "--bogus"],
        &["frobnicate"],
        &["apoly", "--k1", "0", "--k2", "0", "--k3", "1", "--order", "s1,s2,lambda"],
    ] {
        assert_eq!(pretzel(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sample_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sample", "--k1", "1", "--k2", "0", "--k3", "1", "--seed", "7", "--count", "6", "--json"];
    let a = pretzel(&args, dir.path());
    let b = pretzel(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["samples"].as_array().unwrap().len(), 6);
    for s in v["samples"].as_array().unwrap() {
        assert!(s["residuals"]["equation"].as_f64().unwrap() < 1e-8);
        assert!(s["membership"].as_array().unwrap().iter().any(|m| m == "X3"));
    }
}

#[test]
fn apoly_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["apoly", "--k1", "0", "--k2", "0", "--k3", "1", "--json"];
    let first = pretzel(&args, &cache);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let v = json(&first);
    for key in ["knot", "order", "apoly", "apoly_text", "steps", "verification"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verification"]["n_samples"], 20);
    assert!(v["verification"]["max_scaled_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["verification"]["unsupported_factors"].is_boolean());
    assert!(std::fs::read_dir(&cache).unwrap().count() >= 1);
    // served from the cache the second time, with the same bytes
    assert_eq!(pretzel(&args, &cache).stdout, first.stdout);

    let apoly_file = dir.path().join("apoly.json");
    std::fs::write(&apoly_file, &first.stdout).unwrap();
    let own = pretzel(&["sample", "--k1", "0", "--k2", "0", "--k3", "1", "--seed", "3", "--json"], &cache);
    let own_file = dir.path().join("own.json");
    std::fs::write(&own_file, &own.stdout).unwrap();
    let ok = pretzel(&["verify", "--apoly", apoly_file.to_str().unwrap(), "--samples", own_file.to_str().unwrap()], &cache);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    let other = pretzel(&["sample", "--k1", "1", "--k2", "1", "--k3", "1", "--count", "5", "--json"], &cache);
    let other_file = dir.path().join("other.json");
    std::fs::write(&other_file, &other.stdout).unwrap();
    let bad = pretzel(&["verify", "--apoly", apoly_file.to_str().unwrap(), "--samples", other_file.to_str().unwrap(), "--json"], &cache);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["report"]["passed"], 0);

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{").unwrap();
    let malformed = pretzel(&["verify", "--apoly", junk.to_str().unwrap(), "--samples", own_file.to_str().unwrap()], &cache);
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = pretzel(&["selftest", "--json"], dir.path());
    let v = json(&out);
    let failing: Vec<&Value> = v.as_array().unwrap().iter().filter(|s| s["pass"] != true).collect();
    assert!(failing.is_empty(), "{failing:?}");
    assert_eq!(out.status.code(), Some(0));
}
