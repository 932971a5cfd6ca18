mod common;

use std::fs;

use common::{corpus_record, payloads, routes_for, MockServer};
use modbog_lmfdb::{fetch_form, fetch_raw, ClientConfig, LmfdbError};

#[test]
fn fetch_matches_fixture_and_caches() {
    let rec = corpus_record("73.2.a.c");
    let server = MockServer::start(routes_for(&rec, 100));
    let cache = tempfile::tempdir().unwrap();
    let cfg = server.config(&cache);
    let got = fetch_form("73.2.a.c", &cfg).unwrap();
    assert_eq!(got, rec);
    assert_eq!((got.level, got.weight, got.degree, got.field_disc), (73, 2, 2, Some(13)));
    assert_eq!(server.hits(), 2);

    // The cache holds the bodies exactly as served.
    let raw = fetch_raw("73.2.a.c", &cfg).unwrap();
    let (nf, hk) = payloads(&rec, 100);
    assert_eq!((raw.newform, raw.hecke), (nf, hk));
    assert!(cfg.cache_path("73.2.a.c").exists());

    let offline = ClientConfig { offline: true, ..cfg };
    assert_eq!(fetch_form("73.2.a.c", &offline).unwrap(), rec);
    assert_eq!(server.hits(), 2);
}

#[test]
fn cubic_hecke_field() {
    let rec = corpus_record("151.2.a.a");
    let server = MockServer::start(routes_for(&rec, 100));
    let cache = tempfile::tempdir().unwrap();
    let got = fetch_form("151.2.a.a", &server.config(&cache)).unwrap();
    assert_eq!(got.degree, 3);
    assert_eq!(got, rec);
}

#[test]
fn rational_form_from_traces() {
    let rec = corpus_record("66.8.a.a");
    let (nf, _) = payloads(&rec, 100);
    let rows: Vec<_> = (1..=100u64).map(|n| serde_json::json!({"n": n, "trace_an": rec.an[&n][0]})).collect();
    let server = MockServer::start(vec![
        ("mf_newforms/".into(), 200, nf),
        ("mf_hecke_nf/".into(), 200, r#"{"data": []}"#.into()),
        ("mf_hecke_traces/?hecke_orbit_code=123456789".into(), 200, serde_json::json!({"data": rows}).to_string()),
    ]);
    let cache = tempfile::tempdir().unwrap();
    let got = fetch_form("66.8.a.a", &server.config(&cache)).unwrap();
    assert_eq!(got.an, rec.an);
    assert_eq!(server.hits(), 3);
}

#[test]
fn malformed_label_makes_no_request() {
    let server = MockServer::start(vec![]);
    let cache = tempfile::tempdir().unwrap();
    for bad in ["73", "73.2.a", "x.2.a.c", "73.2.A.c", "0.2.a.a"] {
        assert!(matches!(fetch_form(bad, &server.config(&cache)), Err(LmfdbError::InvalidLabel(_))), "{bad}");
    }
    assert_eq!(server.hits(), 0);
}

#[test]
fn not_found() {
    let server = MockServer::start(vec![("mf_newforms/".into(), 200, r#"{"data": []}"#.into())]);
    let cache = tempfile::tempdir().unwrap();
    assert!(matches!(fetch_form("11.2.a.z", &server.config(&cache)), Err(LmfdbError::NotFound(_))));
    let server = MockServer::start(vec![]);
    assert!(matches!(fetch_form("11.2.a.z", &server.config(&cache)), Err(LmfdbError::NotFound(_))));
    assert!(fs::read_dir(cache.path()).unwrap().next().is_none());
}

#[test]
fn format_drift_is_reported() {
    let rec = corpus_record("73.2.a.c");
    let (nf, hk) = payloads(&rec, 100);
    let cyclo = hk.replace("\"hecke_ring_cyclotomic_generator\":0", "\"hecke_ring_cyclotomic_generator\":7");
    assert_ne!(cyclo, hk);
    let server = MockServer::start(vec![("mf_newforms/".into(), 200, nf.clone()), ("mf_hecke_nf/".into(), 200, cyclo)]);
    let cache = tempfile::tempdir().unwrap();
    assert!(matches!(fetch_form("73.2.a.c", &server.config(&cache)), Err(LmfdbError::SchemaMismatch(_))));
    // Nothing is cached for a payload that does not normalize.
    assert!(!server.config(&cache).cache_path("73.2.a.c").exists());

    let no_an = hk.replace("\"an\":", "\"coefficients\":");
    let server = MockServer::start(vec![("mf_newforms/".into(), 200, nf), ("mf_hecke_nf/".into(), 200, no_an)]);
    assert!(matches!(fetch_form("73.2.a.c", &server.config(&cache)), Err(LmfdbError::SchemaMismatch(_))));
}

#[test]
fn too_few_coefficients() {
    let rec = corpus_record("73.2.a.c");
    let server = MockServer::start(routes_for(&rec, 50));
    let cache = tempfile::tempdir().unwrap();
    let err = fetch_form("73.2.a.c", &server.config(&cache)).unwrap_err();
    assert!(matches!(err, LmfdbError::InsufficientCoefficients { have: 50, need: 100 }), "{err}");
    let relaxed = ClientConfig { min_coefficients: 50, ..server.config(&cache) };
    assert_eq!(fetch_form("73.2.a.c", &relaxed).unwrap().coefficient_bound(), 50);
}

#[test]
fn server_errors() {
    let server = MockServer::start(vec![("mf_newforms/".into(), 500, "oops".into())]);
    let cache = tempfile::tempdir().unwrap();
    assert!(matches!(fetch_form("73.2.a.c", &server.config(&cache)), Err(LmfdbError::Network(_))));
}

#[test]
fn concurrent_fetches_agree() {
    let rec = corpus_record("73.2.a.c");
    let server = MockServer::start(routes_for(&rec, 100));
    let cache = tempfile::tempdir().unwrap();
    let cfg = server.config(&cache);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| fetch_form("73.2.a.c", &cfg))).collect();
        for h in handles {
            assert_eq!(h.join().unwrap().unwrap(), rec);
        }
    });
}
