//! No network access at all: offline mode must never open a connection,
//! and an unreachable host is a typed error.

mod common;

use std::net::TcpListener;

use common::{corpus_record, routes_for, MockServer};
use modbog_lmfdb::{fetch_form, ClientConfig, LmfdbError};

#[test]
fn offline_never_connects() {
    let server = MockServer::start(routes_for(&corpus_record("73.2.a.c"), 100));
    let cache = tempfile::tempdir().unwrap();
    let cfg = ClientConfig { offline: true, ..server.config(&cache) };
    for label in ["73.2.a.c", "151.2.a.a", "11.2.a.a"] {
        assert!(matches!(fetch_form(label, &cfg), Err(LmfdbError::Offline(_))));
    }
    assert_eq!(server.hits(), 0);
}

#[test]
fn unreachable_host_is_a_network_error() {
    // Bind then drop to get a port with nothing listening.
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let cache = tempfile::tempdir().unwrap();
    let cfg = ClientConfig {
        base_url: format!("http://127.0.0.1:{port}"),
        cache_dir: cache.path().to_path_buf(),
        timeout: std::time::Duration::from_secs(2),
        ..ClientConfig::default()
    };
    assert!(matches!(fetch_form("73.2.a.c", &cfg), Err(LmfdbError::Network(_))));
}

#[test]
fn environment_overrides() {
    // The only test in this binary that touches the environment.
    std::env::set_var("MODBOG_BASE_URL", "http://example.invalid");
    std::env::set_var("MODBOG_CACHE_DIR", "/tmp/modbog-test-cache");
    let cfg = ClientConfig::from_env();
    assert_eq!(cfg.base_url, "http://example.invalid");
    assert_eq!(cfg.cache_dir, std::path::PathBuf::from("/tmp/modbog-test-cache"));
    assert!(!cfg.offline);
}
