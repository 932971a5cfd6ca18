#![allow(dead_code)]

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use modbog_core::modforms::{Basis, ModFormRecord};
use modbog_lmfdb::{load_fixture, ClientConfig};
use serde_json::{json, Value};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_record(label: &str) -> ModFormRecord {
    load_fixture(corpus_dir().join(format!("{label}.json"))).unwrap().record
}

/// Serves canned bodies keyed by a substring of the request path; counts
/// connections.
pub struct MockServer {
    pub base_url: String,
    pub hits: Arc<AtomicUsize>,
}

impl MockServer {
    pub fn start(routes: Vec<(String, u16, String)>) -> MockServer {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base_url = format!("http://{}", listener.local_addr().unwrap());
        let hits = Arc::new(AtomicUsize::new(0));
        let counter = hits.clone();
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { continue };
                counter.fetch_add(1, Ordering::SeqCst);
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                loop {
                    let mut h = String::new();
                    if reader.read_line(&mut h).unwrap() == 0 || h == "\r\n" {
                        break;
                    }
                }
                let path = line.split_whitespace().nth(1).unwrap_or("").to_string();
                let (status, body) = routes
                    .iter()
                    .find(|(k, _, _)| path.contains(k.as_str()))
                    .map(|(_, s, b)| (*s, b.clone()))
                    .unwrap_or((404, "{}".to_string()));
                let resp = format!(
                    "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
                let _ = stream.write_all(resp.as_bytes());
            }
        });
        MockServer { base_url, hits }
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::SeqCst)
    }

    pub fn config(&self, cache: &tempfile::TempDir) -> ClientConfig {
        ClientConfig {
            base_url: self.base_url.clone(),
            cache_dir: cache.path().to_path_buf(),
            ..ClientConfig::default()
        }
    }
}

/// Upstream-shaped payloads reconstructed from a corpus record.
pub fn payloads(rec: &ModFormRecord, n_max: u64) -> (String, String) {
    let newform = json!({"data": [{
        "label": rec.label,
        "level": rec.level,
        "weight": rec.weight,
        "dim": rec.degree,
        "field_poly": rec.field_poly.iter().map(|&c| c).collect::<Vec<_>>(),
        "field_disc": rec.field_disc.map(|d| d),
        "hecke_ring_index": rec.hecke_ring_index,
        "hecke_orbit_code": 123456789u64,
    }]});
    let (nums, dens, power) = match &rec.basis {
        Basis::Power => (Value::Null, Value::Null, true),
        Basis::Explicit { numerators, denominators } => (
            json!(numerators.iter().map(|v| v.iter().map(|&c| c).collect::<Vec<_>>()).collect::<Vec<_>>()),
            json!(denominators.iter().map(|&c| c).collect::<Vec<_>>()),
            false,
        ),
    };
    let an: Vec<Vec<i64>> = (1..=n_max).map(|n| rec.an[&n].iter().map(|&c| c).collect()).collect();
    let hecke = json!({"data": [{
        "label": rec.label,
        "hecke_ring_numerators": nums,
        "hecke_ring_denominators": dens,
        "hecke_ring_power_basis": power,
        "hecke_ring_cyclotomic_generator": 0,
        "an": an,
    }]});
    (newform.to_string(), hecke.to_string())
}

pub fn routes_for(rec: &ModFormRecord, n_max: u64) -> Vec<(String, u16, String)> {
    let (nf, hk) = payloads(rec, n_max);
    vec![(format!("mf_newforms/?label={}", rec.label), 200, nf), (format!("mf_hecke_nf/?label={}", rec.label), 200, hk)]
}

pub fn labels() -> HashMap<&'static str, u64> {
    HashMap::from([
        ("73.2.a.c", 2),
        ("167.2.a.a", 2),
        ("383.2.a.a", 2),
        ("151.2.a.a", 3),
        ("186.4.a.a", 1),
        ("210.4.a.e", 1),
        ("1265.4.a.c", 1),
        ("390.6.a.c", 1),
        ("66.8.a.a", 1),
    ])
}
