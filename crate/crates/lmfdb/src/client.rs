use std::env;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::time::Duration;

use modbog_core::modforms::{parse_label, ModFormRecord};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::fixture::{FixtureFile, Provenance};
use crate::normalize::{normalize, rows, RawResponses};
use crate::LmfdbError;

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";

/// URL templates. `{base}`, `{label}` and `{code}` (the Hecke orbit code)
/// are substituted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Routes {
    pub newform: String,
    pub hecke: String,
    pub traces: String,
}

impl Default for Routes {
    fn default() -> Self {
        Routes {
            newform: "{base}/api/mf_newforms/?label={label}&_format=json".into(),
            hecke: "{base}/api/mf_hecke_nf/?label={label}&_format=json".into(),
            traces: "{base}/api/mf_hecke_traces/?hecke_orbit_code={code}&_format=json&_sort=n&_fields=n,trace_an"
                .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClientConfig {
    pub base_url: String,
    pub timeout: Duration,
    pub cache_dir: PathBuf,
    /// Never touch the network; only the cache is consulted.
    pub offline: bool,
    /// Every `a_n` with `n` up to this bound must be present.
    pub min_coefficients: u64,
    pub routes: Routes,
}

fn default_cache_dir() -> PathBuf {
    if let Some(x) = env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(x).join("modbog");
    }
    match env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("modbog"),
        None => PathBuf::from(".modbog-cache"),
    }
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            base_url: DEFAULT_BASE_URL.into(),
            timeout: Duration::from_secs(30),
            cache_dir: default_cache_dir(),
            offline: false,
            min_coefficients: 100,
            routes: Routes::default(),
        }
    }
}

impl ClientConfig {
    /// Defaults with `MODBOG_BASE_URL` and `MODBOG_CACHE_DIR` applied.
    pub fn from_env() -> Self {
        let mut cfg = ClientConfig::default();
        if let Ok(url) = env::var("MODBOG_BASE_URL") {
            cfg.base_url = url;
        }
        if let Some(dir) = env::var_os("MODBOG_CACHE_DIR") {
            cfg.cache_dir = dir.into();
        }
        cfg
    }

    fn url(&self, template: &str, label: &str, code: &str) -> String {
        template
            .replace("{base}", self.base_url.trim_end_matches('/'))
            .replace("{label}", label)
            .replace("{code}", code)
    }

    pub fn cache_path(&self, label: &str) -> PathBuf {
        self.cache_dir.join(format!("{label}.json"))
    }
}

fn get(agent: &ureq::Agent, url: &str, label: &str) -> Result<String, LmfdbError> {
    let mut resp = agent.get(url).call().map_err(|e| LmfdbError::Network(format!("{url}: {e}")))?;
    match resp.status().as_u16() {
        200..=299 => {}
        404 => return Err(LmfdbError::NotFound(label.to_string())),
        s => return Err(LmfdbError::Network(format!("{url}: HTTP {s}"))),
    }
    resp.body_mut().read_to_string().map_err(|e| LmfdbError::Network(format!("{url}: {e}")))
}

fn download(label: &str, cfg: &ClientConfig) -> Result<RawResponses, LmfdbError> {
    let agent: ureq::Agent =
        ureq::Agent::config_builder().timeout_global(Some(cfg.timeout)).http_status_as_error(false).build().into();
    let newform = get(&agent, &cfg.url(&cfg.routes.newform, label, ""), label)?;
    let nf = rows(&newform)?;
    let Some(row) = nf.first() else {
        return Err(LmfdbError::NotFound(label.to_string()));
    };
    let hecke = get(&agent, &cfg.url(&cfg.routes.hecke, label, ""), label)?;
    let traces = if rows(&hecke)?.is_empty() && row.get("dim").and_then(Value::as_u64) == Some(1) {
        let code = row.get("hecke_orbit_code").map(Value::to_string).unwrap_or_default();
        Some(get(&agent, &cfg.url(&cfg.routes.traces, label, &code), label)?)
    } else {
        None
    };
    Ok(RawResponses { newform, hecke, traces })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LmfdbError + '_ {
    move |source| LmfdbError::Io { path: path.display().to_string(), source }
}

fn read_cache(path: &Path) -> Result<Option<RawResponses>, LmfdbError> {
    match fs::read_to_string(path) {
        Ok(s) => serde_json::from_str(&s).map(Some).map_err(|e| LmfdbError::Parse(format!("{}: {e}", path.display()))),
        Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
        Err(e) => Err(io_err(path)(e)),
    }
}

/// Identical content may be written any number of times; different content
/// for an existing entry is refused.
fn write_cache(path: &Path, label: &str, raw: &RawResponses) -> Result<(), LmfdbError> {
    if let Some(existing) = read_cache(path)? {
        return if &existing == raw { Ok(()) } else { Err(LmfdbError::CacheConflict(label.to_string())) };
    }
    let dir = path.parent().expect("cache path has a directory");
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let tmp = dir.join(format!(".{label}.{}.tmp", std::process::id()));
    let body = serde_json::to_string_pretty(raw).expect("serializes");
    fs::write(&tmp, body).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn check(rec: ModFormRecord, cfg: &ClientConfig) -> Result<ModFormRecord, LmfdbError> {
    rec.validate().map_err(|e| LmfdbError::InvariantViolation(e.to_string()))?;
    let have = rec.coefficient_bound();
    if have < cfg.min_coefficients {
        return Err(LmfdbError::InsufficientCoefficients { have, need: cfg.min_coefficients });
    }
    Ok(rec)
}

/// Cache first, then the network unless `offline` is set.
pub fn fetch_raw(label: &str, cfg: &ClientConfig) -> Result<RawResponses, LmfdbError> {
    if parse_label(label).is_none() {
        return Err(LmfdbError::InvalidLabel(label.to_string()));
    }
    let path = cfg.cache_path(label);
    if let Some(raw) = read_cache(&path)? {
        return Ok(raw);
    }
    if cfg.offline {
        return Err(LmfdbError::Offline(label.to_string()));
    }
    let raw = download(label, cfg)?;
    // Refuse to cache something that does not normalize.
    normalize(label, &raw)?;
    write_cache(&path, label, &raw)?;
    Ok(raw)
}

pub fn fetch_form(label: &str, cfg: &ClientConfig) -> Result<ModFormRecord, LmfdbError> {
    let raw = fetch_raw(label, cfg)?;
    check(normalize(label, &raw)?, cfg)
}

/// The fetched record wrapped as a fixture; `retrieved` is the caller's
/// date string.
pub fn fetch_fixture(label: &str, cfg: &ClientConfig, retrieved: &str) -> Result<FixtureFile, LmfdbError> {
    let rec = fetch_form(label, cfg)?;
    let source = cfg.url(&cfg.routes.newform, label, "");
    Ok(FixtureFile::new(rec, Provenance { source, retrieved: retrieved.to_string(), note: None }))
}
