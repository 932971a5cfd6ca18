//! Newform data ingestion: offline fixture files and a small client for the
//! JSON API of the L-functions and modular forms database.

mod client;
mod fixture;
mod normalize;

use thiserror::Error;

pub use client::{fetch_fixture, fetch_form, fetch_raw, ClientConfig, Routes, DEFAULT_BASE_URL};
pub use fixture::{load_fixture, save_fixture, FixtureFile, Provenance, SCHEMA_VERSION};
pub use normalize::{normalize, RawResponses};

#[derive(Debug, Error)]
pub enum LmfdbError {
    #[error("malformed label {0:?}")]
    InvalidLabel(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("no newform with label {0}")]
    NotFound(String),
    #[error("unexpected upstream or fixture format: {0}")]
    SchemaMismatch(String),
    #[error("only {have} coefficients available, {need} required")]
    InsufficientCoefficients { have: u64, need: u64 },
    #[error("{0} is not cached and network access is disabled")]
    Offline(String),
    #[error("cache entry for {0} exists with different content")]
    CacheConflict(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}
