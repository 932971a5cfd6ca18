use std::fs;
use std::path::Path;

use modbog_core::modforms::{ModFormRecord, RecordError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::LmfdbError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Source URL, or `"manual"`.
    pub source: String,
    /// Retrieval date, `YYYY-MM-DD`.
    pub retrieved: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema_version: u64,
    pub record: ModFormRecord,
    pub provenance: Provenance,
}

impl FixtureFile {
    pub fn new(record: ModFormRecord, provenance: Provenance) -> Self {
        FixtureFile { schema_version: SCHEMA_VERSION, record, provenance }
    }

    pub fn from_json(text: &str) -> Result<Self, LmfdbError> {
        let value: Value = serde_json::from_str(text).map_err(|e| LmfdbError::Parse(e.to_string()))?;
        match value.get("schema_version").and_then(Value::as_u64) {
            Some(SCHEMA_VERSION) => {}
            Some(v) => {
                return Err(LmfdbError::SchemaMismatch(format!("schema_version {v}, expected {SCHEMA_VERSION}")))
            }
            None => return Err(LmfdbError::SchemaMismatch("schema_version missing".into())),
        }
        // Parsed from text again: integers wider than i64 cannot go through `Value`.
        let fixture: FixtureFile = serde_json::from_str(text).map_err(|e| LmfdbError::SchemaMismatch(e.to_string()))?;
        fixture.record.validate().map_err(|e| match e {
            RecordError::InvariantViolation(m) => LmfdbError::InvariantViolation(m),
            other => LmfdbError::InvariantViolation(other.to_string()),
        })?;
        Ok(fixture)
    }

    /// One-space indented JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        let fmt = serde_json::ser::PrettyFormatter::with_indent(b" ");
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        self.serialize(&mut ser).expect("fixture serializes");
        buf.push(b'\n');
        String::from_utf8(buf).expect("utf-8")
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> LmfdbError + '_ {
    move |source| LmfdbError::Io { path: path.display().to_string(), source }
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<FixtureFile, LmfdbError> {
    let path = path.as_ref();
    FixtureFile::from_json(&fs::read_to_string(path).map_err(io_err(path))?)
}

pub fn save_fixture(fixture: &FixtureFile, path: impl AsRef<Path>) -> Result<(), LmfdbError> {
    let path = path.as_ref();
    fixture.record.validate().map_err(|e| LmfdbError::InvariantViolation(e.to_string()))?;
    fs::write(path, fixture.to_json()).map_err(io_err(path))
}
