pub mod library;
pub mod oracle;

use std::path::PathBuf;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ORACLE_SOURCE: &str = include_str!("oracle.rs");

pub fn oracle_hash() -> String {
    hex::encode(Sha256::digest(ORACLE_SOURCE.as_bytes()))
}

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/derived.json")
}

/// The frozen oracle values; rewritten from the oracle when `LOCKIT_BLESS=1`.
pub fn golden() -> Value {
    let path = golden_path();
    if std::env::var("LOCKIT_BLESS").as_deref() == Ok("1") {
        let doc = json!({ "oracle_hash": oracle_hash(), "values": oracle::derived_values() });
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
    }
    let text = std::fs::read_to_string(&path).expect("golden file present; regenerate with LOCKIT_BLESS=1");
    serde_json::from_str(&text).expect("golden file is JSON")
}
