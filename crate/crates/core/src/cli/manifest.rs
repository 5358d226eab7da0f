use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: &'static str,
    pub timestamp_unix: u64,
    pub inputs: Vec<InputHash>,
}

impl RunManifest {
    pub fn new(command: &str, args: &[String]) -> Self {
        RunManifest {
            command: command.into(),
            args: args.to_vec(),
            version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            inputs: vec![],
        }
    }

    pub fn hash_input(&mut self, name: &str, bytes: &[u8]) {
        let digest = Sha256::digest(bytes);
        let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(InputHash { name: name.into(), sha256 });
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema: u32,
    manifest: &'a RunManifest,
    report: &'a R,
}

pub fn envelope<R: Serialize>(manifest: &RunManifest, report: &R) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, manifest, report })
        .expect("report serializes");
    s.push('\n');
    s
}
