//! The JSON report written by `--json PATH`.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: Vec<String>,
    pub q: Option<u64>,
    #[serde(serialize_with = "opt_bigint_str")]
    pub bound: Option<BigInt>,
    pub results: Vec<serde_json::Value>,
    pub counterexamples: Vec<serde_json::Value>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(
        command: &[String],
        q: Option<u64>,
        bound: Option<&BigInt>,
        results: Vec<serde_json::Value>,
        counterexamples: Vec<serde_json::Value>,
        started: Instant,
    ) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_vec(),
            q,
            bound: bound.cloned(),
            results,
            counterexamples,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

pub fn bigint_str<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn opt_bigint_str<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => bigint_str(n, s),
        None => s.serialize_none(),
    }
}

pub fn bigint_pairs<S: Serializer>(pairs: &[(BigInt, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]))
}

pub fn bigint_seq<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}
