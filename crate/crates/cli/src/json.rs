//! Deterministic JSON for the table exports and element dumps.
//!
//! Keys are partition strings like `[3,1]` (or pairs `[3,1]|[4]`), values
//! are rational strings like `2/3`; none of them need escaping, so a small
//! ordered emitter keeps the canonical key order that `serde_json` maps
//! would lose.

use serde::Serialize;
use std::cmp::Ordering;
use twheis::gamma::GammaElement;
use twheis::partitions::Partition;
use twheis::rational::{rat_to_string, Rat};
use twheis::sergeev::SergeevElement;

/// `[6,5,2,1]`-style key for a partition.
pub fn partition_key(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Canonical order on partitions: larger size first, then descending
/// lexicographic.
pub fn canonical_cmp(a: &Partition, b: &Partition) -> Ordering {
    b.size()
        .cmp(&a.size())
        .then_with(|| b.parts().cmp(a.parts()))
}

/// Emits `{"k":"v",...}` preserving the given pair order.
pub fn ordered_object(pairs: &[(String, String)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("{}:{}", quoted(k), quoted(v)))
        .collect();
    format!("{{{}}}", body.join(","))
}

fn quoted(s: &str) -> String {
    debug_assert!(s.chars().all(|c| c != '"' && c != '\\' && !c.is_control()));
    format!("\"{s}\"")
}

/// An element of `Γ` as canonical-order p-basis JSON.
pub fn gamma_json(f: &GammaElement) -> String {
    let mut keys: Vec<(&twheis::partitions::OddPartition, &Rat)> = f.coeffs().iter().collect();
    keys.sort_by(|(a, _), (b, _)| canonical_cmp(a.as_partition(), b.as_partition()));
    let pairs: Vec<(String, String)> = keys
        .into_iter()
        .map(|(mu, c)| (partition_key(mu.parts()), rat_to_string(c)))
        .collect();
    ordered_object(&pairs)
}

/// Coordinates in some basis (already keyed by partitions) as JSON.
pub fn coords_json(coords: &std::collections::BTreeMap<Partition, Rat>) -> String {
    let mut keys: Vec<(&Partition, &Rat)> = coords.iter().collect();
    keys.sort_by(|(a, _), (b, _)| canonical_cmp(a, b));
    let pairs: Vec<(String, String)> = keys
        .into_iter()
        .map(|(p, c)| (partition_key(p.parts()), rat_to_string(c)))
        .collect();
    ordered_object(&pairs)
}

#[derive(Serialize)]
struct SergeevTermJson {
    clifford: Vec<usize>,
    perm: Vec<usize>,
    coeff: String,
}

/// A Sergeev element as a JSON list of
/// `{"clifford":[1,3],"perm":[2,1,3],"coeff":"a/b"}` terms (1-based).
pub fn sergeev_json(x: &SergeevElement) -> String {
    let terms: Vec<SergeevTermJson> = x
        .terms()
        .iter()
        .map(|(m, c)| SergeevTermJson {
            clifford: m.clifford().iter().map(|&i| i + 1).collect(),
            perm: m.perm().one_line(),
            coeff: rat_to_string(c),
        })
        .collect();
    serde_json::to_string(&terms).expect("serializable")
}
