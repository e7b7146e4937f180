//! Deterministic table exports: JSON objects with keys in canonical
//! partition order (larger size first, then descending lexicographic).

use crate::json::{canonical_cmp, ordered_object, partition_key};
use anyhow::{bail, Result};
use twheis::gamma::GammaCtx;
use twheis::partitions::{enumerate_odd, enumerate_strict};
use twheis::rational::rat_to_string;
use twheis::schur_graph::{down_row, plancherel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Characters,
    XMatrix,
    Transitions,
    Plancherel,
}

impl TableKind {
    pub fn parse(s: &str) -> Result<TableKind> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "characters" => TableKind::Characters,
            "x-matrix" | "xmatrix" => TableKind::XMatrix,
            "transitions" => TableKind::Transitions,
            "plancherel" => TableKind::Plancherel,
            other => bail!("unknown table kind {other:?}"),
        })
    }
}

/// Renders the requested table at level `n` as canonical JSON.
pub fn export_table(kind: TableKind, n: usize, ctx: &GammaCtx) -> Result<String> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    match kind {
        TableKind::Plancherel => {
            let measure = plancherel(n);
            let mut keys: Vec<_> = measure.keys().cloned().collect();
            keys.sort_by(|a, b| canonical_cmp(a.as_partition(), b.as_partition()));
            for lambda in keys {
                pairs.push((
                    partition_key(lambda.parts()),
                    rat_to_string(&measure[&lambda]),
                ));
            }
        }
        TableKind::XMatrix | TableKind::Characters => {
            let xm = ctx.x_matrix(n)?;
            // enumerate_* are already in descending lexicographic order.
            for mu in enumerate_odd(n) {
                for lambda in enumerate_strict(n) {
                    let value = match kind {
                        TableKind::XMatrix => xm.entry(&mu, &lambda)?,
                        _ => ctx.character(&lambda, &mu)?,
                    };
                    pairs.push((
                        format!(
                            "{}|{}",
                            partition_key(mu.parts()),
                            partition_key(lambda.parts())
                        ),
                        rat_to_string(&value),
                    ));
                }
            }
        }
        TableKind::Transitions => {
            for lambda in enumerate_strict(n) {
                let row = down_row(&lambda);
                let mut targets: Vec<_> = row.targets.into_iter().collect();
                targets.sort_by(|(a, _), (b, _)| canonical_cmp(a.as_partition(), b.as_partition()));
                for (nu, prob) in targets {
                    pairs.push((
                        format!(
                            "{}|{}",
                            partition_key(lambda.parts()),
                            partition_key(nu.parts())
                        ),
                        rat_to_string(&prob),
                    ));
                }
            }
        }
    }
    Ok(ordered_object(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plancherel_example() {
        let ctx = GammaCtx::new();
        assert_eq!(
            export_table(TableKind::Plancherel, 3, &ctx).unwrap(),
            r#"{"[3]":"2/3","[2,1]":"1/3"}"#
        );
    }

    #[test]
    fn x_matrix_example() {
        let ctx = GammaCtx::new();
        assert_eq!(
            export_table(TableKind::XMatrix, 2, &ctx).unwrap(),
            r#"{"[1,1]|[2]":"1"}"#
        );
    }

    #[test]
    fn characters_level_zero() {
        let ctx = GammaCtx::new();
        assert_eq!(
            export_table(TableKind::Characters, 0, &ctx).unwrap(),
            r#"{"[]|[]":"1"}"#
        );
    }

    #[test]
    fn exports_reparse_to_identical_maps() {
        let ctx = GammaCtx::new();
        for kind in [
            TableKind::Plancherel,
            TableKind::XMatrix,
            TableKind::Characters,
            TableKind::Transitions,
        ] {
            for n in 0..=4 {
                let text = export_table(kind, n, &ctx).unwrap();
                let value: serde_json::Value = serde_json::from_str(&text).unwrap();
                let text2 = export_table(kind, n, &ctx).unwrap();
                let value2: serde_json::Value = serde_json::from_str(&text2).unwrap();
                assert_eq!(value, value2);
                assert!(value.is_object());
            }
        }
    }
}
