//! Stable JSON document for atlas reports (cache and `--format json`).
//!
//! Schema (version 1):
//! `{ "schema_version": 1, "group": {"spec", "order"}, "components": [
//!   {"d","c2","c3","minus_i","cusp_widths","genus","level",
//!    "higman":{"order","class_size","label"},
//!    "congruence":{"e","f","verdict","certificates"},
//!    "monodromy":{"class","domain"}} ] }`
//! For a `skipped_cap` verdict, `e` and `f` are 0.

use std::path::Path;

use serde::{Deserialize, Serialize};

use gsa_core::error::{Error, Result};

use crate::atlas::AtlasReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CacheDoc {
    pub schema_version: u32,
    pub group: GroupMeta,
    pub components: Vec<ComponentDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GroupMeta {
    pub spec: String,
    pub order: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComponentDoc {
    pub d: u64,
    pub c2: u64,
    pub c3: u64,
    pub minus_i: bool,
    pub cusp_widths: Vec<u64>,
    pub genus: u64,
    pub level: u64,
    pub higman: HigmanDoc,
    pub congruence: CongruenceDoc,
    pub monodromy: MonodromyDoc,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HigmanDoc {
    pub order: u64,
    pub class_size: u64,
    pub label: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CongruenceDoc {
    pub e: u64,
    pub f: u64,
    pub verdict: String,
    pub certificates: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MonodromyDoc {
    pub class: String,
    pub domain: u64,
}

impl CacheDoc {
    pub fn from_report(report: &AtlasReport) -> CacheDoc {
        CacheDoc {
            schema_version: SCHEMA_VERSION,
            group: GroupMeta {
                spec: report.spec.clone(),
                order: report.order.clone(),
            },
            components: report
                .rows
                .iter()
                .map(|row| ComponentDoc {
                    d: row.signature.d,
                    c2: row.signature.c2,
                    c3: row.signature.c3,
                    minus_i: row.signature.minus_i,
                    cusp_widths: row.signature.cusp_widths.clone(),
                    genus: row.signature.genus,
                    level: row.signature.level,
                    higman: HigmanDoc {
                        order: row.higman_order,
                        class_size: row.higman_class_size,
                        label: row.higman_label.clone(),
                    },
                    congruence: CongruenceDoc {
                        e: row.congruence.degree_e.unwrap_or(0),
                        f: row.congruence.deficiency_f.unwrap_or(0),
                        verdict: row.congruence.verdict.to_string(),
                        certificates: row.congruence.certificates.clone(),
                    },
                    monodromy: MonodromyDoc {
                        class: row.monodromy.classification.to_string(),
                        domain: row.monodromy.domain_size,
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable document")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Loads and validates a cached document; schema-version mismatches and
    /// corrupt files are explicit errors, never partial reports.
    pub fn read(path: &Path) -> Result<CacheDoc> {
        let text = std::fs::read_to_string(path)?;
        let doc: CacheDoc = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("cache file {}: {e}", path.display())))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidSpec(format!(
                "cache schema version {} (expected {SCHEMA_VERSION}) in {}",
                doc.schema_version,
                path.display()
            )));
        }
        Ok(doc)
    }
}

/// Writes then reloads a report document, checking field-by-field equality.
pub fn cache_roundtrip(report: &AtlasReport, path: &Path) -> Result<CacheDoc> {
    let doc = CacheDoc::from_report(report);
    doc.write(path)?;
    let reloaded = CacheDoc::read(path)?;
    if reloaded != doc {
        return Err(Error::InternalConsistency(format!(
            "cache roundtrip mismatch at {}",
            path.display()
        )));
    }
    Ok(reloaded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{run_atlas, AtlasConfig};
    use crate::spec::parse_group_spec;

    #[test]
    fn roundtrip_d6() {
        let report = run_atlas(
            &parse_group_spec("D:6").unwrap(),
            &AtlasConfig::default(),
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d6.json");
        let doc = cache_roundtrip(&report, &path).unwrap();
        assert_eq!(doc.components.len(), 1);
        assert_eq!(doc.components[0].d, 3);
        assert_eq!(doc.components[0].congruence.verdict, "congruence");
    }

    #[test]
    fn version_mismatch_is_explicit() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"schema_version": 2, "group": {"spec": "D:6", "order": "6"}, "components": []}"#,
        )
        .unwrap();
        match CacheDoc::read(&path) {
            Err(Error::InvalidSpec(msg)) => assert!(msg.contains("schema version 2")),
            other => panic!("expected version error, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_file_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corrupt.json");
        std::fs::write(&path, "{\"schema_version\": 1, \"group\": {").unwrap();
        assert!(matches!(CacheDoc::read(&path), Err(Error::Parse(_))));
    }
}
