//! Corpus files: curated ring presentations in a versioned JSON format.
//!
//! A corpus document lists quotient rings by their variables, coefficient
//! field, and defining generators. Entries may carry a primary
//! decomposition of the defining ideal (required when it is not monomial),
//! the list of characterization checks to replay, and expected values for
//! regression gating.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::filtration::dimension_filtration;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::PolyRing;
use crate::ring::{make_ring, RingPresentation};

pub const CORPUS_SCHEMA_VERSION: u32 = 1;

fn default_field() -> FieldSpec {
    FieldSpec::Rationals
}

/// One ring presentation plus the checks and expectations attached to it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    #[serde(default = "default_field")]
    pub field: FieldSpec,
    pub variables: Vec<String>,
    #[serde(default)]
    pub defining_generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supplied_decomposition: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theorems: Vec<String>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub expected: serde_json::Map<String, serde_json::Value>,
}

/// A whole corpus file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusDoc {
    pub schema_version: u32,
    pub id: String,
    pub rings: Vec<CorpusEntry>,
}

/// Parses and validates a corpus document from JSON text.
pub fn parse_corpus(text: &str) -> Result<CorpusDoc> {
    let doc: CorpusDoc = serde_json::from_str(text)?;
    if doc.schema_version != CORPUS_SCHEMA_VERSION {
        return Err(Error::Corpus(format!(
            "unsupported corpus schema version {} (this tool reads version {CORPUS_SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    if doc.rings.is_empty() {
        return Err(Error::Corpus("corpus lists no rings".into()));
    }
    let mut seen = BTreeSet::new();
    for entry in &doc.rings {
        if entry.id.is_empty() {
            return Err(Error::Corpus("a corpus entry has an empty id".into()));
        }
        if !seen.insert(entry.id.as_str()) {
            return Err(Error::Corpus(format!("duplicate ring id {:?}", entry.id)));
        }
        if entry.variables.is_empty() {
            return Err(Error::Corpus(format!(
                "ring {:?} declares no variables",
                entry.id
            )));
        }
    }
    Ok(doc)
}

/// Reads a corpus file from disk.
pub fn load_corpus(path: &Path) -> Result<CorpusDoc> {
    let text = std::fs::read_to_string(path)?;
    parse_corpus(&text)
}

/// Looks an entry up by id.
pub fn find_entry<'a>(doc: &'a CorpusDoc, id: &str) -> Result<&'a CorpusEntry> {
    doc.rings
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownRing(id.to_string()))
}

impl CorpusEntry {
    /// Builds the presented quotient ring. When the entry supplies a
    /// primary decomposition it is verified against the defining ideal and
    /// the ring's dimension filtration is derived from it immediately.
    pub fn build_ring(&self) -> Result<Arc<RingPresentation>> {
        let ambient = PolyRing::new(
            self.variables.clone(),
            self.field.clone(),
            MonomialOrder::DegRevLex,
        )?;
        let mut gens = Vec::with_capacity(self.defining_generators.len());
        for g in &self.defining_generators {
            gens.push(parse_polynomial(&ambient, g).map_err(|e| {
                Error::Corpus(format!("ring {:?}, generator {g:?}: {e}", self.id))
            })?);
        }
        let ring = make_ring(&ambient, Ideal::new(&ambient, gens)?)?;
        if let Some(components) = &self.supplied_decomposition {
            let mut ideals = Vec::with_capacity(components.len());
            for component in components {
                let mut cg = Vec::with_capacity(component.len());
                for g in component {
                    cg.push(parse_polynomial(&ambient, g).map_err(|e| {
                        Error::Corpus(format!(
                            "ring {:?}, decomposition generator {g:?}: {e}",
                            self.id
                        ))
                    })?);
                }
                ideals.push(Ideal::new(&ambient, cg)?);
            }
            dimension_filtration(&ring, Some(&ideals))?;
        }
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_round_trips() {
        let text = r#"{
            "schema_version": 1,
            "id": "tiny",
            "rings": [
                {"id": "r", "variables": ["x", "y"], "defining_generators": ["x*y"]}
            ]
        }"#;
        let doc = parse_corpus(text).unwrap();
        assert_eq!(doc.id, "tiny");
        assert_eq!(doc.rings[0].field, FieldSpec::Rationals);
        let ring = doc.rings[0].build_ring().unwrap();
        assert_eq!(ring.dimension(), 1);
        let again = parse_corpus(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(again.rings.len(), 1);
    }

    #[test]
    fn duplicate_ids_and_bad_versions_are_rejected() {
        let dup = r#"{"schema_version": 1, "id": "d", "rings": [
            {"id": "a", "variables": ["x"]},
            {"id": "a", "variables": ["y"]}
        ]}"#;
        assert!(matches!(parse_corpus(dup), Err(Error::Corpus(_))));
        let vers = r#"{"schema_version": 99, "id": "d", "rings": [
            {"id": "a", "variables": ["x"]}
        ]}"#;
        assert!(matches!(parse_corpus(vers), Err(Error::Corpus(_))));
    }

    #[test]
    fn supplied_decomposition_is_checked_at_build_time() {
        let text = r#"{
            "schema_version": 1,
            "id": "quadric",
            "rings": [{
                "id": "q",
                "variables": ["x", "y", "z"],
                "defining_generators": ["x^2 + y^2 + z^2"],
                "supplied_decomposition": [["x^2 + y^2 + z^2"]]
            }]
        }"#;
        let doc = parse_corpus(text).unwrap();
        let ring = doc.rings[0].build_ring().unwrap();
        assert_eq!(ring.dimension(), 2);
        let wrong = r#"{
            "schema_version": 1,
            "id": "quadric",
            "rings": [{
                "id": "q",
                "variables": ["x", "y", "z"],
                "defining_generators": ["x^2 + y^2 + z^2"],
                "supplied_decomposition": [["x"]]
            }]
        }"#;
        let bad = parse_corpus(wrong).unwrap();
        assert!(matches!(
            bad.rings[0].build_ring(),
            Err(Error::DecompositionMismatch)
        ));
    }
}
