//! The JSON document format for lattices and named relations.
//!
//! ```json
//! {
//!   "name": "chain3",
//!   "elements": ["0", "a", "1"],
//!   "covers": [["0", "a"], ["a", "1"]],
//!   "relations": { "glued": [["0", "a"], ["a", "1"]] }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::lattice::{ElementId, Lattice};
use crate::relations::{tolerance_generated_by, BinaryRelation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub name: String,
    pub elements: Vec<String>,
    /// `(lower, upper)` label pairs.
    pub covers: Vec<(String, String)>,
    /// Named relations, each a list of unordered label pairs.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, Vec<(String, String)>>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("no relation named `{0}` in the document")]
    UnknownRelation(String),
    #[error(transparent)]
    Lattice(#[from] Error),
}

impl DocumentError {
    /// Whether the document itself is at fault rather than the structure it describes.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            DocumentError::Parse(_)
                | DocumentError::UnknownRelation(_)
                | DocumentError::Lattice(Error::DuplicateLabel(_) | Error::UnknownLabel(_) | Error::EmptyLattice)
        )
    }
}

impl LatticeDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// A document listing the elements and covers of `l`.
    pub fn from_lattice(name: impl Into<String>, l: &Lattice) -> Self {
        LatticeDocument {
            name: name.into(),
            elements: l.labels().to_vec(),
            covers: l
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| (l.label(x).to_owned(), l.label(y).to_owned()))
                .collect(),
            relations: BTreeMap::new(),
        }
    }

    /// Adds a named relation given by element ids of `l`.
    pub fn with_relation(mut self, l: &Lattice, name: &str, rel: &BinaryRelation) -> Self {
        let pairs = rel
            .upper_pairs()
            .into_iter()
            .map(|(x, y)| (l.label(x).to_owned(), l.label(y).to_owned()))
            .collect();
        self.relations.insert(name.to_owned(), pairs);
        self
    }

    pub fn lattice(&self) -> Result<Lattice, DocumentError> {
        Ok(Lattice::from_covers(&self.elements, &self.covers)?)
    }

    pub fn relation_pairs(&self, l: &Lattice, name: &str) -> Result<Vec<(ElementId, ElementId)>, DocumentError> {
        let pairs = self
            .relations
            .get(name)
            .ok_or_else(|| DocumentError::UnknownRelation(name.to_owned()))?;
        let index = |s: &str| l.index_of(s).ok_or_else(|| Error::UnknownLabel(s.to_owned()));
        pairs.iter().map(|(x, y)| Ok((index(x)?, index(y)?))).collect()
    }

    /// Loads a named relation.
    ///
    /// With `close`, the pairs generate the least tolerance containing them.
    /// Otherwise the pairs are taken as is, together with their mirror
    /// images and the diagonal, and the caller validates the result.
    pub fn relation(&self, l: &Lattice, name: &str, close: bool) -> Result<BinaryRelation, DocumentError> {
        let pairs = self.relation_pairs(l, name)?;
        let rel = if close {
            tolerance_generated_by(l, &pairs)?
        } else {
            BinaryRelation::symmetric_from_pairs(l.len(), &pairs)?
        };
        Ok(rel)
    }
}
