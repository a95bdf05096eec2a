//! Document shapes read and written by the workbench, and loaders that
//! build validated structures from them.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::multirel::{MultirelJson, Multirelation, SigmaRelation, SlataSpaceJson};
use crate::relations::{BinaryRelation, RelationJson, Space};
use crate::semilattice::{SemilatticeJson, SlataJson};
use crate::sspace::{FiniteSpace, SpaceJson};

/// Parses `text`, keeping serde's line/column and field context in the error.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// A relation together with the spaces it lives on. `target` defaults to
/// `source` for endo-relations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    #[serde(alias = "space")]
    pub source: SpaceJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SpaceJson>,
    pub relation: RelationJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl RelationDoc {
    pub fn load(&self) -> Result<BinaryRelation> {
        let source: Space = Arc::new(FiniteSpace::from_json(&self.source)?);
        let target = match &self.target {
            Some(t) if t != &self.source => Arc::new(FiniteSpace::from_json(t)?),
            _ => source.clone(),
        };
        BinaryRelation::from_json(source, target, &self.relation)
    }

    /// Endo-relations are written without a separate target.
    pub fn of(t: &BinaryRelation, certificate: Option<Value>) -> Self {
        let target = (!t.is_endo()).then(|| t.target().to_json());
        RelationDoc {
            source: t.source().to_json(),
            target,
            relation: t.to_json(),
            certificate,
        }
    }
}

/// Multirelation or σ-relation document, with an optional certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberDoc {
    #[serde(flatten)]
    pub body: MultirelJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl FiberDoc {
    pub fn load_multirel(&self) -> Result<Multirelation> {
        let space = Arc::new(FiniteSpace::from_json(&self.body.space)?);
        Multirelation::from_fiber_json(space, &self.body.fibers)
    }

    pub fn load_sigma(&self) -> Result<SigmaRelation> {
        let space = Arc::new(FiniteSpace::from_json(&self.body.space)?);
        SigmaRelation::from_fiber_json(space, &self.body.fibers)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlataSpaceDoc {
    #[serde(flatten)]
    pub body: SlataSpaceJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl SlataSpaceDoc {
    /// The two multirelations, not yet certified as a SlataSpace.
    pub fn load_pair(&self) -> Result<(Multirelation, Multirelation)> {
        let space = Arc::new(FiniteSpace::from_json(&self.body.space)?);
        Ok((
            Multirelation::from_fiber_json(space.clone(), &self.body.i)?,
            Multirelation::from_fiber_json(space, &self.body.e)?,
        ))
    }
}

/// Either a bare semilattice or a Slata; told apart by the `semilattice` key.
#[derive(Clone, Debug)]
pub enum AlgebraDoc {
    Semilattice(SemilatticeJson),
    Slata(SlataJson),
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDoc> {
    let value: Value = parse(text)?;
    if value.get("semilattice").is_some() {
        Ok(AlgebraDoc::Slata(serde_json::from_value(value)?))
    } else if value.get("meet").is_some() {
        Ok(AlgebraDoc::Semilattice(serde_json::from_value(value)?))
    } else {
        Err(Error::Json(serde::de::Error::custom(
            "expected a semilattice {size, meet, top} or a Slata {semilattice, i, d}",
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_doc_defaults_target() {
        let text = r#"{"source": {"points": 1, "subbase": [[], [0]]},
                       "relation": {"source_points": 1, "target_points": 1, "pairs": [[0, 0]]}}"#;
        let doc: RelationDoc = parse(text).unwrap();
        let t = doc.load().unwrap();
        assert!(t.is_endo() && t.contains(0, 0));
        assert_eq!(RelationDoc::of(&t, None), doc);
    }

    #[test]
    fn parse_error_has_position() {
        let err = parse::<SemilatticeJson>("{\"size\": 1,\n \"top\": 0}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("meet") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn algebra_kind_detected() {
        assert!(matches!(
            parse_algebra(r#"{"size":1,"meet":[[0]],"top":0}"#).unwrap(),
            AlgebraDoc::Semilattice(_)
        ));
        let slata = r#"{"semilattice":{"size":1,"meet":[[0]],"top":0},"i":[0],"d":[0]}"#;
        assert!(matches!(
            parse_algebra(slata).unwrap(),
            AlgebraDoc::Slata(_)
        ));
        assert!(parse_algebra("{}").is_err());
    }
}
