//! JSON group-spec documents.
//!
//! ```json
//! {"type": "permutation", "degree": 3, "generators": ["(1 2)", "(1 2 3)"]}
//! {"type": "free_abelian", "rank": 2, "generators": [[1, 0], [0, 1]]}
//! ```

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::group::{Backend, Element, GeneratedGroup, IntVector};
use crate::notation::{parse_cycle_notation, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("generator {index}: {reason}")]
    Generator { index: usize, reason: String },
    #[error(transparent)]
    Group(#[from] Error),
}

/// A parsed but not yet validated group description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub backend: Backend,
    pub generators: Vec<Element>,
    pub labels: Option<Vec<String>>,
}

pub fn backend_from_json(doc: &Value) -> Result<Backend, SpecError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| SpecError::Schema("document must be an object".into()))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| SpecError::Schema("missing string field \"type\"".into()))?;
    let size = |field: &str| -> Result<usize, SpecError> {
        obj.get(field)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| {
                SpecError::Schema(format!("missing nonnegative integer field \"{field}\""))
            })
    };
    match kind {
        "permutation" => {
            let degree = size("degree")?;
            if degree == 0 {
                return Err(SpecError::Schema("degree must be at least 1".into()));
            }
            Ok(Backend::FinitePermutation { degree })
        }
        "free_abelian" => Ok(Backend::FreeAbelian {
            rank: size("rank")?,
        }),
        other => Err(SpecError::Schema(format!("unknown group type \"{other}\""))),
    }
}

pub fn backend_to_json(backend: Backend) -> Value {
    match backend {
        Backend::FinitePermutation { degree } => {
            serde_json::json!({"type": "permutation", "degree": degree})
        }
        Backend::FreeAbelian { rank } => serde_json::json!({"type": "free_abelian", "rank": rank}),
    }
}

fn describe(e: &ParseError) -> String {
    e.to_string()
}

/// Reads an element in its JSON form: a cycle string for permutations, an
/// integer array for vectors (entries may be decimal strings).
pub fn element_from_json(value: &Value, backend: Backend) -> Result<Element, String> {
    match backend {
        Backend::FinitePermutation { degree } => {
            let text = value.as_str().ok_or("expected a cycle-notation string")?;
            parse_cycle_notation(text, degree)
                .map(Element::Perm)
                .map_err(|e| describe(&e))
        }
        Backend::FreeAbelian { rank } => {
            let items = value.as_array().ok_or("expected an integer array")?;
            if items.len() != rank {
                return Err(format!(
                    "expected {rank} coordinates, found {}",
                    items.len()
                ));
            }
            let entries = items
                .iter()
                .map(|x| match x {
                    Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| format!("non-integer coordinate {n}")),
                    Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| format!("invalid integer string \"{s}\"")),
                    other => Err(format!("invalid coordinate {other}")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntVector::new(entries).into())
        }
    }
}

pub fn parse_spec_document(text: &str) -> Result<GroupSpec, SpecError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))?;
    let backend = backend_from_json(&doc)?;
    let gens = doc
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| SpecError::Schema("missing array field \"generators\"".into()))?;
    let generators = gens
        .iter()
        .enumerate()
        .map(|(index, v)| {
            element_from_json(v, backend).map_err(|reason| SpecError::Generator { index, reason })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = match doc.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            let labels = items
                .iter()
                .map(|v| v.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| SpecError::Schema("labels must be strings".into()))?;
            if labels.len() != generators.len() {
                return Err(SpecError::Schema(format!(
                    "{} labels for {} generators",
                    labels.len(),
                    generators.len()
                )));
            }
            Some(labels)
        }
        Some(_) => return Err(SpecError::Schema("labels must be an array".into())),
    };
    Ok(GroupSpec {
        backend,
        generators,
        labels,
    })
}

/// Parses and validates a group-spec document.
///
/// Identity and duplicate generators are reported by index, as is a set
/// that fails to generate `Z^k`.
pub fn parse_group_spec(text: &str) -> Result<GeneratedGroup, SpecError> {
    let spec = parse_spec_document(text)?;
    GeneratedGroup::new(spec.backend, spec.generators).map_err(|e| match e {
        Error::IdentityGenerator { index } => SpecError::Generator {
            index,
            reason: "identity generator forbidden".into(),
        },
        Error::DuplicateGenerator { index, first } => SpecError::Generator {
            index,
            reason: format!("duplicates generator {first}"),
        },
        other => SpecError::Group(other),
    })
}

/// Serializes a group back into a spec document.
pub fn group_to_json(group: &GeneratedGroup) -> Value {
    let mut doc = backend_to_json(group.backend());
    doc["generators"] = serde_json::to_value(group.generators()).expect("elements serialize");
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s3_document() {
        let g = parse_group_spec(
            r#"{"type":"permutation","degree":3,"generators":["(1 2)","(1 2 3)"]}"#,
        )
        .unwrap();
        assert_eq!(g.generators(), fixtures::s3().generators());
        assert_eq!(g.order(), Some(6));
    }

    #[test]
    fn identity_generator_is_named() {
        let e = parse_group_spec(r#"{"type":"permutation","degree":3,"generators":["(1 2)","e"]}"#)
            .unwrap_err();
        assert_eq!(
            e,
            SpecError::Generator {
                index: 1,
                reason: "identity generator forbidden".into()
            }
        );
        assert!(e.to_string().contains("generator 1"));
    }

    #[test]
    fn duplicate_and_malformed_generators() {
        let e =
            parse_group_spec(r#"{"type":"permutation","degree":3,"generators":["(1 2)","(2 1)"]}"#)
                .unwrap_err();
        assert!(matches!(e, SpecError::Generator { index: 1, .. }));
        let e =
            parse_group_spec(r#"{"type":"permutation","degree":3,"generators":["(1 2)","(1 9)"]}"#)
                .unwrap_err();
        assert!(matches!(e, SpecError::Generator { index: 1, .. }));
    }

    #[test]
    fn non_generating_lattice() {
        let e = parse_group_spec(r#"{"type":"free_abelian","rank":2,"generators":[[2,0],[0,2]]}"#)
            .unwrap_err();
        assert!(e.to_string().contains("lattice index 4"), "{e}");
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_group_spec("{"), Err(SpecError::Json(_))));
        assert!(matches!(
            parse_group_spec(r#"{"type":"ring"}"#),
            Err(SpecError::Schema(_))
        ));
        assert!(matches!(
            parse_group_spec(r#"{"type":"permutation","generators":[]}"#),
            Err(SpecError::Schema(_))
        ));
        assert!(matches!(
            parse_group_spec(r#"{"type":"free_abelian","rank":2,"generators":[[1]]}"#),
            Err(SpecError::Generator { index: 0, .. })
        ));
    }

    #[test]
    fn round_trip_through_json() {
        for g in [
            fixtures::s3(),
            fixtures::q8(),
            GeneratedGroup::standard_lattice(3),
        ] {
            let text = group_to_json(&g).to_string();
            assert_eq!(
                parse_group_spec(&text).unwrap().generators(),
                g.generators()
            );
        }
    }
}
