//! Canonical JSON interchange form of [`ErModel`].

use crate::location::Location;
use crate::model::{EntityKind, ErModel, ModelError};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid model JSON: {0}")]
    Format(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Pretty-printed JSON, fields in declaration order, trailing newline.
pub fn dump_json(model: &ErModel) -> String {
    let mut out = serde_json::to_string_pretty(model).expect("model serialization is infallible");
    out.push('\n');
    out
}

/// Loads and re-validates a model. Supertype names that do not resolve are
/// accepted here and reported by the linter instead.
pub fn load_json(source: &str) -> Result<ErModel, JsonError> {
    let model: ErModel =
        serde_json::from_str(source).map_err(|e| JsonError::Format(e.to_string()))?;
    check_format(&model).map_err(JsonError::Format)?;
    model.verify_allowing_dangling_supertypes()?;
    Ok(model)
}

fn check_format(model: &ErModel) -> Result<(), String> {
    for e in &model.entities {
        let at = Location::entity(&e.name);
        if e.name.is_empty() {
            return Err("entity with an empty name".into());
        }
        for a in &e.attributes {
            let at = Location::entity_attr(&e.name, &a.name);
            if a.name.is_empty() {
                return Err(format!(
                    "attribute with an empty name in {}",
                    Location::entity(&e.name)
                ));
            }
            if a.is_key && a.is_partial_key {
                return Err(format!(
                    "{at}: an attribute cannot be both key and partial key"
                ));
            }
            if a.is_partial_key && e.kind != EntityKind::Weak {
                return Err(format!("{at}: partial keys belong to weak entities only"));
            }
        }
        if let Some(k) = &e.most_desired_key {
            if !e.attribute(k).is_some_and(|a| a.is_key) {
                return Err(format!("{at}: mostDesiredKey `{k}` is not a key attribute"));
            }
        }
        if e.supertype_name.as_deref() == Some("") {
            return Err(format!("{at}: empty supertypeName"));
        }
        for group in &e.composite_keys {
            if group.len() < 2 {
                return Err(format!(
                    "{at}: a composite key group needs at least two members"
                ));
            }
        }
    }
    for r in &model.relationships {
        if r.name.is_empty() {
            return Err("relationship with an empty name".into());
        }
        for (i, p) in r.participants.iter().enumerate() {
            if !p.cardinality.is_valid() {
                return Err(format!(
                    "{}: cardinality {} violates min <= max, max >= 1",
                    Location::participant(&r.name, i),
                    p.cardinality
                ));
            }
        }
        for a in &r.attributes {
            if a.name.is_empty() {
                return Err(format!(
                    "attribute with an empty name in {}",
                    Location::rel(&r.name)
                ));
            }
            if a.is_key || a.is_partial_key || a.is_multivalued {
                return Err(format!(
                    "{}: relationship attributes carry no key or multivalued flags",
                    Location::rel_attr(&r.name, &a.name)
                ));
            }
        }
    }
    Ok(())
}
