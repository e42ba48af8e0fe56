//! Toolchain for entity-relationship models written in ERDL, a small textual
//! diagram language.
//!
//! The pipeline is parse, [`validate`], [`fix`], [`transform`] plus
//! [`emit_ddl`], and [`render`]. Every stage works on the plain data model in
//! [`model`]; JSON interchange lives in [`json`].
//!
//! ```
//! let src = "entity Employee { key EmpNo Name }";
//! let located = erdl::parse(src, "staff.erdl").unwrap();
//! assert!(erdl::validate(&located).is_empty());
//! let schema = erdl::transform(&located.model).unwrap();
//! assert_eq!(schema.relations[0].primary_key, ["EmpNo"]);
//! ```

pub mod fixer;
pub mod json;
pub mod location;
pub mod model;
pub mod naming;
pub mod parser;
pub mod render;
pub mod transform;
pub mod validator;

pub use fixer::{fix, FixReport, Rename, SkipReason, SkippedFix};
pub use json::{dump_json, load_json, JsonError};
pub use location::Location;
pub use model::{
    classify_binary, Attribute, BinaryKind, Cardinality, EntityKind, EntityType, ErModel,
    MaxCardinality, ModelError, Participation, RelationshipType,
};
pub use naming::{compute_prefix, PluralExceptions};
pub use parser::{parse, print, LocatedModel, ParseError, SourceSpan};
pub use render::{render, RankDirection, RenderOptions};
pub use transform::{emit_ddl, transform, Ddl, Relation, Schema, TransformError};
pub use validator::{validate, validate_model, Diagnostic, Rule, Severity, Validator};
