//! Notation linter.
//!
//! [`validate`] runs every rule in the catalog against a model and returns the
//! violations ordered by source position, then rule id.

mod rules;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::location::Location;
use crate::model::{EntityType, ErModel};
use crate::naming::{self, PluralExceptions};
use crate::parser::{LocatedModel, SourceSpan};

pub use rules::{Rule, Severity, UnknownRule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostic {
    pub rule_id: Rule,
    pub severity: Severity,
    pub location: Location,
    pub span: Option<SourceSpan>,
    pub message: String,
    pub fixable: bool,
}

impl Diagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `file:line:col: severity ruleId message`. Diagnostics without a span
    /// print `file: severity ruleId message`.
    pub fn to_text(&self, fallback_file: &str) -> String {
        match &self.span {
            Some(s) => format!(
                "{}:{}:{}: {} {} {}",
                s.file, s.line, s.column, self.severity, self.rule_id, self.message
            ),
            None => format!(
                "{}: {} {} {}",
                fallback_file, self.severity, self.rule_id, self.message
            ),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("diagnostic serialization is infallible")
    }
}

/// Linter configuration.
#[derive(Debug, Clone, Default)]
pub struct Validator {
    pub plural_exceptions: PluralExceptions,
}

/// Runs the full catalog with the default configuration.
pub fn validate(located: &LocatedModel) -> Vec<Diagnostic> {
    Validator::default().validate(located)
}

/// Validates a model that has no source positions.
pub fn validate_model(model: &ErModel) -> Vec<Diagnostic> {
    validate(&LocatedModel::unlocated(model.clone()))
}

/// Names of the entity types that take part in key prefix naming.
pub fn prefix_pool(model: &ErModel) -> Vec<&str> {
    model
        .entities
        .iter()
        .filter(|e| e.is_root_regular())
        .map(|e| e.name.as_str())
        .collect()
}

/// The conforming name for the entity's designated key: prefix followed by
/// the key's base name (the current name with a correct prefix removed).
pub fn expected_key_name<S: AsRef<str>>(entity: &EntityType, pool: &[S]) -> Option<String> {
    let key = entity.designated_key()?;
    let prefix = naming::compute_prefix(&entity.name, pool);
    let base = key.name.strip_prefix(prefix.as_str()).unwrap_or(&key.name);
    Some(format!("{prefix}{base}"))
}

pub fn check_singular_heuristic(name: &str) -> bool {
    naming::is_suspected_plural(name, &PluralExceptions::default())
}

impl Validator {
    pub fn new(plural_exceptions: PluralExceptions) -> Self {
        Validator { plural_exceptions }
    }

    pub fn validate(&self, located: &LocatedModel) -> Vec<Diagnostic> {
        let model = &located.model;
        let mut found = Findings::default();
        self.check_entities(model, &mut found);
        self.check_relationships(model, &mut found);

        let ordinal: HashMap<Location, usize> = model
            .locations()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let mut diags: Vec<Diagnostic> = found
            .0
            .into_iter()
            .map(|(rule, location, message)| Diagnostic {
                rule_id: rule,
                severity: rule.severity(),
                span: located.span(&location).cloned(),
                location,
                message,
                fixable: rule.fixable(),
            })
            .collect();
        diags.sort_by_cached_key(|d| {
            let (file, line, col) = match &d.span {
                Some(s) => (s.file.clone(), s.line, s.column),
                None => (String::new(), 0, 0),
            };
            let ord = ordinal.get(&d.location).copied().unwrap_or(usize::MAX);
            (file, line, col, ord, d.rule_id.id())
        });
        diags
    }

    fn check_entities(&self, model: &ErModel, found: &mut Findings) {
        let pool = prefix_pool(model);
        let mut seen_keys: HashMap<String, &str> = HashMap::new();

        for e in &model.entities {
            let at = Location::entity(&e.name);
            self.check_name(&e.name, &at, true, found);

            let canon = naming::canonical_key(&e.name);
            if let Some(first) = seen_keys.get(&canon) {
                found.push(
                    Rule::RegDuplicateName,
                    at.clone(),
                    format!("entity type `{}` is not distinct from `{first}`", e.name),
                );
            } else {
                seen_keys.insert(canon, &e.name);
            }

            for a in &e.attributes {
                let attr_at = Location::entity_attr(&e.name, &a.name);
                self.check_name(&a.name, &attr_at, true, found);
                if a.is_key && a.is_multivalued {
                    found.push(
                        Rule::RegNonAtomicKey,
                        attr_at.clone(),
                        format!("key attribute `{}` of `{}` is multivalued", a.name, e.name),
                    );
                }
                if a.is_key && e.is_weak() {
                    found.push(
                        Rule::WeakHasKey,
                        attr_at,
                        format!("weak entity `{}` declares its own key `{}`", e.name, a.name),
                    );
                }
            }

            if e.is_root_regular() {
                if !e.composite_keys.is_empty() {
                    let groups: Vec<String> =
                        e.composite_keys.iter().map(|g| g.join(" + ")).collect();
                    found.push(
                        Rule::RegCompositeKey,
                        at.clone(),
                        format!(
                            "entity `{}` is identified by a combination of attributes ({})",
                            e.name,
                            groups.join("; ")
                        ),
                    );
                } else if e.keys().next().is_none() {
                    found.push(
                        Rule::RegMissingKey,
                        at.clone(),
                        format!("regular entity `{}` has no key attribute", e.name),
                    );
                }
                if let Some(key) = e.designated_key() {
                    let prefix = naming::compute_prefix(&e.name, &pool);
                    if !key.name.starts_with(&prefix) {
                        let expected = expected_key_name(e, &pool).unwrap_or_default();
                        found.push(
                            Rule::KeyPrefix,
                            Location::entity_attr(&e.name, &key.name),
                            format!(
                                "key `{}` of `{}` does not start with the prefix `{prefix}`; expected `{expected}`",
                                key.name, e.name
                            ),
                        );
                    }
                }
            }

            if let Some(sup) = &e.supertype_name {
                if model.resolve_entity(sup).is_none() {
                    found.push(
                        Rule::SubUnknownSupertype,
                        at.clone(),
                        format!("supertype `{sup}` of `{}` does not exist", e.name),
                    );
                }
                let participates = model
                    .relationships
                    .iter()
                    .any(|r| r.participants.iter().any(|p| p.entity_name == e.name));
                if e.attributes.is_empty() && !participates {
                    found.push(
                        Rule::SubNoProperty,
                        at.clone(),
                        format!(
                            "subtype `{}` has no attribute and takes part in no relationship",
                            e.name
                        ),
                    );
                }
            }

            if e.is_weak() {
                if let Some(problem) = weak_owner_problem(model, e) {
                    found.push(Rule::WeakNoOwner, at, problem);
                }
            }
        }
    }

    fn check_relationships(&self, model: &ErModel, found: &mut Findings) {
        for r in &model.relationships {
            let at = Location::rel(&r.name);
            self.check_name(&r.name, &at, false, found);
            if r.participants.len() < 2 {
                found.push(
                    Rule::RelArity,
                    at.clone(),
                    format!(
                        "relationship `{}` has {} participant(s); at least two are required",
                        r.name,
                        r.participants.len()
                    ),
                );
            }
            for (i, p) in r.participants.iter().enumerate() {
                if !p.cardinality.is_valid() {
                    found.push(
                        Rule::CardRange,
                        Location::participant(&r.name, i),
                        format!(
                            "cardinality {} of `{}` in `{}` violates min <= max, max >= 1",
                            p.cardinality, p.entity_name, r.name
                        ),
                    );
                }
            }
            if r.is_identifying {
                let weak = r
                    .participants
                    .iter()
                    .filter(|p| {
                        model
                            .resolve_entity(&p.entity_name)
                            .is_some_and(|e| e.is_weak())
                    })
                    .count();
                let owners = r.participants.len() - weak;
                if weak != 1 || owners == 0 {
                    found.push(
                        Rule::WeakNoOwner,
                        at.clone(),
                        format!(
                            "identifying relationship `{}` must join exactly one weak entity to at least one owner (found {weak} weak, {owners} owner)",
                            r.name
                        ),
                    );
                }
            }
            for a in &r.attributes {
                self.check_name(&a.name, &Location::rel_attr(&r.name, &a.name), true, found);
            }
        }
    }

    /// Relationship names are verbs and skip the singular-noun heuristic.
    fn check_name(&self, name: &str, at: &Location, noun: bool, found: &mut Findings) {
        if naming::has_whitespace(name) {
            found.push(
                Rule::NameSpaces,
                at.clone(),
                format!("name `{name}` contains spaces"),
            );
        }
        if naming::has_forbidden_symbols(name) {
            found.push(
                Rule::NameSymbols,
                at.clone(),
                format!("name `{name}` contains characters other than letters"),
            );
        }
        if !naming::has_camel_case_words(name) {
            found.push(
                Rule::NameCase,
                at.clone(),
                format!("name `{name}` is not written as capitalized words"),
            );
        }
        if noun && naming::is_suspected_plural(name, &self.plural_exceptions) {
            found.push(
                Rule::NamePlural,
                at.clone(),
                format!("name `{name}` looks plural; use the singular form"),
            );
        }
    }
}

fn weak_owner_problem(model: &ErModel, e: &EntityType) -> Option<String> {
    let identifying: Vec<_> = model
        .relationships
        .iter()
        .filter(|r| r.is_identifying && r.participants.iter().any(|p| p.entity_name == e.name))
        .collect();
    match identifying.as_slice() {
        [] => Some(format!(
            "weak entity `{}` has no identifying relationship",
            e.name
        )),
        [r] => {
            let has_owner = r.participants.iter().any(|p| {
                p.entity_name != e.name
                    && model
                        .resolve_entity(&p.entity_name)
                        .is_some_and(|o| !o.is_weak())
            });
            (!has_owner).then(|| {
                format!(
                    "identifying relationship `{}` gives weak entity `{}` no regular owner",
                    r.name, e.name
                )
            })
        }
        many => Some(format!(
            "weak entity `{}` takes part in {} identifying relationships",
            e.name,
            many.len()
        )),
    }
}

#[derive(Default)]
struct Findings(Vec<(Rule, Location, String)>);

impl Findings {
    fn push(&mut self, rule: Rule, location: Location, message: String) {
        self.0.push((rule, location, message));
    }
}
