//! Automatic repair of the fixable naming rules.
//!
//! Each non-conforming name goes through the same pipeline: split into words
//! at symbols, spaces, digits and case changes; re-case each word; concatenate.
//! After all names are normalized, designated keys of regular entities get
//! their entity-name prefix. References to renamed elements are rewritten.

use serde::{Deserialize, Serialize};

use crate::location::Location;
use crate::model::{EntityType, ErModel};
use crate::naming;
use crate::validator::{prefix_pool, validate_model, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rename {
    pub location: Location,
    pub old_name: String,
    pub new_name: String,
    pub rule_id: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SkipReason {
    /// The new name is already taken in the same scope, or would capture a
    /// dangling supertype reference.
    Collision,
    /// Fewer than two letters; no conforming spelling exists.
    NoLetters,
    /// The owning entity's name could not be normalized, so no prefix applies.
    UnfixedEntityName,
}

/// A fix that was not applied; its diagnostic remains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SkippedFix {
    pub location: Location,
    pub old_name: String,
    pub proposed_name: Option<String>,
    pub rule_id: Rule,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixReport {
    pub renames: Vec<Rename>,
    pub skipped: Vec<SkippedFix>,
    /// Non-fixable diagnostics still present in the repaired model.
    pub untouched: usize,
}

pub fn fix(model: &ErModel) -> (ErModel, FixReport) {
    let mut fixer = Fixer {
        model: model.clone(),
        renames: Vec::new(),
        skipped: Vec::new(),
    };
    loop {
        fixer.skipped.clear();
        let mut changed = false;
        while fixer.normalize_pass() {
            changed = true;
            fixer.skipped.clear();
        }
        if fixer.prefix_pass() {
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let untouched = validate_model(&fixer.model)
        .iter()
        .filter(|d| !d.fixable)
        .count();
    let report = FixReport {
        renames: fixer.renames,
        skipped: fixer.skipped,
        untouched,
    };
    (fixer.model, report)
}

fn naming_rule(name: &str) -> Option<Rule> {
    if naming::has_whitespace(name) {
        Some(Rule::NameSpaces)
    } else if naming::has_forbidden_symbols(name) {
        Some(Rule::NameSymbols)
    } else if !naming::has_camel_case_words(name) {
        Some(Rule::NameCase)
    } else {
        None
    }
}

/// Prefix to insert in front of a key. A prefix that stops right after a
/// capital would leave a one-letter word, so it is completed to the end of
/// that word in the entity name.
fn insertion_prefix(entity_name: &str, prefix: &str) -> String {
    if !prefix.ends_with(|c: char| c.is_ascii_uppercase()) {
        return prefix.to_owned();
    }
    let rest = &entity_name[prefix.len()..];
    let tail: String = rest.chars().take_while(char::is_ascii_lowercase).collect();
    format!("{prefix}{tail}")
}

struct Fixer {
    model: ErModel,
    renames: Vec<Rename>,
    skipped: Vec<SkippedFix>,
}

impl Fixer {
    /// Tries to normalize one name. `taken` holds the sibling names in the same
    /// scope, excluding `old`.
    fn propose(&mut self, location: Location, old: &str, taken: &[String]) -> Option<String> {
        let rule = naming_rule(old)?;
        let Some(new) = naming::normalize_name(old) else {
            self.skip(location, old, None, rule, SkipReason::NoLetters);
            return None;
        };
        if taken.contains(&new) {
            self.skip(location, old, Some(new), rule, SkipReason::Collision);
            return None;
        }
        self.renames.push(Rename {
            location,
            old_name: old.to_owned(),
            new_name: new.clone(),
            rule_id: rule,
        });
        Some(new)
    }

    fn skip(
        &mut self,
        location: Location,
        old: &str,
        proposed: Option<String>,
        rule: Rule,
        reason: SkipReason,
    ) {
        self.skipped.push(SkippedFix {
            location,
            old_name: old.to_owned(),
            proposed_name: proposed,
            rule_id: rule,
            reason,
        });
    }

    fn normalize_pass(&mut self) -> bool {
        let mut changed = false;
        for i in 0..self.model.entities.len() {
            let old = self.model.entities[i].name.clone();
            let mut taken = sibling_names(self.model.entities.iter().map(|e| &e.name), i);
            // A dangling supertype reference must not start resolving.
            taken.extend(
                self.model
                    .entities
                    .iter()
                    .filter_map(|e| e.supertype_name.clone())
                    .filter(|s| self.model.resolve_entity(s).is_none()),
            );
            if let Some(new) = self.propose(Location::entity(&old), &old, &taken) {
                self.rename_entity(&old, &new);
                changed = true;
            }
            for j in 0..self.model.entities[i].attributes.len() {
                let e = &self.model.entities[i];
                let old_attr = e.attributes[j].name.clone();
                let taken = sibling_names(e.attributes.iter().map(|a| &a.name), j);
                let at = Location::entity_attr(&e.name, &old_attr);
                if let Some(new) = self.propose(at, &old_attr, &taken) {
                    rename_attribute(&mut self.model.entities[i], j, &new);
                    changed = true;
                }
            }
        }
        for i in 0..self.model.relationships.len() {
            let old = self.model.relationships[i].name.clone();
            let taken = sibling_names(self.model.relationships.iter().map(|r| &r.name), i);
            if let Some(new) = self.propose(Location::rel(&old), &old, &taken) {
                self.model.relationships[i].name = new;
                changed = true;
            }
            for j in 0..self.model.relationships[i].attributes.len() {
                let r = &self.model.relationships[i];
                let old_attr = r.attributes[j].name.clone();
                let taken = sibling_names(r.attributes.iter().map(|a| &a.name), j);
                let at = Location::rel_attr(&r.name, &old_attr);
                if let Some(new) = self.propose(at, &old_attr, &taken) {
                    self.model.relationships[i].attributes[j].name = new;
                    changed = true;
                }
            }
        }
        changed
    }

    /// Adds the entity-name prefix to designated keys. The prefix pool is taken
    /// once, before any key is renamed.
    fn prefix_pass(&mut self) -> bool {
        let pool: Vec<String> = prefix_pool(&self.model)
            .into_iter()
            .map(str::to_owned)
            .collect();
        let mut changed = false;
        for i in 0..self.model.entities.len() {
            let e = &self.model.entities[i];
            if !e.is_root_regular() {
                continue;
            }
            let Some(key) = e.designated_key() else {
                continue;
            };
            let prefix = naming::compute_prefix(&e.name, &pool);
            if key.name.starts_with(&prefix) {
                continue;
            }
            let at = Location::entity_attr(&e.name, &key.name);
            let old = key.name.clone();
            if !naming::is_conforming_name(&e.name) || !naming::is_conforming_name(&old) {
                self.skip(
                    at,
                    &old,
                    None,
                    Rule::KeyPrefix,
                    SkipReason::UnfixedEntityName,
                );
                continue;
            }
            let new = format!("{}{}", insertion_prefix(&e.name, &prefix), old);
            let j = e
                .attributes
                .iter()
                .position(|a| a.name == old)
                .expect("designated key exists");
            if e.attributes.iter().any(|a| a.name == new) {
                self.skip(at, &old, Some(new), Rule::KeyPrefix, SkipReason::Collision);
                continue;
            }
            self.renames.push(Rename {
                location: at,
                old_name: old,
                new_name: new.clone(),
                rule_id: Rule::KeyPrefix,
            });
            rename_attribute(&mut self.model.entities[i], j, &new);
            changed = true;
        }
        changed
    }

    fn rename_entity(&mut self, old: &str, new: &str) {
        for e in &mut self.model.entities {
            if e.name == old {
                e.name = new.to_owned();
            }
            if e.supertype_name.as_deref() == Some(old) {
                e.supertype_name = Some(new.to_owned());
            }
        }
        for r in &mut self.model.relationships {
            for p in &mut r.participants {
                if p.entity_name == old {
                    p.entity_name = new.to_owned();
                }
            }
        }
    }
}

fn sibling_names<'a>(names: impl Iterator<Item = &'a String>, skip: usize) -> Vec<String> {
    names
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, n)| n.clone())
        .collect()
}

fn rename_attribute(entity: &mut EntityType, index: usize, new: &str) {
    let old = std::mem::replace(&mut entity.attributes[index].name, new.to_owned());
    if entity.most_desired_key.as_deref() == Some(old.as_str()) {
        entity.most_desired_key = Some(new.to_owned());
    }
    for group in &mut entity.composite_keys {
        for member in group.iter_mut() {
            if *member == old {
                *member = new.to_owned();
            }
        }
    }
}
