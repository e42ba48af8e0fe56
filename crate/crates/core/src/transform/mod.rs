//! ER to relational mapping.
//!
//! The classical textbook mapping, applied to a model with no lint errors:
//!
//! 1. regular, non-subtype entity -> relation keyed by its designated key;
//! 2. weak entity -> relation keyed by owner key(s) plus partial keys;
//! 3. subtype -> relation keyed by the supertype key, which is also a foreign key;
//! 4. multivalued attribute -> relation `Owner` + `Attribute` keyed by all columns;
//! 5. binary 1:1 and 1:N relationship -> foreign key on the N side (for 1:1 the
//!    mandatory side, else the first participant), carrying relationship attributes;
//! 6. binary M:N and n-ary relationship -> relation keyed by all participant keys.
//!
//! Identifying relationships are absorbed by step 2.

mod ddl;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::location::Location;
use crate::model::{classify_binary, BinaryKind, ErModel, RelationshipType};
use crate::validator::{validate_model, Diagnostic};

pub use ddl::{emit_ddl, Ddl, DeferredForeignKey};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub nullable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ForeignKey {
    pub columns: Vec<String>,
    pub referenced_relation: String,
    pub referenced_columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Relation {
    pub name: String,
    pub columns: Vec<Column>,
    pub primary_key: Vec<String>,
    pub foreign_keys: Vec<ForeignKey>,
    /// The ER element this relation was produced from.
    pub provenance: Location,
    /// Keys other than the primary key; emitted as DDL comments.
    pub alternate_keys: Vec<String>,
}

impl Relation {
    fn new(name: &str, provenance: Location) -> Self {
        Relation {
            name: name.to_owned(),
            columns: Vec::new(),
            primary_key: Vec::new(),
            foreign_keys: Vec::new(),
            provenance,
            alternate_keys: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    fn push_column(&mut self, name: &str, nullable: bool) {
        self.columns.push(Column {
            name: name.to_owned(),
            nullable,
        });
    }

    /// First free spelling among `base`, `qualifier+base`, `qualifier+base+2`, ...
    fn free_column_name(&self, base: &str, qualifier: &str, reserved: &HashSet<String>) -> String {
        let taken = |n: &str| self.column(n).is_some() || reserved.contains(n);
        if !taken(base) {
            return base.to_owned();
        }
        let qualified = format!("{qualifier}{base}");
        if !taken(&qualified) {
            return qualified;
        }
        (2..)
            .map(|i| format!("{qualified}{i}"))
            .find(|n| !taken(n))
            .expect("unbounded search")
    }

    /// Adds columns referencing `target`'s primary key and returns their names.
    fn add_foreign_key(
        &mut self,
        target: &Relation,
        qualifier: &str,
        nullable: bool,
        reserved: &HashSet<String>,
    ) -> Vec<String> {
        let mut local = Vec::new();
        for col in &target.primary_key {
            let name = self.free_column_name(col, qualifier, reserved);
            self.push_column(&name, nullable);
            local.push(name);
        }
        self.foreign_keys.push(ForeignKey {
            columns: local.clone(),
            referenced_relation: target.name.clone(),
            referenced_columns: target.primary_key.clone(),
        });
        local
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schema {
    pub relations: Vec<Relation>,
}

impl Schema {
    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(self).expect("schema serialization is infallible");
        out.push('\n');
        out
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error("model has {} lint error(s); fix them before transforming", .errors.len())]
    Precondition { errors: Vec<Diagnostic> },
    #[error("entity `{0}` is identified through itself")]
    CyclicIdentification(String),
}

pub fn transform(model: &ErModel) -> Result<Schema, TransformError> {
    let errors: Vec<Diagnostic> = validate_model(model)
        .into_iter()
        .filter(Diagnostic::is_error)
        .collect();
    if !errors.is_empty() {
        return Err(TransformError::Precondition { errors });
    }
    Mapper::new(model).run()
}

struct Mapper<'m> {
    model: &'m ErModel,
    /// Entity name -> relation, built on demand so owners precede dependents.
    entity_relations: HashMap<String, Relation>,
    in_progress: HashSet<String>,
    relation_names: HashSet<String>,
}

impl<'m> Mapper<'m> {
    fn new(model: &'m ErModel) -> Self {
        Mapper {
            model,
            entity_relations: HashMap::new(),
            in_progress: HashSet::new(),
            relation_names: model.entities.iter().map(|e| e.name.clone()).collect(),
        }
    }

    fn run(mut self) -> Result<Schema, TransformError> {
        for e in &self.model.entities {
            self.entity_relation(&e.name)?;
        }
        let step_of = |name: &str| {
            let e = self.model.resolve_entity(name).expect("entity exists");
            if e.is_weak() {
                2
            } else if e.is_subtype() {
                3
            } else {
                1
            }
        };
        let mut order: Vec<&str> = self
            .model
            .entities
            .iter()
            .map(|e| e.name.as_str())
            .collect();
        order.sort_by_key(|n| step_of(n));
        let mut entity_relations = std::mem::take(&mut self.entity_relations);

        // Step 5 mutates entity relations before they are emitted.
        for rel in &self.model.relationships {
            if rel.is_identifying || rel.participants.len() != 2 {
                continue;
            }
            let kind = classify_binary(rel).expect("binary");
            let fk_side = match kind {
                BinaryKind::ManyToMany => continue,
                BinaryKind::OneToMany { n_side_index, .. } => n_side_index,
                BinaryKind::OneToOne => {
                    let mandatory = |i: usize| rel.participants[i].cardinality.min >= 1;
                    if !mandatory(0) && mandatory(1) {
                        1
                    } else {
                        0
                    }
                }
            };
            let holder = &rel.participants[fk_side];
            let target_name = &rel.participants[1 - fk_side].entity_name;
            let target = entity_relations[target_name].clone();
            let relation = entity_relations
                .get_mut(&holder.entity_name)
                .expect("built");
            relation.add_foreign_key(
                &target,
                &rel.name,
                holder.cardinality.min == 0,
                &HashSet::new(),
            );
            for a in &rel.attributes {
                let name = relation.free_column_name(&a.name, &rel.name, &HashSet::new());
                relation.push_column(&name, true);
            }
        }

        let mut relations: Vec<Relation> = order
            .iter()
            .map(|n| entity_relations.remove(*n).expect("built once"))
            .collect();

        // Step 4.
        for e in &self.model.entities {
            for a in e.attributes.iter().filter(|a| a.is_multivalued) {
                let owner = relations.iter().find(|r| r.name == e.name).expect("built");
                let name = self.fresh_relation_name(&format!("{}{}", e.name, a.name));
                let mut r = Relation::new(&name, Location::entity_attr(&e.name, &a.name));
                let reserved = HashSet::from([a.name.clone()]);
                let mut pk = r.add_foreign_key(owner, &e.name, false, &reserved);
                r.push_column(&a.name, false);
                pk.push(a.name.clone());
                r.primary_key = pk;
                relations.push(r);
            }
        }

        // Step 6.
        for rel in &self.model.relationships {
            if rel.is_identifying || !needs_own_relation(rel) {
                continue;
            }
            let name = self.fresh_relation_name(&rel.name);
            let mut r = Relation::new(&name, Location::rel(&rel.name));
            let reserved: HashSet<String> = rel.attributes.iter().map(|a| a.name.clone()).collect();
            let mut pk = Vec::new();
            for p in &rel.participants {
                let target = relations
                    .iter()
                    .find(|t| t.name == p.entity_name)
                    .expect("participant relation exists");
                pk.extend(r.add_foreign_key(target, &p.entity_name, false, &reserved));
            }
            for a in &rel.attributes {
                r.push_column(&a.name, true);
            }
            r.primary_key = pk;
            relations.push(r);
        }

        Ok(Schema { relations })
    }

    fn fresh_relation_name(&mut self, base: &str) -> String {
        let name = if self.relation_names.contains(base) {
            (2..)
                .map(|i| format!("{base}{i}"))
                .find(|n| !self.relation_names.contains(n))
                .expect("unbounded search")
        } else {
            base.to_owned()
        };
        self.relation_names.insert(name.clone());
        name
    }

    /// Steps 1 to 3 for one entity, building whatever it depends on first.
    fn entity_relation(&mut self, name: &str) -> Result<Relation, TransformError> {
        if let Some(r) = self.entity_relations.get(name) {
            return Ok(r.clone());
        }
        if !self.in_progress.insert(name.to_owned()) {
            return Err(TransformError::CyclicIdentification(name.to_owned()));
        }
        let e = self.model.resolve_entity(name).expect("validated model");
        let mut r = Relation::new(&e.name, Location::entity(&e.name));
        let own: Vec<_> = e.attributes.iter().filter(|a| !a.is_multivalued).collect();
        let reserved: HashSet<String> = own.iter().map(|a| a.name.clone()).collect();
        let mut pk = Vec::new();

        let identifying: Vec<&RelationshipType> = if e.is_weak() {
            self.model
                .relationships
                .iter()
                .filter(|rel| {
                    rel.is_identifying && rel.participants.iter().any(|p| p.entity_name == e.name)
                })
                .collect()
        } else {
            Vec::new()
        };

        if e.is_weak() {
            for rel in &identifying {
                for p in &rel.participants {
                    if p.entity_name == e.name {
                        continue;
                    }
                    let owner = self.entity_relation(&p.entity_name)?;
                    pk.extend(r.add_foreign_key(&owner, &rel.name, false, &reserved));
                }
            }
        }
        if let Some(sup) = &e.supertype_name {
            let parent = self.entity_relation(sup)?;
            let cols = r.add_foreign_key(&parent, sup, false, &reserved);
            if !e.is_weak() {
                pk.extend(cols);
            }
        }
        let designated = e.designated_key().map(|k| k.name.clone());
        for a in &own {
            if a.is_key {
                r.push_column(&a.name, false);
                if !e.is_subtype() && designated.as_deref() == Some(a.name.as_str()) {
                    pk.push(a.name.clone());
                } else {
                    r.alternate_keys.push(a.name.clone());
                }
            } else if a.is_partial_key {
                r.push_column(&a.name, false);
                pk.push(a.name.clone());
            } else {
                r.push_column(&a.name, true);
            }
        }
        for rel in &identifying {
            for a in &rel.attributes {
                let col = r.free_column_name(&a.name, &rel.name, &HashSet::new());
                r.push_column(&col, true);
            }
        }
        r.primary_key = pk;
        self.in_progress.remove(name);
        self.entity_relations.insert(name.to_owned(), r.clone());
        Ok(r)
    }
}

fn needs_own_relation(rel: &RelationshipType) -> bool {
    match rel.participants.len() {
        2 => classify_binary(rel).is_ok_and(|k| k == BinaryKind::ManyToMany),
        n => n >= 3,
    }
}
