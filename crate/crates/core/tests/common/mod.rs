//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]


use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use erdl::naming::{canonical_key, compute_prefix};
use erdl::{
    classify_binary, validate_model, Attribute, BinaryKind, Cardinality, EntityKind, EntityType,
    ErModel, Location, MaxCardinality, Participation, RelationshipType, Schema,
};
use proptest::prelude::*;
use proptest::sample::Index;

pub fn corpus(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(rel)
}

pub fn read_corpus(rel: &str) -> String {
    std::fs::read_to_string(corpus(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Loads an `.erdl` or `.json` corpus file.
pub fn load_corpus(rel: &str) -> erdl::LocatedModel {
    let text = read_corpus(rel);
    if rel.ends_with(".json") {
        erdl::LocatedModel::unlocated(erdl::load_json(&text).unwrap())
    } else {
        erdl::parse(&text, rel).unwrap()
    }
}

/// Mutant file, designated rule, designated location.
pub const MUTANTS: [(&str, &str, &str); 15] = [
    (
        "mutants/reg1_missing_key.erdl",
        "R-REG-1",
        "entity:Employee",
    ),
    (
        "mutants/reg2_multivalued_key.erdl",
        "R-REG-2",
        "entity:Department/attr:DepNo",
    ),
    (
        "mutants/reg3_composite_key.erdl",
        "R-REG-3",
        "entity:EmployeeBankAccount",
    ),
    (
        "mutants/reg4_duplicate_name.erdl",
        "R-REG-4",
        "entity:BookCase",
    ),
    (
        "mutants/sub1_empty_subtype.erdl",
        "R-SUB-1",
        "entity:Manager",
    ),
    (
        "mutants/sub2_dangling_supertype.json",
        "R-SUB-2",
        "entity:Manager",
    ),
    (
        "mutants/weak1_weak_with_key.erdl",
        "R-WEAK-1",
        "entity:Dependent/attr:Ssn",
    ),
    (
        "mutants/weak2_missing_owner.erdl",
        "R-WEAK-2",
        "entity:Dependent",
    ),
    (
        "mutants/key1_missing_prefix.erdl",
        "R-KEY-1",
        "entity:Department/attr:No",
    ),
    (
        "mutants/name1_bad_casing.erdl",
        "R-NAME-1",
        "entity:Employee/attr:startDate",
    ),
    (
        "mutants/name2_plural.erdl",
        "R-NAME-2",
        "entity:Department/attr:Locations",
    ),
    (
        "mutants/name3_symbol.erdl",
        "R-NAME-3",
        "entity:Employee/attr:Emp_No",
    ),
    (
        "mutants/name4_space.erdl",
        "R-NAME-4",
        "rel:Manages/attr:Start Date",
    ),
    (
        "mutants/card1_min_exceeds_max.erdl",
        "R-CARD-1",
        "rel:Assigned/participant:1",
    ),
    ("mutants/rel_arity_unary.json", "R-REL-ARITY", "rel:Retired"),
];

const KEYWORDS: [&str; 10] = [
    "model",
    "entity",
    "weak",
    "isa",
    "rel",
    "identifying",
    "attrs",
    "key",
    "partialkey",
    "multi",
];

/// Any name the data model accepts: CamelCase, sloppy identifiers, keywords
/// and arbitrary quoted text.
pub fn any_name() -> impl Strategy<Value = String> {
    prop_oneof![
        5 => "[A-Z][a-z]{1,6}([A-Z][a-z]{1,4}){0,2}",
        3 => "[A-Za-z_0-9][A-Za-z0-9_/-]{0,8}",
        2 => "[ -~\té\n]{1,6}",
        1 => prop::sample::select(KEYWORDS.to_vec()).prop_map(str::to_owned),
    ]
}

/// Well-formed cardinalities, with max = 1 common enough to give plenty of
/// 1:1 and 1:N relationships.
fn any_cardinality() -> impl Strategy<Value = Cardinality> {
    prop_oneof![
        2 => (0u32..2).prop_map(|min| Cardinality::new(min, 1)),
        3 => (0u32..6, prop::option::weighted(0.6, 0u32..8)).prop_map(|(min, extra)| match extra {
            Some(e) => Cardinality::new(min, min.max(1) + e),
            None => Cardinality::unbounded(min),
        }),
    ]
}

#[derive(Debug, Clone)]
struct RawEntity {
    name: String,
    weak: bool,
    supertype: Option<Index>,
    /// Name, flag (0 plain, 1 key, 2 partial key), multivalued.
    attributes: Vec<(String, u8, bool)>,
    desired: Option<Index>,
    groups: Vec<Vec<Index>>,
}

#[derive(Debug, Clone)]
struct RawRel {
    name: String,
    identifying: bool,
    participants: Vec<(Index, Cardinality)>,
    attributes: Vec<String>,
}

fn raw_entity() -> impl Strategy<Value = RawEntity> {
    (
        any_name(),
        prop::bool::weighted(0.2),
        prop::option::weighted(0.3, any::<Index>()),
        prop::collection::vec((any_name(), 0u8..3, prop::bool::weighted(0.15)), 0..5),
        prop::option::weighted(0.2, any::<Index>()),
        prop::collection::vec(prop::collection::vec(any::<Index>(), 2..4), 0..2),
    )
        .prop_map(
            |(name, weak, supertype, attributes, desired, groups)| RawEntity {
                name,
                weak,
                supertype,
                attributes,
                desired,
                groups,
            },
        )
}

fn raw_rel() -> impl Strategy<Value = RawRel> {
    (
        any_name(),
        prop::bool::weighted(0.15),
        prop::collection::vec((any::<Index>(), any_cardinality()), 2..5),
        prop::collection::vec(any_name(), 0..3),
    )
        .prop_map(|(name, identifying, participants, attributes)| RawRel {
            name,
            identifying,
            participants,
            attributes,
        })
}

fn dedup<T>(items: Vec<T>, key: impl Fn(&T) -> String) -> Vec<T> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|i| seen.insert(key(i))).collect()
}

/// Models that satisfy every structural invariant of the data model but need
/// not conform to the notation rules.
pub fn valid_model() -> impl Strategy<Value = ErModel> {
    (
        any_name(),
        prop::collection::vec(raw_entity(), 0..6),
        prop::collection::vec(raw_rel(), 0..5),
    )
        .prop_map(|(name, raw_entities, raw_rels)| {
            let raw_entities = dedup(raw_entities, |e| e.name.clone());
            let mut model = ErModel::new(&name);
            for (i, raw) in raw_entities.iter().enumerate() {
                let attrs = dedup(raw.attributes.clone(), |a| a.0.clone());
                let attributes: Vec<Attribute> = attrs
                    .iter()
                    .map(|(n, flag, multi)| Attribute {
                        name: n.clone(),
                        is_key: *flag == 1,
                        is_partial_key: *flag == 2 && raw.weak,
                        is_multivalued: *multi,
                    })
                    .collect();
                let keys: Vec<&Attribute> = attributes.iter().filter(|a| a.is_key).collect();
                let most_desired_key = match (raw.desired, keys.is_empty()) {
                    (Some(ix), false) => Some(ix.get(&keys).name.clone()),
                    _ => None,
                };
                let mut composite_keys = Vec::new();
                if attributes.len() >= 2 {
                    for g in &raw.groups {
                        let members = dedup(
                            g.iter()
                                .map(|ix| ix.get(&attributes).name.clone())
                                .collect(),
                            Clone::clone,
                        );
                        if members.len() >= 2 {
                            composite_keys.push(members);
                        }
                    }
                }
                let supertype_name = match raw.supertype {
                    Some(ix) if i > 0 => Some(raw_entities[ix.index(i)].name.clone()),
                    _ => None,
                };
                model.entities.push(EntityType {
                    name: raw.name.clone(),
                    kind: if raw.weak {
                        EntityKind::Weak
                    } else {
                        EntityKind::Regular
                    },
                    supertype_name,
                    attributes,
                    most_desired_key,
                    composite_keys,
                });
            }
            if !model.entities.is_empty() {
                for raw in dedup(raw_rels, |r| r.name.clone()) {
                    let participants = raw
                        .participants
                        .iter()
                        .map(|(ix, c)| Participation::new(&ix.get(&model.entities).name, *c))
                        .collect();
                    let attributes = dedup(raw.attributes, Clone::clone)
                        .iter()
                        .map(|n| Attribute::plain(n))
                        .collect();
                    model.relationships.push(RelationshipType {
                        name: raw.name,
                        is_identifying: raw.identifying,
                        participants,
                        attributes,
                    });
                }
            }
            model
        })
}

/// A word of the CamelCase vocabulary, rarely ending in `s`.
fn word() -> impl Strategy<Value = String> {
    "[A-Z][a-z]{1,6}"
}

fn conforming_name() -> impl Strategy<Value = String> {
    prop::collection::vec(word(), 1..3).prop_map(|w| w.concat())
}

/// Models with zero lint errors: CamelCase letters-only names, prefixed
/// designated keys, owned weak entities, subtypes with own attributes and
/// well-formed cardinalities.
pub fn conforming_model() -> impl Strategy<Value = ErModel> {
    let entity = (
        conforming_name(),
        0u8..10,
        any::<Index>(),
        prop::collection::vec((conforming_name(), prop::bool::weighted(0.2)), 0..4),
        prop::sample::select(vec!["No", "Id", "Code", "Key"]),
        prop::bool::weighted(0.2),
    );
    let rel = (
        conforming_name(),
        prop::collection::vec((any::<Index>(), any_cardinality()), 2..4).prop_map(|mut p| {
            // Keep most relationships binary.
            if p.len() == 3 && p[2].0.index(4) != 0 {
                p.pop();
            }
            p
        }),
        prop::collection::vec(conforming_name(), 0..2),
    );
    (
        conforming_name(),
        prop::collection::vec(entity, 1..7),
        prop::collection::vec(rel, 0..5),
    )
        .prop_map(|(model_name, raw_entities, raw_rels)| {
            let raw_entities = dedup(raw_entities, |e| canonical_key(&e.0));
            let mut model = ErModel::new(&model_name);
            let mut rel_names = HashSet::new();
            // Kinds: 0..=5 root regular, 6..=7 subtype, 8..=9 weak.
            for (name, kind, pick, attrs, key_suffix, alt_key) in &raw_entities {
                let earlier_non_weak: Vec<&EntityType> =
                    model.entities.iter().filter(|e| !e.is_weak()).collect();
                let kind = if *kind >= 6 && earlier_non_weak.is_empty() {
                    0
                } else {
                    *kind
                };
                let mut attributes: Vec<Attribute> = dedup(attrs.clone(), |a| canonical_key(&a.0))
                    .into_iter()
                    .map(|(n, multi)| Attribute {
                        name: n,
                        is_key: false,
                        is_partial_key: false,
                        is_multivalued: multi,
                    })
                    .collect();
                match kind {
                    0..=5 => {
                        let mut e = EntityType::regular(name, Vec::new());
                        // Key placeholder; named once all root names are known.
                        e.attributes.push(Attribute::key(key_suffix));
                        if *alt_key {
                            if let Some(a) = attributes.iter_mut().find(|a| !a.is_multivalued) {
                                a.is_key = true;
                            }
                        }
                        e.attributes.extend(attributes);
                        model.entities.push(e);
                    }
                    6..=7 => {
                        let sup = pick.get(&earlier_non_weak).name.clone();
                        if attributes.is_empty() {
                            attributes.push(Attribute::plain("Note"));
                        }
                        model
                            .entities
                            .push(EntityType::subtype(name, &sup, attributes));
                    }
                    _ => {
                        let owner = pick.get(&earlier_non_weak).name.clone();
                        let mut partial = Attribute::partial_key("Seq");
                        if let Some(first) = attributes.iter().position(|a| !a.is_multivalued) {
                            partial = Attribute::partial_key(&attributes.remove(first).name);
                        }
                        let mut all = vec![partial];
                        all.extend(
                            attributes
                                .into_iter()
                                .filter(|a| canonical_key(&a.name) != "seq"),
                        );
                        model.entities.push(EntityType::weak(name, all));
                        let mut rel_name = format!("{name}Of");
                        while !rel_names.insert(rel_name.clone()) {
                            rel_name.push_str("Link");
                        }
                        model.relationships.push(RelationshipType::identifying(
                            &rel_name,
                            vec![
                                Participation::new(name, Cardinality::new(1, 1)),
                                Participation::new(&owner, Cardinality::unbounded(0)),
                            ],
                        ));
                    }
                }
            }

            let pool: Vec<String> = model
                .entities
                .iter()
                .filter(|e| e.is_root_regular())
                .map(|e| e.name.clone())
                .collect();
            for e in model.entities.iter_mut().filter(|e| e.is_root_regular()) {
                let prefix = word_completed_prefix(&e.name, &pool);
                let key = format!("{prefix}{}", e.attributes[0].name);
                e.attributes[0].name = key.clone();
                let ck = canonical_key(&key);
                let mut seen = HashSet::from([ck]);
                let mut i = 1;
                while i < e.attributes.len() {
                    if seen.insert(canonical_key(&e.attributes[i].name)) {
                        i += 1;
                    } else {
                        e.attributes.remove(i);
                    }
                }
            }

            for (name, parts, attrs) in raw_rels {
                if !rel_names.insert(name.clone()) {
                    continue;
                }
                let participants = parts
                    .iter()
                    .map(|(ix, c)| Participation::new(&ix.get(&model.entities).name, *c))
                    .collect();
                let attributes = dedup(attrs, |a| canonical_key(a))
                    .iter()
                    .map(|a| Attribute::plain(a))
                    .collect();
                model
                    .relationships
                    .push(RelationshipType::new(&name, participants).with_attributes(attributes));
            }
            model
        })
}

/// The entity-name prefix, completed to a word boundary when it stops right
/// after a capital letter.
pub fn word_completed_prefix(name: &str, pool: &[String]) -> String {
    let prefix = compute_prefix(name, pool);
    if prefix.ends_with(|c: char| c.is_ascii_uppercase()) {
        let tail: String = name[prefix.len()..]
            .chars()
            .take_while(char::is_ascii_lowercase)
            .collect();
        format!("{prefix}{tail}")
    } else {
        prefix
    }
}

/// Spelling damage the fixer is expected to undo.
#[derive(Debug, Clone, Copy)]
pub enum Damage {
    LowerFirst,
    Underscores,
    Spaces,
    Digit,
    DropKeyPrefix,
}

fn damage(name: &str, how: Damage) -> String {
    let words = erdl::naming::split_words(name);
    match how {
        Damage::LowerFirst => {
            let mut c = name.chars();
            c.next()
                .map(|f| f.to_ascii_lowercase().to_string() + c.as_str())
                .unwrap_or_default()
        }
        Damage::Underscores => words.join("_").to_ascii_lowercase(),
        Damage::Spaces => words.join(" "),
        Damage::Digit => format!("{name}2"),
        Damage::DropKeyPrefix => name.to_owned(),
    }
}

/// Conforming models with random spelling damage applied to some names.
pub fn fixable_model() -> impl Strategy<Value = ErModel> {
    let how = prop::sample::select(vec![
        Damage::LowerFirst,
        Damage::Underscores,
        Damage::Spaces,
        Damage::Digit,
        Damage::DropKeyPrefix,
    ]);
    (
        conforming_model(),
        prop::collection::vec((any::<Index>(), how), 0..6),
    )
        .prop_map(|(mut model, hits)| {
            let locations: Vec<Location> = model
                .locations()
                .into_iter()
                .filter(|l| !matches!(l, Location::Participant(..)))
                .collect();
            let mut done = HashSet::new();
            for (ix, how) in hits {
                let loc = ix.get(&locations).clone();
                if !done.insert(loc.to_string()) {
                    continue;
                }
                apply_damage(&mut model, &loc, how);
            }
            model
        })
}

fn apply_damage(model: &mut ErModel, loc: &Location, how: Damage) {
    let current = |m: &ErModel| -> Option<String> {
        Some(match loc {
            Location::Entity(e) => m.resolve_entity(e)?.name.clone(),
            Location::EntityAttr(e, a) => m.resolve_entity(e)?.attribute(a)?.name.clone(),
            Location::Rel(r) => m.relationship(r)?.name.clone(),
            Location::RelAttr(r, a) => m
                .relationship(r)?
                .attributes
                .iter()
                .find(|x| x.name == *a)?
                .name
                .clone(),
            Location::Participant(..) => return None,
        })
    };
    let Some(old) = current(model) else { return };
    match (loc, how) {
        (Location::EntityAttr(e, a), Damage::DropKeyPrefix) => {
            let ent = model.entities.iter_mut().find(|x| x.name == *e).unwrap();
            if !ent.is_root_regular() || ent.designated_key().map(|k| &k.name) != Some(a) {
                return;
            }
            let words = erdl::naming::split_words(a);
            let Some(last) = words.last().cloned() else {
                return;
            };
            if last.len() < 2
                || ent
                    .attributes
                    .iter()
                    .any(|x| canonical_key(&x.name) == canonical_key(&last))
            {
                return;
            }
            ent.attributes
                .iter_mut()
                .find(|x| x.name == *a)
                .unwrap()
                .name = last;
        }
        (_, Damage::DropKeyPrefix) => {}
        (Location::Entity(_), how) => {
            let new = damage(&old, how);
            if model.resolve_entity(&new).is_some() {
                return;
            }
            for e in &mut model.entities {
                if e.name == old {
                    e.name = new.clone();
                }
                if e.supertype_name.as_deref() == Some(old.as_str()) {
                    e.supertype_name = Some(new.clone());
                }
            }
            for r in &mut model.relationships {
                for p in &mut r.participants {
                    if p.entity_name == old {
                        p.entity_name = new.clone();
                    }
                }
            }
        }
        (Location::EntityAttr(e, a), how) => {
            let new = damage(&old, how);
            let ent = model.entities.iter_mut().find(|x| x.name == *e).unwrap();
            if ent.attribute(&new).is_some() {
                return;
            }
            ent.attributes
                .iter_mut()
                .find(|x| x.name == *a)
                .unwrap()
                .name = new;
        }
        (Location::Rel(r), how) => {
            let new = damage(&old, how);
            if model.relationship(&new).is_some() {
                return;
            }
            model
                .relationships
                .iter_mut()
                .find(|x| x.name == *r)
                .unwrap()
                .name = new;
        }
        (Location::RelAttr(r, a), how) => {
            let new = damage(&old, how);
            let rel = model
                .relationships
                .iter_mut()
                .find(|x| x.name == *r)
                .unwrap();
            if rel.attributes.iter().any(|x| x.name == new) {
                return;
            }
            rel.attributes
                .iter_mut()
                .find(|x| x.name == *a)
                .unwrap()
                .name = new;
        }
        (Location::Participant(..), _) => {}
    }
}

/// Deletes the element at `loc`, together with whatever would otherwise
/// dangle (participations of a deleted entity, supertype links to it).
pub fn remove_element(model: &mut ErModel, loc: &Location) {
    match loc {
        Location::Entity(name) => {
            model.entities.retain(|e| e.name != *name);
            for e in &mut model.entities {
                if e.supertype_name.as_deref() == Some(name.as_str()) {
                    e.supertype_name = None;
                }
            }
            for r in &mut model.relationships {
                r.participants.retain(|p| p.entity_name != *name);
            }
        }
        Location::EntityAttr(e, a) => {
            let ent = model.entities.iter_mut().find(|x| x.name == *e).unwrap();
            ent.attributes.retain(|x| x.name != *a);
            if ent.most_desired_key.as_deref() == Some(a.as_str()) {
                ent.most_desired_key = None;
            }
            for g in &mut ent.composite_keys {
                g.retain(|m| m != a);
            }
            ent.composite_keys.retain(|g| g.len() >= 2);
        }
        Location::Rel(r) => model.relationships.retain(|x| x.name != *r),
        Location::RelAttr(r, a) => {
            let rel = model
                .relationships
                .iter_mut()
                .find(|x| x.name == *r)
                .unwrap();
            rel.attributes.retain(|x| x.name != *a);
        }
        Location::Participant(r, i) => {
            let rel = model
                .relationships
                .iter_mut()
                .find(|x| x.name == *r)
                .unwrap();
            rel.participants.remove(*i);
        }
    }
}

pub fn total_attributes(model: &ErModel) -> usize {
    model
        .entities
        .iter()
        .map(|e| e.attributes.len())
        .sum::<usize>()
        + model
            .relationships
            .iter()
            .map(|r| r.attributes.len())
            .sum::<usize>()
}

pub fn isa_links(model: &ErModel) -> usize {
    model
        .entities
        .iter()
        .filter(|e| {
            e.supertype_name
                .as_deref()
                .is_some_and(|s| model.resolve_entity(s).is_some())
        })
        .count()
}

pub fn max_is_one(c: &Cardinality) -> bool {
    c.max == MaxCardinality::Finite(1)
}

/// Non-fixable diagnostics keyed by element position, which renames preserve.
pub fn non_fixable_by_position(m: &ErModel) -> BTreeMap<(usize, String), usize> {
    let order = m.locations();
    let mut out = BTreeMap::new();
    for d in validate_model(m).into_iter().filter(|d| !d.fixable) {
        let pos = order
            .iter()
            .position(|l| *l == d.location)
            .expect("location exists");
        *out.entry((pos, d.rule_id.id().to_owned())).or_insert(0) += 1;
    }
    out
}

/// Columns a relation carries that are not ER attributes: foreign-key columns.
fn fk_columns(r: &erdl::Relation) -> HashSet<&str> {
    r.foreign_keys
        .iter()
        .flat_map(|f| f.columns.iter().map(String::as_str))
        .collect()
}

pub fn check_schema(model: &ErModel, schema: &Schema) -> Result<(), String> {
    // Foreign-key closure.
    for r in &schema.relations {
        let names: HashSet<&str> = r.columns.iter().map(|c| c.name.as_str()).collect();
        if names.len() != r.columns.len() {
            return Err(format!("{}: duplicate column", r.name));
        }
        for k in &r.primary_key {
            if !names.contains(k.as_str()) {
                return Err(format!("{}: key column {k} missing", r.name));
            }
        }
        for fk in &r.foreign_keys {
            let target = schema.relation(&fk.referenced_relation).ok_or_else(|| {
                format!("{}: dangling reference {}", r.name, fk.referenced_relation)
            })?;
            if fk.referenced_columns != target.primary_key {
                return Err(format!(
                    "{} -> {}: not the primary key",
                    r.name, target.name
                ));
            }
            if fk.columns.len() != fk.referenced_columns.len()
                || fk.columns.iter().any(|c| !names.contains(c.as_str()))
            {
                return Err(format!("{}: foreign key columns missing", r.name));
            }
        }
    }

    // One relation per entity, per multivalued attribute, per M:N or n-ary relationship.
    let mut by_provenance: BTreeMap<String, usize> = BTreeMap::new();
    for r in &schema.relations {
        *by_provenance.entry(r.provenance.to_string()).or_insert(0) += 1;
    }
    for e in &model.entities {
        if by_provenance.get(&Location::entity(&e.name).to_string()) != Some(&1) {
            return Err(format!(
                "entity {} does not yield exactly one relation",
                e.name
            ));
        }
    }
    for rel in &model.relationships {
        let own = rel.participants.len() > 2
            || matches!(classify_binary(rel), Ok(BinaryKind::ManyToMany));
        let expected = usize::from(own && !rel.is_identifying);
        let got = by_provenance
            .get(&Location::rel(&rel.name).to_string())
            .copied()
            .unwrap_or(0);
        if got != expected {
            return Err(format!(
                "relationship {}: {got} relation(s), expected {expected}",
                rel.name
            ));
        }
    }
    for r in &schema.relations {
        let resolves = match &r.provenance {
            Location::Entity(e) => model.resolve_entity(e).is_some(),
            Location::EntityAttr(e, a) => model
                .resolve_entity(e)
                .and_then(|x| x.attribute(a))
                .is_some_and(|a| a.is_multivalued),
            Location::Rel(n) => model.relationship(n).is_some(),
            _ => false,
        };
        if !resolves {
            return Err(format!(
                "{}: provenance {} does not resolve",
                r.name, r.provenance
            ));
        }
    }

    // Attribute conservation: every ER attribute lands in exactly one
    // non-foreign-key column.
    let mut homes: BTreeMap<(String, String), usize> = BTreeMap::new();
    for r in &schema.relations {
        let fks = fk_columns(r);
        for c in &r.columns {
            if !fks.contains(c.name.as_str()) {
                *homes.entry((r.name.clone(), c.name.clone())).or_insert(0) += 1;
            }
        }
    }
    let mut expected = 0;
    for e in &model.entities {
        for a in &e.attributes {
            expected += 1;
            let rel = if a.is_multivalued {
                schema
                    .relations
                    .iter()
                    .find(|r| r.provenance == Location::entity_attr(&e.name, &a.name))
                    .map(|r| r.name.clone())
            } else {
                Some(e.name.clone())
            };
            let Some(rel) = rel else {
                return Err(format!("multivalued {}.{} has no relation", e.name, a.name));
            };
            if homes.get(&(rel.clone(), a.name.clone())) != Some(&1) {
                return Err(format!(
                    "attribute {}.{} not found in {rel}",
                    e.name, a.name
                ));
            }
        }
    }
    for rel in &model.relationships {
        for a in &rel.attributes {
            expected += 1;
            let found = schema.relations.iter().any(|r| {
                let fks = fk_columns(r);
                r.columns.iter().any(|c| {
                    !fks.contains(c.name.as_str())
                        && (c.name == a.name || c.name == format!("{}{}", rel.name, a.name))
                })
            });
            if !found {
                return Err(format!(
                    "relationship attribute {}.{} lost",
                    rel.name, a.name
                ));
            }
        }
    }
    let non_fk_columns: usize = schema
        .relations
        .iter()
        .map(|r| {
            let fks = fk_columns(r);
            r.columns
                .iter()
                .filter(|c| !fks.contains(c.name.as_str()))
                .count()
        })
        .sum();
    if non_fk_columns != expected {
        return Err(format!(
            "{non_fk_columns} attribute columns for {expected} attributes"
        ));
    }
    Ok(())
}
