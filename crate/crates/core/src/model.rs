//! In-memory entity-relationship model.
//!
//! Values are plain data: build them through the parser, the JSON loader, or
//! by hand, then call [`ErModel::verify`] to check the referential
//! invariants (names resolve, Is-A graph acyclic, no duplicate element paths).

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::location::Location;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErModel {
    pub name: String,
    pub entities: Vec<EntityType>,
    pub relationships: Vec<RelationshipType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntityKind {
    Regular,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntityType {
    pub name: String,
    pub kind: EntityKind,
    pub supertype_name: Option<String>,
    pub attributes: Vec<Attribute>,
    /// Explicit key designation. When absent, the first declared key attribute
    /// plays this role (see [`EntityType::designated_key`]).
    pub most_desired_key: Option<String>,
    /// Attribute groups declared as a combined identifier. Only ever present
    /// so the linter can reject them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composite_keys: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Attribute {
    pub name: String,
    pub is_key: bool,
    pub is_partial_key: bool,
    pub is_multivalued: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationshipType {
    pub name: String,
    pub is_identifying: bool,
    pub participants: Vec<Participation>,
    pub attributes: Vec<Attribute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Participation {
    pub entity_name: String,
    pub cardinality: Cardinality,
}

/// Upper bound of a min-max participation constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxCardinality {
    Finite(u32),
    /// Spelled `N`; behaves as infinity.
    Unbounded,
}

impl MaxCardinality {
    pub fn is_one(self) -> bool {
        self == MaxCardinality::Finite(1)
    }
}

impl fmt::Display for MaxCardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxCardinality::Finite(n) => write!(f, "{n}"),
            MaxCardinality::Unbounded => f.write_str("N"),
        }
    }
}

impl Serialize for MaxCardinality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxCardinality::Finite(n) => serializer.serialize_u32(*n),
            MaxCardinality::Unbounded => serializer.serialize_str("N"),
        }
    }
}

impl<'de> Deserialize<'de> for MaxCardinality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => Ok(MaxCardinality::Finite(n)),
            Raw::Text(t) if t == "N" => Ok(MaxCardinality::Unbounded),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "max cardinality must be a non-negative integer or \"N\", got {t:?}"
            ))),
        }
    }
}

/// A `(min, max)` participation constraint.
///
/// The parser admits ill-formed pairs such as `(4,2)` so the linter can report
/// them; [`Cardinality::is_valid`] is the acceptance predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cardinality {
    pub min: u32,
    pub max: MaxCardinality,
}

impl Cardinality {
    pub fn new(min: u32, max: u32) -> Self {
        Cardinality {
            min,
            max: MaxCardinality::Finite(max),
        }
    }

    pub fn unbounded(min: u32) -> Self {
        Cardinality {
            min,
            max: MaxCardinality::Unbounded,
        }
    }

    pub fn is_valid(&self) -> bool {
        match self.max {
            MaxCardinality::Unbounded => true,
            MaxCardinality::Finite(max) => self.min <= max && max >= 1,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.min, self.max)
    }
}

impl Attribute {
    pub fn plain(name: &str) -> Self {
        Attribute {
            name: name.to_owned(),
            ..Default::default()
        }
    }

    pub fn key(name: &str) -> Self {
        Attribute {
            name: name.to_owned(),
            is_key: true,
            ..Default::default()
        }
    }

    pub fn partial_key(name: &str) -> Self {
        Attribute {
            name: name.to_owned(),
            is_partial_key: true,
            ..Default::default()
        }
    }

    pub fn multivalued(name: &str) -> Self {
        Attribute {
            name: name.to_owned(),
            is_multivalued: true,
            ..Default::default()
        }
    }
}

impl EntityType {
    pub fn regular(name: &str, attributes: Vec<Attribute>) -> Self {
        EntityType {
            name: name.to_owned(),
            kind: EntityKind::Regular,
            supertype_name: None,
            attributes,
            most_desired_key: None,
            composite_keys: Vec::new(),
        }
    }

    pub fn weak(name: &str, attributes: Vec<Attribute>) -> Self {
        EntityType {
            kind: EntityKind::Weak,
            ..EntityType::regular(name, attributes)
        }
    }

    pub fn subtype(name: &str, supertype: &str, attributes: Vec<Attribute>) -> Self {
        EntityType {
            supertype_name: Some(supertype.to_owned()),
            ..EntityType::regular(name, attributes)
        }
    }

    pub fn is_weak(&self) -> bool {
        self.kind == EntityKind::Weak
    }

    pub fn is_subtype(&self) -> bool {
        self.supertype_name.is_some()
    }

    /// Regular and not a subtype: the entities that must carry their own key.
    pub fn is_root_regular(&self) -> bool {
        !self.is_weak() && !self.is_subtype()
    }

    pub fn attribute(&self, name: &str) -> Option<&Attribute> {
        self.attributes.iter().find(|a| a.name == name)
    }

    pub fn keys(&self) -> impl Iterator<Item = &Attribute> {
        self.attributes.iter().filter(|a| a.is_key)
    }

    /// The key chosen for prefix naming and primary-key selection.
    pub fn designated_key(&self) -> Option<&Attribute> {
        match &self.most_desired_key {
            Some(name) => self.attribute(name).filter(|a| a.is_key),
            None => self.keys().next(),
        }
    }
}

impl RelationshipType {
    pub fn new(name: &str, participants: Vec<Participation>) -> Self {
        RelationshipType {
            name: name.to_owned(),
            is_identifying: false,
            participants,
            attributes: Vec::new(),
        }
    }

    pub fn identifying(name: &str, participants: Vec<Participation>) -> Self {
        RelationshipType {
            is_identifying: true,
            ..RelationshipType::new(name, participants)
        }
    }

    pub fn with_attributes(mut self, attributes: Vec<Attribute>) -> Self {
        self.attributes = attributes;
        self
    }
}

impl Participation {
    pub fn new(entity_name: &str, cardinality: Cardinality) -> Self {
        Participation {
            entity_name: entity_name.to_owned(),
            cardinality,
        }
    }
}

/// Referential and structural failures that make a model unusable.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown entity `{name}` referenced from {referenced_at}")]
    UnknownEntity {
        name: String,
        referenced_at: Location,
    },
    #[error("unknown attribute `{name}` referenced from {referenced_at}")]
    UnknownAttribute {
        name: String,
        referenced_at: Location,
    },
    #[error("Is-A cycle: {}", .cycle.join(" -> "))]
    IsaCycle { cycle: Vec<String> },
    #[error("duplicate declaration of {0}")]
    Duplicate(Location),
}

/// Binary relationship classification under min-max notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinaryKind {
    OneToOne,
    /// `n_side` is the participant whose max is 1.
    OneToMany {
        n_side: String,
        n_side_index: usize,
    },
    ManyToMany,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("relationship `{name}` has {found} participants; a binary classification needs exactly 2")]
pub struct ArityError {
    pub name: String,
    pub found: usize,
}

/// Classifies a binary relationship. The N-side is the participant whose max
/// is 1.
pub fn classify_binary(rel: &RelationshipType) -> Result<BinaryKind, ArityError> {
    let [a, b] = rel.participants.as_slice() else {
        return Err(ArityError {
            name: rel.name.clone(),
            found: rel.participants.len(),
        });
    };
    Ok(
        match (a.cardinality.max.is_one(), b.cardinality.max.is_one()) {
            (true, true) => BinaryKind::OneToOne,
            (true, false) => BinaryKind::OneToMany {
                n_side: a.entity_name.clone(),
                n_side_index: 0,
            },
            (false, true) => BinaryKind::OneToMany {
                n_side: b.entity_name.clone(),
                n_side_index: 1,
            },
            (false, false) => BinaryKind::ManyToMany,
        },
    )
}

impl ErModel {
    pub fn new(name: &str) -> Self {
        ErModel {
            name: name.to_owned(),
            ..Default::default()
        }
    }

    /// Exact, case-sensitive lookup.
    pub fn resolve_entity(&self, name: &str) -> Option<&EntityType> {
        self.entities.iter().find(|e| e.name == name)
    }

    pub fn relationship(&self, name: &str) -> Option<&RelationshipType> {
        self.relationships.iter().find(|r| r.name == name)
    }

    /// Supertype chain from the immediate supertype up to the root.
    pub fn isa_ancestors(&self, name: &str) -> Result<Vec<String>, ModelError> {
        let mut current = self
            .resolve_entity(name)
            .ok_or_else(|| ModelError::UnknownEntity {
                name: name.to_owned(),
                referenced_at: Location::entity(name),
            })?;
        let mut chain: Vec<String> = Vec::new();
        while let Some(sup) = &current.supertype_name {
            if sup == name || chain.contains(sup) {
                let mut cycle = vec![name.to_owned()];
                cycle.extend(chain);
                cycle.push(sup.clone());
                return Err(ModelError::IsaCycle { cycle });
            }
            current = self
                .resolve_entity(sup)
                .ok_or_else(|| ModelError::UnknownEntity {
                    name: sup.clone(),
                    referenced_at: Location::entity(&current.name),
                })?;
            chain.push(sup.clone());
        }
        Ok(chain)
    }

    /// All element paths of the model in declaration order.
    pub fn locations(&self) -> Vec<Location> {
        let mut out = Vec::new();
        for e in &self.entities {
            out.push(Location::entity(&e.name));
            for a in &e.attributes {
                out.push(Location::entity_attr(&e.name, &a.name));
            }
        }
        for r in &self.relationships {
            out.push(Location::rel(&r.name));
            for i in 0..r.participants.len() {
                out.push(Location::participant(&r.name, i));
            }
            for a in &r.attributes {
                out.push(Location::rel_attr(&r.name, &a.name));
            }
        }
        out
    }

    /// Checks every referential invariant.
    pub fn verify(&self) -> Result<(), ModelError> {
        self.check(true)
    }

    /// Like [`ErModel::verify`] but tolerates supertype names that do not
    /// resolve; those are left to the linter.
    pub fn verify_allowing_dangling_supertypes(&self) -> Result<(), ModelError> {
        self.check(false)
    }

    fn check(&self, supertypes_must_resolve: bool) -> Result<(), ModelError> {
        let mut seen = HashSet::new();
        for loc in self.locations() {
            if !matches!(loc, Location::Participant(..)) && !seen.insert(loc.clone()) {
                return Err(ModelError::Duplicate(loc));
            }
        }
        let names: HashSet<&str> = self.entities.iter().map(|e| e.name.as_str()).collect();
        for e in &self.entities {
            if let Some(sup) = &e.supertype_name {
                if supertypes_must_resolve && !names.contains(sup.as_str()) {
                    return Err(ModelError::UnknownEntity {
                        name: sup.clone(),
                        referenced_at: Location::entity(&e.name),
                    });
                }
            }
            for group in &e.composite_keys {
                for member in group {
                    if e.attribute(member).is_none() {
                        return Err(ModelError::UnknownAttribute {
                            name: member.clone(),
                            referenced_at: Location::entity(&e.name),
                        });
                    }
                }
            }
        }
        for r in &self.relationships {
            for (i, p) in r.participants.iter().enumerate() {
                if !names.contains(p.entity_name.as_str()) {
                    return Err(ModelError::UnknownEntity {
                        name: p.entity_name.clone(),
                        referenced_at: Location::participant(&r.name, i),
                    });
                }
            }
        }
        if let Some(cycle) = self.find_isa_cycle() {
            return Err(ModelError::IsaCycle { cycle });
        }
        Ok(())
    }

    fn find_isa_cycle(&self) -> Option<Vec<String>> {
        let parent: HashMap<&str, &str> = self
            .entities
            .iter()
            .filter_map(|e| e.supertype_name.as_deref().map(|s| (e.name.as_str(), s)))
            .collect();
        let mut cleared: HashSet<&str> = HashSet::new();
        for e in &self.entities {
            let mut path: Vec<&str> = Vec::new();
            let mut cur = e.name.as_str();
            loop {
                if cleared.contains(cur) {
                    break;
                }
                if let Some(pos) = path.iter().position(|p| *p == cur) {
                    let mut cycle: Vec<String> =
                        path[pos..].iter().map(|s| s.to_string()).collect();
                    cycle.push(cur.to_owned());
                    return Some(cycle);
                }
                path.push(cur);
                match parent.get(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            cleared.extend(path);
        }
        None
    }
}
