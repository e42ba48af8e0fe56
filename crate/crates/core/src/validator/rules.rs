use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// The notation rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Regular, non-subtype entity without a key attribute.
    RegMissingKey,
    /// Multivalued key attribute.
    RegNonAtomicKey,
    /// Key formed by combining several attributes.
    RegCompositeKey,
    /// Entity type names that differ only in case or symbols.
    RegDuplicateName,
    /// Subtype without own attribute or relationship.
    SubNoProperty,
    /// Supertype name does not resolve.
    SubUnknownSupertype,
    /// Weak entity with its own key.
    WeakHasKey,
    /// Weak entity without exactly one identifying relationship to an owner.
    WeakNoOwner,
    /// Designated key lacks the entity-name prefix.
    KeyPrefix,
    /// Words not capital-initialized or not CamelCase.
    NameCase,
    /// Probably plural noun.
    NamePlural,
    /// Non-letter symbols in a name.
    NameSymbols,
    /// Embedded whitespace in a name.
    NameSpaces,
    /// Ill-formed `(min, max)` pair.
    CardRange,
    /// Relationship with fewer than two participants.
    RelArity,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::RegMissingKey,
        Rule::RegNonAtomicKey,
        Rule::RegCompositeKey,
        Rule::RegDuplicateName,
        Rule::SubNoProperty,
        Rule::SubUnknownSupertype,
        Rule::WeakHasKey,
        Rule::WeakNoOwner,
        Rule::KeyPrefix,
        Rule::NameCase,
        Rule::NamePlural,
        Rule::NameSymbols,
        Rule::NameSpaces,
        Rule::CardRange,
        Rule::RelArity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::RegMissingKey => "R-REG-1",
            Rule::RegNonAtomicKey => "R-REG-2",
            Rule::RegCompositeKey => "R-REG-3",
            Rule::RegDuplicateName => "R-REG-4",
            Rule::SubNoProperty => "R-SUB-1",
            Rule::SubUnknownSupertype => "R-SUB-2",
            Rule::WeakHasKey => "R-WEAK-1",
            Rule::WeakNoOwner => "R-WEAK-2",
            Rule::KeyPrefix => "R-KEY-1",
            Rule::NameCase => "R-NAME-1",
            Rule::NamePlural => "R-NAME-2",
            Rule::NameSymbols => "R-NAME-3",
            Rule::NameSpaces => "R-NAME-4",
            Rule::CardRange => "R-CARD-1",
            Rule::RelArity => "R-REL-ARITY",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Rule::NamePlural => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn fixable(self) -> bool {
        matches!(
            self,
            Rule::KeyPrefix | Rule::NameCase | Rule::NameSymbols | Rule::NameSpaces
        )
    }

    pub fn summary(self) -> &'static str {
        match self {
            Rule::RegMissingKey => {
                "a regular entity type needs at least one key attribute of its own"
            }
            Rule::RegNonAtomicKey => "a key attribute must be atomic, never multivalued",
            Rule::RegCompositeKey => "a key must be a single attribute, not a combination",
            Rule::RegDuplicateName => "entity type names must be pairwise distinct",
            Rule::SubNoProperty => "a subtype needs an own attribute or a relationship",
            Rule::SubUnknownSupertype => "a subtype must be connected to an existing supertype",
            Rule::WeakHasKey => "a weak entity type has no key attributes of its own",
            Rule::WeakNoOwner => {
                "a weak entity type needs exactly one identifying relationship with an owner"
            }
            Rule::KeyPrefix => "the designated key carries the entity-name prefix",
            Rule::NameCase => "each word starts with a capital followed by lower-case letters",
            Rule::NamePlural => "nouns are singular",
            Rule::NameSymbols => "names contain letters only",
            Rule::NameSpaces => "multi-word names are concatenated without spaces",
            Rule::CardRange => "cardinality must satisfy min <= max and max >= 1",
            Rule::RelArity => "a relationship type associates at least two participants",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule id `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| UnknownRule(s.to_owned()))
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
