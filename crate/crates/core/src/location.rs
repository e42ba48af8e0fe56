//! Element paths used to address parts of a model in diagnostics, spans and
//! provenance records.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Path to a single model element.
///
/// Text form: `entity:<Name>`, `entity:<Name>/attr:<Name>`, `rel:<Name>`,
/// `rel:<Name>/attr:<Name>` and `rel:<Name>/participant:<index>` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Entity(String),
    EntityAttr(String, String),
    Rel(String),
    RelAttr(String, String),
    Participant(String, usize),
}

impl Location {
    pub fn entity(name: &str) -> Self {
        Location::Entity(name.to_owned())
    }

    pub fn entity_attr(entity: &str, attr: &str) -> Self {
        Location::EntityAttr(entity.to_owned(), attr.to_owned())
    }

    pub fn rel(name: &str) -> Self {
        Location::Rel(name.to_owned())
    }

    pub fn rel_attr(rel: &str, attr: &str) -> Self {
        Location::RelAttr(rel.to_owned(), attr.to_owned())
    }

    pub fn participant(rel: &str, index: usize) -> Self {
        Location::Participant(rel.to_owned(), index)
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Entity(e) => write!(f, "entity:{e}"),
            Location::EntityAttr(e, a) => write!(f, "entity:{e}/attr:{a}"),
            Location::Rel(r) => write!(f, "rel:{r}"),
            Location::RelAttr(r, a) => write!(f, "rel:{r}/attr:{a}"),
            Location::Participant(r, i) => write!(f, "rel:{r}/participant:{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed element path `{0}`")]
pub struct LocationParseError(pub String);

impl FromStr for Location {
    type Err = LocationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LocationParseError(s.to_owned());
        if let Some(rest) = s.strip_prefix("entity:") {
            return Ok(match rest.rsplit_once("/attr:") {
                Some((e, a)) => Location::EntityAttr(e.to_owned(), a.to_owned()),
                None => Location::Entity(rest.to_owned()),
            });
        }
        if let Some(rest) = s.strip_prefix("rel:") {
            if let Some((r, idx)) = rest.rsplit_once("/participant:") {
                if let Ok(i) = idx.parse() {
                    return Ok(Location::Participant(r.to_owned(), i));
                }
            }
            return Ok(match rest.rsplit_once("/attr:") {
                Some((r, a)) => Location::RelAttr(r.to_owned(), a.to_owned()),
                None => Location::Rel(rest.to_owned()),
            });
        }
        Err(err())
    }
}

impl Serialize for Location {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Location {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
