//! ERDL: the textual form of a diagram.
//!
//! ```text
//! model        := ["model" NAME] decl* ;
//! decl         := entityDecl | weakDecl | relDecl ;
//! entityDecl   := "entity" NAME ["isa" NAME] "{" attrLine* "}" ;
//! weakDecl     := "weak" "entity" NAME ["isa" NAME] "{" attrLine* "}" ;
//! relDecl      := ["identifying"] "rel" NAME "{" participant ("," participant)+ ["attrs" NAME+] "}" ;
//! participant  := NAME "(" INT "," (INT | "N") ")" ;
//! attrLine     := "key" "(" NAME ("," NAME)+ ")"
//!               | ["key" | "key" "!" | "partialkey"] ["multi"] NAME ;
//! NAME         := word | quoted ;
//! ```
//!
//! Words accept letters, digits, `_`, `-` and `/` so that badly named
//! elements still load and can be linted. Quoted names (`"Start Date"`) carry
//! anything else, including spaces. `#` starts a comment.

mod lexer;
mod printer;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::location::Location;
use crate::model::{
    Attribute, Cardinality, EntityKind, EntityType, ErModel, MaxCardinality, ModelError,
    Participation, RelationshipType,
};
use lexer::{Token, TokenKind};

pub use printer::print;

pub(crate) const KEYWORDS: &[&str] = &[
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

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// A model plus the source position of every element.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LocatedModel {
    pub model: ErModel,
    pub spans: BTreeMap<Location, SourceSpan>,
}

impl LocatedModel {
    /// Wraps a model that has no source text (for example one loaded from JSON).
    pub fn unlocated(model: ErModel) -> Self {
        LocatedModel {
            model,
            spans: BTreeMap::new(),
        }
    }

    pub fn span(&self, location: &Location) -> Option<&SourceSpan> {
        self.spans.get(location)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("{span}: unknown entity `{name}`")]
    Reference { span: SourceSpan, name: String },
    #[error("{span}: Is-A cycle: {}", .cycle.join(" -> "))]
    Cycle {
        span: SourceSpan,
        cycle: Vec<String>,
    },
    #[error("{span}: duplicate declaration of {location}")]
    Duplicate {
        span: SourceSpan,
        location: Location,
    },
}

impl ParseError {
    pub fn span(&self) -> &SourceSpan {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::Reference { span, .. }
            | ParseError::Cycle { span, .. }
            | ParseError::Duplicate { span, .. } => span,
        }
    }
}

/// Parses ERDL source. The model name comes from a `model` header when
/// present, otherwise from the file stem.
pub fn parse(source: &str, file: &str) -> Result<LocatedModel, ParseError> {
    let tokens = lexer::tokenize(source, file)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        spans: BTreeMap::new(),
        supertype_spans: HashMap::new(),
    };
    let mut model = parser.model()?;
    if model.name.is_empty() {
        model.name = Path::new(file)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
    }
    let spans = parser.spans;
    if let Err(err) = model.verify() {
        return Err(match err {
            ModelError::UnknownEntity {
                name,
                referenced_at,
            } => {
                let span = match &referenced_at {
                    Location::Entity(e) => parser.supertype_spans.get(e).cloned(),
                    other => spans.get(other).cloned(),
                };
                ParseError::Reference {
                    span: span.expect("every reference site has a span"),
                    name,
                }
            }
            ModelError::IsaCycle { cycle } => ParseError::Cycle {
                span: parser.supertype_spans[&cycle[0]].clone(),
                cycle,
            },
            ModelError::UnknownAttribute { .. } | ModelError::Duplicate(_) => {
                unreachable!("rejected while building: {err}")
            }
        });
    }
    Ok(LocatedModel { model, spans })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    spans: BTreeMap<Location, SourceSpan>,
    supertype_spans: HashMap<String, SourceSpan>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, ahead: usize) -> &TokenKind {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn next(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        tok
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Word(w) if w == kw)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            span: self.peek().span.clone(),
            message: message.into(),
        })
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.next();
            Ok(())
        } else {
            self.error(format!(
                "expected `{kw}`, found {}",
                describe(&self.peek().kind)
            ))
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<(), ParseError> {
        if self.peek().kind == kind {
            self.next();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(&kind),
                describe(&self.peek().kind)
            ))
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, SourceSpan), ParseError> {
        match &self.peek().kind {
            TokenKind::Word(w) if !KEYWORDS.contains(&w.as_str()) => {
                let w = w.clone();
                Ok((w, self.next().span))
            }
            TokenKind::Quoted(q) if !q.is_empty() => {
                let q = q.clone();
                Ok((q, self.next().span))
            }
            TokenKind::Quoted(_) => self.error(format!("{what} name must not be empty")),
            other => self.error(format!("expected {what} name, found {}", describe(other))),
        }
    }

    fn record(&mut self, location: Location, span: SourceSpan) -> Result<(), ParseError> {
        if self.spans.contains_key(&location) {
            return Err(ParseError::Duplicate { span, location });
        }
        self.spans.insert(location, span);
        Ok(())
    }

    fn model(&mut self) -> Result<ErModel, ParseError> {
        let mut model = ErModel::default();
        if self.is_keyword("model") {
            self.next();
            model.name = self.name("model")?.0;
        }
        loop {
            match &self.peek().kind {
                TokenKind::Eof => break,
                TokenKind::Word(w) => match w.as_str() {
                    "entity" => {
                        self.next();
                        let e = self.entity(EntityKind::Regular)?;
                        model.entities.push(e);
                    }
                    "weak" => {
                        self.next();
                        self.expect_keyword("entity")?;
                        let e = self.entity(EntityKind::Weak)?;
                        model.entities.push(e);
                    }
                    "rel" => {
                        self.next();
                        let r = self.relationship(false)?;
                        model.relationships.push(r);
                    }
                    "identifying" => {
                        self.next();
                        self.expect_keyword("rel")?;
                        let r = self.relationship(true)?;
                        model.relationships.push(r);
                    }
                    _ => return self.error(format!("expected a declaration, found `{w}`")),
                },
                other => {
                    return self.error(format!("expected a declaration, found {}", describe(other)))
                }
            }
        }
        Ok(model)
    }

    fn entity(&mut self, kind: EntityKind) -> Result<EntityType, ParseError> {
        let (name, span) = self.name("entity")?;
        self.record(Location::entity(&name), span)?;
        let mut entity = EntityType {
            name,
            kind,
            supertype_name: None,
            attributes: Vec::new(),
            most_desired_key: None,
            composite_keys: Vec::new(),
        };
        if self.is_keyword("isa") {
            self.next();
            let (sup, span) = self.name("supertype")?;
            self.supertype_spans.insert(entity.name.clone(), span);
            entity.supertype_name = Some(sup);
        }
        self.expect(TokenKind::LBrace)?;
        while self.peek().kind != TokenKind::RBrace {
            if self.peek().kind == TokenKind::Eof {
                return self.error("unterminated entity block, expected `}`");
            }
            self.attribute_line(&mut entity)?;
        }
        self.next();
        Ok(entity)
    }

    fn attribute_line(&mut self, entity: &mut EntityType) -> Result<(), ParseError> {
        let mut attr = Attribute::default();
        let mut designated = false;
        if self.is_keyword("key") {
            if *self.peek_at(1) == TokenKind::LParen {
                self.next();
                return self.composite_group(entity);
            }
            self.next();
            attr.is_key = true;
            if self.peek().kind == TokenKind::Bang {
                let bang = self.next();
                if entity.most_desired_key.is_some() {
                    return Err(ParseError::Syntax {
                        span: bang.span,
                        message: format!("entity `{}` designates more than one key", entity.name),
                    });
                }
                designated = true;
            }
        } else if self.is_keyword("partialkey") {
            if entity.kind != EntityKind::Weak {
                return self.error("`partialkey` is only allowed in a weak entity");
            }
            self.next();
            attr.is_partial_key = true;
        }
        if self.is_keyword("multi") {
            self.next();
            attr.is_multivalued = true;
        }
        let (name, span) = self.name("attribute")?;
        self.record(Location::entity_attr(&entity.name, &name), span)?;
        if designated {
            entity.most_desired_key = Some(name.clone());
        }
        attr.name = name;
        entity.attributes.push(attr);
        Ok(())
    }

    /// `key(A, B, ...)`: members not yet declared become plain attributes.
    fn composite_group(&mut self, entity: &mut EntityType) -> Result<(), ParseError> {
        self.expect(TokenKind::LParen)?;
        let mut members = Vec::new();
        loop {
            let (name, span) = self.name("attribute")?;
            if members.contains(&name) {
                return Err(ParseError::Syntax {
                    span,
                    message: format!("`{name}` appears twice in one key group"),
                });
            }
            if entity.attribute(&name).is_none() {
                self.record(Location::entity_attr(&entity.name, &name), span)?;
                entity.attributes.push(Attribute::plain(&name));
            }
            members.push(name);
            if self.peek().kind == TokenKind::Comma {
                self.next();
            } else {
                break;
            }
        }
        if members.len() < 2 {
            return self.error("a key group needs at least two attributes");
        }
        self.expect(TokenKind::RParen)?;
        entity.composite_keys.push(members);
        Ok(())
    }

    fn relationship(&mut self, is_identifying: bool) -> Result<RelationshipType, ParseError> {
        let (name, span) = self.name("relationship")?;
        self.record(Location::rel(&name), span)?;
        self.expect(TokenKind::LBrace)?;
        let mut rel = RelationshipType {
            name,
            is_identifying,
            participants: Vec::new(),
            attributes: Vec::new(),
        };
        loop {
            let (entity, span) = self.name("participant entity")?;
            self.record(
                Location::participant(&rel.name, rel.participants.len()),
                span,
            )?;
            let cardinality = self.cardinality()?;
            rel.participants.push(Participation {
                entity_name: entity,
                cardinality,
            });
            if self.peek().kind == TokenKind::Comma {
                self.next();
            } else {
                break;
            }
        }
        if rel.participants.len() < 2 {
            return self.error(format!(
                "relationship `{}` needs at least two participants",
                rel.name
            ));
        }
        if self.is_keyword("attrs") {
            self.next();
            loop {
                let (name, span) = self.name("attribute")?;
                self.record(Location::rel_attr(&rel.name, &name), span)?;
                rel.attributes.push(Attribute::plain(&name));
                if self.peek().kind == TokenKind::RBrace {
                    break;
                }
            }
        }
        self.expect(TokenKind::RBrace)?;
        Ok(rel)
    }

    fn cardinality(&mut self) -> Result<Cardinality, ParseError> {
        self.expect(TokenKind::LParen)?;
        let min = self.integer()?;
        self.expect(TokenKind::Comma)?;
        let max = if matches!(&self.peek().kind, TokenKind::Word(w) if w == "N") {
            self.next();
            MaxCardinality::Unbounded
        } else {
            MaxCardinality::Finite(self.integer()?)
        };
        self.expect(TokenKind::RParen)?;
        Ok(Cardinality { min, max })
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        match &self.peek().kind {
            TokenKind::Word(w) if !w.is_empty() && w.bytes().all(|b| b.is_ascii_digit()) => {
                match w.parse() {
                    Ok(n) => {
                        self.next();
                        Ok(n)
                    }
                    Err(_) => self.error(format!("cardinality `{w}` is too large")),
                }
            }
            other => self.error(format!("expected an integer, found {}", describe(other))),
        }
    }
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Word(w) => format!("`{w}`"),
        TokenKind::Quoted(q) => format!("{q:?}"),
        TokenKind::LBrace => "`{`".into(),
        TokenKind::RBrace => "`}`".into(),
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::Comma => "`,`".into(),
        TokenKind::Bang => "`!`".into(),
        TokenKind::Eof => "end of input".into(),
    }
}
