use std::fmt::Write;

use super::lexer::is_word_char;
use super::KEYWORDS;
use crate::model::{Attribute, EntityKind, EntityType, ErModel, RelationshipType};

/// Canonical ERDL text: model header, entities, then relationships, each in
/// declaration order and separated by a blank line.
pub fn print(model: &ErModel) -> String {
    let mut blocks: Vec<String> = Vec::new();
    if !model.name.is_empty() {
        blocks.push(format!("model {}\n", name(&model.name)));
    }
    blocks.extend(model.entities.iter().map(entity));
    blocks.extend(model.relationships.iter().map(relationship));
    blocks.join("\n")
}

fn name(n: &str) -> String {
    let bare = !n.is_empty() && n.chars().all(is_word_char) && !KEYWORDS.contains(&n);
    if bare {
        return n.to_owned();
    }
    let mut out = String::with_capacity(n.len() + 2);
    out.push('"');
    for c in n.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn entity(e: &EntityType) -> String {
    let mut out = String::new();
    if e.kind == EntityKind::Weak {
        out.push_str("weak ");
    }
    write!(out, "entity {}", name(&e.name)).unwrap();
    if let Some(sup) = &e.supertype_name {
        write!(out, " isa {}", name(sup)).unwrap();
    }
    out.push_str(" {\n");
    for a in &e.attributes {
        writeln!(out, "  {}", attribute_line(e, a)).unwrap();
    }
    for group in &e.composite_keys {
        let members: Vec<String> = group.iter().map(|m| name(m)).collect();
        writeln!(out, "  key({})", members.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}

fn attribute_line(e: &EntityType, a: &Attribute) -> String {
    let mut line = String::new();
    if a.is_key {
        if e.most_desired_key.as_deref() == Some(a.name.as_str()) {
            line.push_str("key! ");
        } else {
            line.push_str("key ");
        }
    } else if a.is_partial_key {
        line.push_str("partialkey ");
    }
    if a.is_multivalued {
        line.push_str("multi ");
    }
    line.push_str(&name(&a.name));
    line
}

fn relationship(r: &RelationshipType) -> String {
    let mut out = String::new();
    if r.is_identifying {
        out.push_str("identifying ");
    }
    writeln!(out, "rel {} {{", name(&r.name)).unwrap();
    let parts: Vec<String> = r
        .participants
        .iter()
        .map(|p| format!("  {} {}", name(&p.entity_name), p.cardinality))
        .collect();
    out.push_str(&parts.join(",\n"));
    out.push('\n');
    if !r.attributes.is_empty() {
        let attrs: Vec<String> = r.attributes.iter().map(|a| name(&a.name)).collect();
        writeln!(out, "  attrs {}", attrs.join(" ")).unwrap();
    }
    out.push_str("}\n");
    out
}
