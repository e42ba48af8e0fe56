//! DOT output in the diagram notation: boxes for entities, diamonds for
//! relationships, ovals for attributes, doubled borders for weak entities,
//! identifying relationships and multivalued attributes.
//!
//! Node ids are `e_<Entity>`, `r_<Relationship>` and `a_<Owner>_<Attribute>`.
//! Attributes of relationships use the relationship name as owner.

use std::collections::HashSet;
use std::fmt::Write;

use crate::model::{Attribute, ErModel};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RankDirection {
    #[default]
    LeftRight,
    TopBottom,
}

impl RankDirection {
    fn dot(self) -> &'static str {
        match self {
            RankDirection::LeftRight => "LR",
            RankDirection::TopBottom => "TB",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub rank_direction: RankDirection,
    pub show_cardinalities: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            rank_direction: RankDirection::LeftRight,
            show_cardinalities: true,
        }
    }
}

pub fn render(model: &ErModel, opts: &RenderOptions) -> String {
    let mut ids = IdAllocator::default();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();

    for e in &model.entities {
        let id = ids.take(format!("e_{}", e.name));
        let border = if e.is_weak() { ", peripheries=2" } else { "" };
        nodes.push(format!(
            "{} [shape=box{border}, label={}];",
            quote(&id),
            quote(&e.name)
        ));
    }
    for r in &model.relationships {
        let id = ids.take(format!("r_{}", r.name));
        let border = if r.is_identifying {
            ", peripheries=2"
        } else {
            ""
        };
        nodes.push(format!(
            "{} [shape=diamond{border}, label={}];",
            quote(&id),
            quote(&r.name)
        ));
    }

    let owners = model
        .entities
        .iter()
        .map(|e| (format!("e_{}", e.name), &e.name, &e.attributes))
        .chain(
            model
                .relationships
                .iter()
                .map(|r| (format!("r_{}", r.name), &r.name, &r.attributes)),
        );
    for (owner_id, owner_name, attributes) in owners {
        for a in attributes {
            let id = ids.take(format!("a_{}_{}", owner_name, a.name));
            nodes.push(format!("{} [{}];", quote(&id), attribute_style(a)));
            edges.push(format!("{} -> {};", quote(&owner_id), quote(&id)));
        }
    }

    for r in &model.relationships {
        for p in &r.participants {
            let label = if opts.show_cardinalities {
                format!(" [headlabel={}]", quote(&p.cardinality.to_string()))
            } else {
                String::new()
            };
            edges.push(format!(
                "{} -> {}{label};",
                quote(&format!("r_{}", r.name)),
                quote(&format!("e_{}", p.entity_name))
            ));
        }
    }

    for e in &model.entities {
        let Some(sup) = &e.supertype_name else {
            continue;
        };
        if model.resolve_entity(sup).is_none() {
            continue;
        }
        edges.push(format!(
            "{} -> {} [dir=forward, arrowhead=normal, label=\"Is-A\"];",
            quote(&format!("e_{}", e.name)),
            quote(&format!("e_{sup}"))
        ));
    }

    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&model.name));
    let _ = writeln!(out, "  rankdir={};", opts.rank_direction.dot());
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    out.push_str("  edge [dir=none, fontname=\"Helvetica\"];\n");
    for line in nodes.iter().chain(&edges) {
        let _ = writeln!(out, "  {line}");
    }
    out.push_str("}\n");
    out
}

fn attribute_style(a: &Attribute) -> String {
    let mut style = String::from("shape=ellipse");
    if a.is_multivalued {
        style.push_str(", peripheries=2");
    }
    if a.is_key {
        let _ = write!(style, ", label=<<u>{}</u>>", html_escape(&a.name));
    } else if a.is_partial_key {
        let _ = write!(
            style,
            ", style=dashed, label={}",
            quote(&format!("{} (partial key)", a.name))
        );
    } else {
        let _ = write!(style, ", label={}", quote(&a.name));
    }
    style
}

/// Hands out node ids, suffixing `_2`, `_3`, ... when two elements map to the
/// same id (possible with underscores in names).
#[derive(Default)]
struct IdAllocator {
    used: HashSet<String>,
}

impl IdAllocator {
    fn take(&mut self, base: String) -> String {
        let id = if self.used.contains(&base) {
            (2..)
                .map(|i| format!("{base}_{i}"))
                .find(|c| !self.used.contains(c))
                .expect("unbounded search")
        } else {
            base
        };
        self.used.insert(id.clone());
        id
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
