//! SQL DDL emission.

use std::collections::HashSet;
use std::fmt::Write;

use super::{ForeignKey, Relation, Schema};

/// A foreign key moved out of its `CREATE TABLE` into a trailing `ALTER TABLE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeferredForeignKey {
    pub relation: String,
    pub foreign_key: ForeignKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ddl {
    pub sql: String,
    /// Relation names in `CREATE TABLE` order.
    pub order: Vec<String>,
    pub deferred: Vec<DeferredForeignKey>,
}

/// Emits one `CREATE TABLE` per relation, referenced tables first with ties
/// broken by name. When only cyclic dependencies remain, the first remaining
/// relation by name is created and its foreign keys to tables not yet created
/// become `ALTER TABLE` statements at the end.
pub fn emit_ddl(schema: &Schema) -> Ddl {
    let mut remaining: Vec<&Relation> = schema.relations.iter().collect();
    remaining.sort_by(|a, b| a.name.cmp(&b.name));
    let mut created: HashSet<&str> = HashSet::new();
    let mut statements = Vec::new();
    let mut order = Vec::new();
    let mut deferred = Vec::new();

    while !remaining.is_empty() {
        let ready = remaining.iter().position(|r| {
            r.foreign_keys.iter().all(|fk| {
                fk.referenced_relation == r.name
                    || created.contains(fk.referenced_relation.as_str())
            })
        });
        let rel = remaining.remove(ready.unwrap_or(0));
        let (inline, later): (Vec<&ForeignKey>, Vec<&ForeignKey>) =
            rel.foreign_keys.iter().partition(|fk| {
                fk.referenced_relation == rel.name
                    || created.contains(fk.referenced_relation.as_str())
            });
        deferred.extend(later.into_iter().map(|fk| DeferredForeignKey {
            relation: rel.name.clone(),
            foreign_key: fk.clone(),
        }));
        statements.push(create_table(rel, &inline));
        created.insert(&rel.name);
        order.push(rel.name.clone());
    }

    if !deferred.is_empty() {
        let mut tail = String::from("-- deferred foreign key (cyclic dependency)\n");
        for d in &deferred {
            let fk = &d.foreign_key;
            let _ = writeln!(
                tail,
                "ALTER TABLE {} ADD FOREIGN KEY ({}) REFERENCES {} ({});",
                ident(&d.relation),
                idents(&fk.columns),
                ident(&fk.referenced_relation),
                idents(&fk.referenced_columns)
            );
        }
        statements.push(tail);
    }

    Ddl {
        sql: statements.join("\n"),
        order,
        deferred,
    }
}

fn create_table(rel: &Relation, foreign_keys: &[&ForeignKey]) -> String {
    let mut out = String::new();
    for key in &rel.alternate_keys {
        let _ = writeln!(out, "-- alternate key: {} ({})", rel.name, key);
    }
    let mut clauses: Vec<String> = rel
        .columns
        .iter()
        .map(|c| {
            let null = if c.nullable { "" } else { " NOT NULL" };
            format!("  {} TEXT{null}", ident(&c.name))
        })
        .collect();
    if !rel.primary_key.is_empty() {
        clauses.push(format!("  PRIMARY KEY ({})", idents(&rel.primary_key)));
    }
    for fk in foreign_keys {
        clauses.push(format!(
            "  FOREIGN KEY ({}) REFERENCES {} ({})",
            idents(&fk.columns),
            ident(&fk.referenced_relation),
            idents(&fk.referenced_columns)
        ));
    }
    let _ = write!(
        out,
        "CREATE TABLE {} (\n{}\n);\n",
        ident(&rel.name),
        clauses.join(",\n")
    );
    out
}

/// Bare when a plain SQL identifier, else double-quoted.
fn ident(name: &str) -> String {
    let plain = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_owned()
    } else {
        format!("\"{}\"", name.replace('"', "\"\""))
    }
}

fn idents(names: &[String]) -> String {
    names
        .iter()
        .map(|n| ident(n))
        .collect::<Vec<_>>()
        .join(", ")
}
