//! Key prefixes and binary relationship classes under min-max notation.

use erdl::{classify_binary, compute_prefix, Cardinality, Participation, RelationshipType};

fn main() {
    let pools: [&[&str]; 3] = [
        &["Employee", "Department", "Project"],
        &["Employee", "Empowerment"],
        &["Emp", "Employee"],
    ];
    for pool in pools {
        let prefixes: Vec<String> = pool
            .iter()
            .map(|n| format!("{n}: {}", compute_prefix(n, pool)))
            .collect();
        println!("{}", prefixes.join(", "));
    }

    let cases = [
        ("Assigned", Cardinality::new(1, 1), Cardinality::new(4, 12)),
        ("Manages", Cardinality::new(0, 1), Cardinality::new(1, 1)),
        (
            "WorksOn",
            Cardinality::unbounded(0),
            Cardinality::unbounded(1),
        ),
    ];
    for (name, a, b) in cases {
        let rel = RelationshipType::new(
            name,
            vec![
                Participation::new("Left", a),
                Participation::new("Right", b),
            ],
        );
        println!("{name} {a} {b}: {:?}", classify_binary(&rel).unwrap());
    }
}
