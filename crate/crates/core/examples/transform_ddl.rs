//! Maps the reference model to relations and emits SQL DDL plus the schema as
//! JSON. Models with lint errors are refused.

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/figure1.erdl");
    let source = std::fs::read_to_string(path).unwrap();
    let model = erdl::parse(&source, path).unwrap().model;

    let schema = erdl::transform(&model).expect("figure1 has no lint errors");
    for r in &schema.relations {
        println!(
            "{:<16} pk=({}) fks={} from {}",
            r.name,
            r.primary_key.join(", "),
            r.foreign_keys.len(),
            r.provenance
        );
    }

    let ddl = erdl::emit_ddl(&schema);
    println!("\ncreation order: {}", ddl.order.join(" -> "));
    println!("\n{}", ddl.sql);
    println!("{}", schema.to_json());

    let broken = erdl::parse("entity Employee { Name }", "broken.erdl").unwrap();
    match erdl::transform(&broken.model) {
        Ok(_) => unreachable!(),
        Err(e) => println!("refused: {e}"),
    }
}
