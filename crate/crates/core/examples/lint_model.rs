//! Lints the mutant corpus and prints one diagnostic per line, first as text
//! and then as JSON Lines.

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/mutants");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "erdl"))
        .collect();
    files.sort();

    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy();
        let source = std::fs::read_to_string(path).unwrap();
        let located = erdl::parse(&source, &name).unwrap();
        for d in erdl::validate(&located) {
            println!("{}", d.to_text(&name));
            println!("  {}", d.to_json_line());
        }
    }

    // The plural heuristic reads an exception list, one word per line.
    let source = std::fs::read_to_string(dir.join("name2_plural.erdl")).unwrap();
    let located = erdl::parse(&source, "name2_plural.erdl").unwrap();
    let relaxed = erdl::Validator::new(erdl::PluralExceptions::from_text("Locations\n"));
    println!(
        "with `Locations` allowed: {} diagnostics",
        relaxed.validate(&located).len()
    );
}
