//! Parses an ERDL file, reports syntax errors with their position, and prints
//! the canonical form.
//!
//! ```text
//! cargo run --example parse_and_print [FILE]
//! ```

use std::process::ExitCode;

fn main() -> ExitCode {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/figure1.erdl").into());
    let source = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::FAILURE;
        }
    };
    let located = match erdl::parse(&source, &path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::FAILURE;
        }
    };

    let m = &located.model;
    println!(
        "# {} entities, {} relationships",
        m.entities.len(),
        m.relationships.len()
    );
    print!("{}", erdl::print(m));

    let broken = "entity Employee { key EmpNo\n";
    if let Err(e) = erdl::parse(broken, "broken.erdl") {
        println!("# a truncated model fails with: {e}");
    }
    ExitCode::SUCCESS
}
