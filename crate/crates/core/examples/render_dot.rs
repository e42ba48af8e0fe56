//! Renders the reference model as Graphviz DOT. Pipe the output into
//! `dot -Tsvg` to draw it.
//!
//! ```text
//! cargo run --example render_dot -- TB | dot -Tsvg > figure1.svg
//! ```

use erdl::{RankDirection, RenderOptions};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/figure1.erdl");
    let source = std::fs::read_to_string(path).unwrap();
    let model = erdl::parse(&source, path).unwrap().model;

    let rank_direction = match std::env::args().nth(1).as_deref() {
        Some("TB") => RankDirection::TopBottom,
        _ => RankDirection::LeftRight,
    };
    let opts = RenderOptions {
        rank_direction,
        ..RenderOptions::default()
    };
    print!("{}", erdl::render(&model, &opts));
}
