//! Converts between ERDL text and the JSON interchange format. Both
//! directions are lossless.

fn main() {
    let source = "\
model Library

entity Book {
  key BooIsbn
  Title
  multi Author
}

entity Member {
  key MemNo
}

rel Borrows {
  Member (0,N),
  Book (0,1)
  attrs DueDate
}
";
    let model = erdl::parse(source, "library.erdl").unwrap().model;
    let json = erdl::dump_json(&model);
    println!("{json}");

    let back = erdl::load_json(&json).unwrap();
    assert_eq!(back, model);
    print!("{}", erdl::print(&back));

    match erdl::load_json("{\"name\": 3}") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
