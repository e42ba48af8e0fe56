//! Repairs naming violations and shows the rename report alongside the
//! diagnostics before and after.

fn main() {
    let source = "\
entity employee_record {
  key No
  start_date
  \"Full Name\"
}

entity Department {
  key DepNo
}

rel works_in {
  employee_record (1,1),
  Department (0,N)
}
";
    let located = erdl::parse(source, "sloppy.erdl").unwrap();
    println!("before:");
    for d in erdl::validate(&located) {
        println!("  {}", d.to_text("sloppy.erdl"));
    }

    let (fixed, report) = erdl::fix(&located.model);
    println!("renames:");
    for r in &report.renames {
        println!(
            "  {} {} -> {} ({})",
            r.location, r.old_name, r.new_name, r.rule_id
        );
    }
    for s in &report.skipped {
        println!("  skipped {} {:?}", s.location, s.reason);
    }

    let after = erdl::validate_model(&fixed);
    println!("after: {} diagnostics", after.len());
    print!("{}", erdl::print(&fixed));

    let (again, second) = erdl::fix(&fixed);
    assert_eq!(again, fixed);
    assert!(second.renames.is_empty());
}
