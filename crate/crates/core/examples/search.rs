//! Exhaustive search, classification, and a JSON-lines catalog.

use palab::search::{catalog_lines, classify, search, Filter, SearchSpec};
use palab::Limits;

pub fn run_example() {
    let limits = Limits::default();

    let spec = SearchSpec::new(3, 1, &[Filter::Protomodular], true);
    let found = search(&spec, &limits).unwrap();
    println!("s=3, n=1: {} canonical protomodular structures", found.algebras.len());
    for line in catalog_lines(&found).unwrap() {
        println!("  {line}");
    }

    let classes = classify(&SearchSpec::new(4, 1, &[Filter::Protomodular], false), &limits).unwrap();
    println!(
        "s=4, n=1: {} structures, {} right-cancellable, {:?} groups",
        classes.total, classes.rc_i, classes.groups
    );
    assert_eq!(classes.group_collapse_violations, 0);

    let rc = search(&SearchSpec::new(2, 2, &[Filter::Protomodular, Filter::RcI], true), &limits).unwrap();
    println!("s=2, n=2: {} canonical right-cancellable structures", rc.algebras.len());
    assert!(rc.algebras.contains(&palab::algebra::canonical_form(&palab::fixtures::e45())));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
