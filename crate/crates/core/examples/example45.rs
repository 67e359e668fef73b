//! E45, its square and cube, and every quotient, through all checks.

use palab::example45::verify_example_4_5;
use palab::Limits;

pub fn run_example() {
    let bundle = verify_example_4_5(&Limits::default()).unwrap();
    let mut algebras: Vec<&str> = bundle.entries.iter().map(|e| e.algebra.as_str()).collect();
    algebras.dedup();
    println!("{} algebras, {} report groups", algebras.len(), bundle.entries.len());
    for e in bundle.entries.iter().take(3) {
        for r in &e.reports {
            println!("[{}] {r}", e.algebra);
        }
    }
    println!("topology checks skipped for {:?}", bundle.topology_skipped);
    assert!(bundle.all_pass(), "{:?}", bundle.failures());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
