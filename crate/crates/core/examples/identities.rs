//! Protomodular identities and right-cancellability on the fixture algebras.

use palab::checks::{check_2_associative, check_lemma31_consistency, check_protomodular, check_rc_i, reproduce};
use palab::fixtures;

pub fn run_example() {
    for (name, alg) in [("E45", fixtures::e45()), ("G2", fixtures::g2()), ("L3", fixtures::l3())] {
        println!("{name} (s={}, n={})", alg.s(), alg.n());
        for report in [check_protomodular(&alg), check_rc_i(&alg), check_2_associative(&alg)] {
            println!("  {report}");
        }
        println!("  {}", check_lemma31_consistency(&alg).unwrap());
    }

    // L3 is protomodular but not right-cancellable.
    let l3 = fixtures::l3();
    let report = check_rc_i(&l3);
    let cex = report.counterexample.as_ref().unwrap();
    assert_eq!(cex.tuple, vec![0, 1, 0, 2]);
    assert_eq!(reproduce(&l3, cex), Some((cex.lhs, cex.rhs)));
    println!("L3 counterexample as JSON: {}", serde_json::to_string(&report).unwrap());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
