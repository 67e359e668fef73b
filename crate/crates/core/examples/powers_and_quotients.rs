//! Direct powers, congruence enumeration and quotients.

use palab::algebra::{enumerate_congruences, power, quotient};
use palab::checks::{check_protomodular, check_rc_i};
use palab::{fixtures, Limits};

pub fn run_example() {
    let limits = Limits::default();
    let e45 = fixtures::e45();
    let sq = power(&e45, 2, &limits).unwrap();
    println!("E45^2 has {} elements, constants {:?}", sq.s(), sq.es());

    let congruences = enumerate_congruences(&sq, &limits).unwrap();
    println!("{} congruences", congruences.len());
    for r in &congruences {
        let q = quotient(&sq, r).unwrap();
        println!(
            "  {:?} -> {} elements, protomodular {}, rc-i {}",
            r.block_of(),
            q.s(),
            check_protomodular(&q).holds,
            check_rc_i(&q).holds
        );
        assert!(check_rc_i(&q).holds);
    }
    assert_eq!(enumerate_congruences(&e45, &limits).unwrap().len(), 2);

    // Algebra files are plain JSON.
    let text = serde_json::to_string(&sq).unwrap();
    let back: palab::FiniteAlgebra = serde_json::from_str(&text).unwrap();
    assert_eq!(back, sq);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
