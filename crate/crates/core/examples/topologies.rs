//! Topologies compatible with an algebra and their separation axioms.

use palab::topology::{check_lemma_4_1, check_theorem_4_2, compatible_topologies, enumerate_topologies, is_compatible, sep_axioms};
use palab::{fixtures, Limits};

pub fn run_example() {
    let limits = Limits::default();
    for s in 1..=4 {
        println!("{} topologies on {s} points", enumerate_topologies(s, &limits).unwrap().len());
    }

    let e45 = fixtures::e45();
    for t in compatible_topologies(&e45, &limits).unwrap() {
        println!("E45 compatible: {}  {:?}", serde_json::to_string(&t).unwrap(), sep_axioms(&t));
    }
    // α₂ is not continuous for the Sierpiński topology.
    assert!(!is_compatible(&e45, &fixtures::sierp()).unwrap());

    let sq = palab::algebra::power(&e45, 2, &limits).unwrap();
    let lemma = check_lemma_4_1(&sq, &limits).unwrap();
    let theorem = check_theorem_4_2(&sq, &limits).unwrap();
    println!("E45^2: {} compatible topologies, {} of them T0", lemma.compatible, lemma.t0_topologies.len());
    println!("{}\n{}", lemma.report, theorem.report);
    assert!(lemma.report.holds && theorem.report.holds);

    // Larger carriers are refused rather than attempted.
    assert!(compatible_topologies(&palab::algebra::power(&e45, 3, &limits).unwrap(), &limits).is_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
