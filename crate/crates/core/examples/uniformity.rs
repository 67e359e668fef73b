//! The coverings C_H, conditions (C1)–(C4), and the induced topology.

use palab::uniformity::{check_lemma_4_4, entourage, verify_c_conditions};
use palab::{fixtures, Limits};

pub fn run_example() {
    let limits = Limits::default();
    let e45 = fixtures::e45();

    let report = verify_c_conditions(&e45, &fixtures::disc(2), &limits).unwrap();
    for g in &report.generators {
        println!("H = {:?}: {}  entourage rows {:?}", g.h.sets(), serde_json::to_string(&g.covering).unwrap(), entourage(&g.covering));
    }
    for r in report.reports() {
        println!("{r}");
    }
    let lemma = check_lemma_4_4(&e45, &fixtures::disc(2)).unwrap();
    println!("{}", lemma.report);
    assert!(report.all_hold() && lemma.report.holds);

    // The indiscrete topology gives a uniformity that cannot separate points.
    let coarse = verify_c_conditions(&e45, &fixtures::indisc(2), &limits).unwrap();
    println!("on INDISC(2): {}", coarse.c4);
    assert!(!coarse.c4.holds);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
