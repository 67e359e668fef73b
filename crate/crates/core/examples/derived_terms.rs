//! The terms Tᵢ that turn (3.4) into (3.5), built by two routes.

use palab::checks::{derive_ti, Route};
use palab::{fixtures, Limits};

pub fn run_example() {
    let limits = Limits::default();
    for alg in [fixtures::g2(), fixtures::e45()] {
        let (via_ii, report_ii) = derive_ti(&alg, Route::ViaII, &limits).unwrap();
        let (via_iii, report_iii) = derive_ti(&alg, Route::ViaIII, &limits).unwrap();
        println!("{report_ii}");
        println!("{report_iii}");
        assert!(report_ii.holds && report_iii.holds);

        let e = alg.es();
        for i in 0..alg.n() {
            assert_eq!(via_ii.eval_big_t(i, e, e, e), alg.e(i));
            assert_eq!(via_iii.eval_big_t(i, e, e, e), alg.e(i));
        }
    }

    // For G2 both routes give T(a,a',a'') = a xor a' xor a''.
    let (t, _) = derive_ti(&fixtures::g2(), Route::ViaII, &limits).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                print!("T({a},{b},{c})={} ", t.eval_big_t(0, &[a], &[b], &[c]));
            }
        }
    }
    println!();

    // Without rc-i there is nothing to derive.
    assert!(derive_ti(&fixtures::l3(), Route::ViaII, &limits).is_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
