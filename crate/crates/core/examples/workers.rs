//! Results do not depend on the number of worker threads.

use palab::search::{search, Filter, SearchSpec};
use palab::{fixtures, with_workers, Limits};

pub fn run_example() {
    let limits = Limits::default();
    let spec = SearchSpec::new(2, 2, &[Filter::Protomodular], true);
    let outputs: Vec<String> = [1, 2, 8]
        .into_iter()
        .map(|w| {
            with_workers(w, || {
                let found = search(&spec, &limits).unwrap();
                let rc = palab::checks::check_rc_i(&fixtures::l3());
                serde_json::to_string(&(found.algebras, rc)).unwrap()
            })
        })
        .collect();
    println!("{} bytes of output, identical for 1, 2 and 8 workers", outputs[0].len());
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
