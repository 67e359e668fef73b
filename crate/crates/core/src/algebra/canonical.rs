use itertools::Itertools;

use super::{FiniteAlgebra, OperationTable};

/// Transports `a` along the bijection `perm` (old element ↦ new element).
pub fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    assert_eq!(perm.len(), a.s(), "relabeling must cover the carrier");
    let mut inverse = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let move_table = |t: &OperationTable| {
        OperationTable::from_fn(a.s(), t.arity(), |args| perm[t.at(args.iter().map(|&x| inverse[x]))])
    };
    FiniteAlgebra {
        s: a.s(),
        n: a.n(),
        theta: move_table(a.theta()),
        alphas: a.alphas().iter().map(move_table).collect(),
        es: a.es().iter().map(|&e| perm[e]).collect(),
    }
}

/// The relabeling of `a` with the lexicographically least key
/// (θ entries, then α entries, then constants).
pub fn canonical_form(a: &FiniteAlgebra) -> FiniteAlgebra {
    (0..a.s())
        .permutations(a.s())
        .map(|perm| relabel(a, &perm))
        .min_by(|x, y| x.key().cmp(&y.key()))
        .expect("at least the identity relabeling")
}
