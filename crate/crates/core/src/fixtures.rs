//! Named algebras and topologies used across tests, examples and the CLI.

use crate::algebra::FiniteAlgebra;
use crate::topology::FiniteTopology;

/// θ(i,j,k) = k if i ≠ j, 1−k if i = j.
pub const E45_THETA: [usize; 8] = [1, 0, 0, 1, 0, 1, 1, 0];

/// The two-element algebra with n = 2 whose powers and their quotients are
/// right-cancellable: α₁ ≡ 0, α₂(i,j) = [i = j], e = (0, 1).
pub fn e45() -> FiniteAlgebra {
    FiniteAlgebra::new(
        2,
        2,
        E45_THETA.to_vec(),
        vec![vec![0, 0, 0, 0], vec![1, 0, 0, 1]],
        vec![0, 1],
    )
    .expect("E45 tables are well formed")
}

/// The two-element group with θ = α = XOR and e = 0.
pub fn g2() -> FiniteAlgebra {
    FiniteAlgebra::new(2, 1, vec![0, 1, 1, 0], vec![vec![0, 1, 1, 0]], vec![0])
        .expect("G2 tables are well formed")
}

/// A three-element left semi-loop that is protomodular but not
/// right-cancellable. Column θ(·,b) is the identity for b = 0, the swap
/// 0↔1 for b = 1 and the swap 0↔2 for b = 2; columns are involutions so
/// α = θ.
pub fn l3() -> FiniteAlgebra {
    let table = vec![0, 1, 2, 1, 0, 1, 2, 2, 0];
    FiniteAlgebra::new(3, 1, table.clone(), vec![table], vec![0]).expect("L3 tables are well formed")
}

/// The one-element algebra with signature parameter `n`.
pub fn one(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(1, n, vec![0], vec![vec![0]; n], vec![0; n]).expect("trivial algebra")
}

pub fn disc(s: usize) -> FiniteTopology {
    FiniteTopology::discrete(s)
}

pub fn indisc(s: usize) -> FiniteTopology {
    FiniteTopology::indiscrete(s)
}

/// {∅, {1}, {0,1}}.
pub fn sierp() -> FiniteTopology {
    FiniteTopology::new(2, vec![0b00, 0b10, 0b11]).expect("Sierpinski space")
}
