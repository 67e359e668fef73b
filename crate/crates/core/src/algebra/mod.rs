//! Finite algebras in the signature `θ` (arity n+1), `α₁..αₙ` (binary),
//! `e₁..eₙ` (constants), together with products, congruences and quotients.

mod canonical;
mod congruence;

pub use canonical::{canonical_form, relabel};
pub use congruence::{enumerate_congruences, is_compatible, quotient, Congruence};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite operation stored as a flat table, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationTable {
    arity: usize,
    s: usize,
    entries: Vec<usize>,
}

impl OperationTable {
    pub fn new(s: usize, arity: usize, entries: Vec<usize>) -> Result<Self> {
        if s == 0 {
            return Err(Error::input("carrier size", "must be positive"));
        }
        let expected = (s as u128).checked_pow(arity as u32);
        if expected != Some(entries.len() as u128) {
            return Err(Error::input(
                "table",
                format!(
                    "arity {arity} over {s} elements needs {} entries, got {}",
                    expected.map_or_else(|| "too many".to_string(), |e| e.to_string()),
                    entries.len()
                ),
            ));
        }
        if let Some(pos) = entries.iter().position(|&v| v >= s) {
            return Err(Error::input(
                "table",
                format!("entry {pos} is {} but carrier is 0..{s}", entries[pos]),
            ));
        }
        Ok(OperationTable { arity, s, entries })
    }

    /// Tabulates `f` over all argument tuples in index order.
    pub fn from_fn(s: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let len = s.pow(arity as u32);
        let mut entries = Vec::with_capacity(len);
        let mut args = vec![0usize; arity];
        for _ in 0..len {
            entries.push(f(&args));
            crate::parallel::odometer(&mut args, s);
        }
        OperationTable { arity, s, entries }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier_size(&self) -> usize {
        self.s
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Checked evaluation.
    pub fn eval(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::input(
                "args",
                format!("expected {} arguments, got {}", self.arity, args.len()),
            ));
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.s) {
            return Err(Error::input(
                "args",
                format!("element {bad} outside carrier 0..{}", self.s),
            ));
        }
        Ok(self.at(args.iter().copied()))
    }

    /// Unchecked evaluation on an argument iterator; arguments must be in range
    /// and exactly `arity` long.
    #[inline]
    pub fn at(&self, args: impl IntoIterator<Item = usize>) -> usize {
        let idx = args.into_iter().fold(0usize, |acc, x| acc * self.s + x);
        self.entries[idx]
    }

    #[inline]
    pub fn at2(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.s + b]
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }
}

/// An algebra of the protomodular signature with parameter `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AlgebraFile", into = "AlgebraFile")]
pub struct FiniteAlgebra {
    s: usize,
    n: usize,
    theta: OperationTable,
    alphas: Vec<OperationTable>,
    es: Vec<usize>,
}

impl FiniteAlgebra {
    /// Validates shapes and ranges. Identities are not checked here.
    pub fn new(
        s: usize,
        n: usize,
        theta: Vec<usize>,
        alphas: Vec<Vec<usize>>,
        es: Vec<usize>,
    ) -> Result<Self> {
        if s == 0 {
            return Err(Error::input("s", "carrier must be nonempty"));
        }
        if n == 0 {
            return Err(Error::input("n", "signature needs n >= 1"));
        }
        if alphas.len() != n {
            return Err(Error::input(
                "alphas",
                format!("expected {n} tables, got {}", alphas.len()),
            ));
        }
        if es.len() != n {
            return Err(Error::input(
                "es",
                format!("expected {n} constants, got {}", es.len()),
            ));
        }
        if let Some(&bad) = es.iter().find(|&&e| e >= s) {
            return Err(Error::input("es", format!("constant {bad} outside 0..{s}")));
        }
        let theta = OperationTable::new(s, n + 1, theta)
            .map_err(|e| retag(e, "theta"))?;
        let alphas = alphas
            .into_iter()
            .enumerate()
            .map(|(i, t)| OperationTable::new(s, 2, t).map_err(|e| retag(e, &format!("alphas[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteAlgebra {
            s,
            n,
            theta,
            alphas,
            es,
        })
    }

    /// Assembles an algebra from already-validated tables.
    pub fn from_tables(theta: OperationTable, alphas: Vec<OperationTable>, es: Vec<usize>) -> Result<Self> {
        let s = theta.carrier_size();
        let n = alphas.len();
        if n == 0 || theta.arity() != n + 1 {
            return Err(Error::input("theta", "arity must be n+1 with n >= 1"));
        }
        for (i, a) in alphas.iter().enumerate() {
            if a.arity() != 2 || a.carrier_size() != s {
                return Err(Error::input(format!("alphas[{i}]"), "must be binary over the same carrier"));
            }
        }
        if es.len() != n || es.iter().any(|&e| e >= s) {
            return Err(Error::input("es", "need n constants inside the carrier"));
        }
        Ok(FiniteAlgebra {
            s,
            n,
            theta,
            alphas,
            es,
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &OperationTable {
        &self.theta
    }

    pub fn alphas(&self) -> &[OperationTable] {
        &self.alphas
    }

    pub fn es(&self) -> &[usize] {
        &self.es
    }

    /// All operations as tables: θ, then α₁..αₙ.
    pub fn operations(&self) -> impl Iterator<Item = &OperationTable> {
        std::iter::once(&self.theta).chain(self.alphas.iter())
    }

    /// θ(head₁..headₙ, last).
    #[inline]
    pub fn th(&self, head: &[usize], last: usize) -> usize {
        self.theta.at(head.iter().copied().chain(std::iter::once(last)))
    }

    /// θ applied to an iterator of n head arguments followed by `last`.
    #[inline]
    pub fn th_iter(&self, head: impl Iterator<Item = usize>, last: usize) -> usize {
        self.theta.at(head.chain(std::iter::once(last)))
    }

    /// αᵢ(a, b), zero-based `i`.
    #[inline]
    pub fn alpha(&self, i: usize, a: usize, b: usize) -> usize {
        self.alphas[i].at2(a, b)
    }

    #[inline]
    pub fn e(&self, i: usize) -> usize {
        self.es[i]
    }

    /// Lexicographic comparison key: θ entries, α entries, constants.
    pub fn key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(self.theta.entries.len() + self.n * self.s * self.s + self.n);
        key.extend_from_slice(&self.theta.entries);
        for a in &self.alphas {
            key.extend_from_slice(&a.entries);
        }
        key.extend_from_slice(&self.es);
        key
    }
}

/// On-disk shape of an algebra; tables are flattened in index order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    s: usize,
    n: usize,
    theta: Vec<usize>,
    alphas: Vec<Vec<usize>>,
    es: Vec<usize>,
}

impl TryFrom<AlgebraFile> for FiniteAlgebra {
    type Error = Error;
    fn try_from(f: AlgebraFile) -> Result<Self> {
        FiniteAlgebra::new(f.s, f.n, f.theta, f.alphas, f.es)
    }
}

impl From<FiniteAlgebra> for AlgebraFile {
    fn from(a: FiniteAlgebra) -> Self {
        AlgebraFile {
            s: a.s,
            n: a.n,
            theta: a.theta.entries,
            alphas: a.alphas.into_iter().map(|t| t.entries).collect(),
            es: a.es,
        }
    }
}

fn retag(err: Error, field: &str) -> Error {
    match err {
        Error::Input { reason, .. } => Error::input(field, reason),
        other => other,
    }
}

/// Encodes a tuple over `0..s` as `Σ xⱼ·s^(k−1−j)`.
pub fn encode_tuple(s: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * s + x)
}

/// Inverse of [`encode_tuple`] for tuples of length `k`.
pub fn decode_tuple(s: usize, k: usize, mut code: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = code % s;
        code /= s;
    }
    out
}

/// The direct power `A^k` with componentwise operations.
pub fn power(a: &FiniteAlgebra, k: usize, limits: &Limits) -> Result<FiniteAlgebra> {
    if k == 0 {
        return Err(Error::input("k", "power exponent must be positive"));
    }
    let big_s = (a.s as u128)
        .checked_pow(k as u32)
        .filter(|&v| v <= usize::MAX as u128)
        .ok_or_else(|| Error::limit("power carrier", u128::MAX, limits.table_entry_max))?
        as usize;
    limits.check_table(big_s, a.n + 1)?;
    let decoded: Vec<Vec<usize>> = (0..big_s).map(|x| decode_tuple(a.s, k, x)).collect();
    let lift = |table: &OperationTable| {
        OperationTable::from_fn(big_s, table.arity(), |args| {
            let comps = (0..k).map(|j| table.at(args.iter().map(|&x| decoded[x][j])));
            comps.fold(0, |acc, c| acc * a.s + c)
        })
    };
    let theta = lift(&a.theta);
    let alphas = a.alphas.iter().map(lift).collect();
    let es = a
        .es
        .iter()
        .map(|&e| encode_tuple(a.s, &vec![e; k]))
        .collect();
    FiniteAlgebra::from_tables(theta, alphas, es)
}
