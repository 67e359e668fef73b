use serde::{Deserialize, Serialize};

use super::{FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A partition of the carrier, block ids numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CongruenceFile", into = "CongruenceFile")]
pub struct Congruence {
    block_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CongruenceFile {
    block_of: Vec<usize>,
}

impl TryFrom<CongruenceFile> for Congruence {
    type Error = Error;
    fn try_from(f: CongruenceFile) -> Result<Self> {
        Congruence::new(f.block_of)
    }
}

impl From<Congruence> for CongruenceFile {
    fn from(c: Congruence) -> Self {
        CongruenceFile { block_of: c.block_of }
    }
}

impl Congruence {
    /// Builds a partition from arbitrary labels, renumbering blocks by first
    /// occurrence.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::input("block_of", "carrier must be nonempty"));
        }
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let block_of = labels
            .iter()
            .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = seen.len();
                    seen.push((l, id));
                    id
                }
            })
            .collect();
        Ok(Congruence { block_of })
    }

    pub fn identity(s: usize) -> Self {
        Congruence {
            block_of: (0..s).collect(),
        }
    }

    pub fn one_block(s: usize) -> Self {
        Congruence { block_of: vec![0; s] }
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn s(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Smallest element of each block, indexed by block id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }
}

/// True when every operation of `a` respects the partition.
///
/// Changing one argument within its block must not change the block of the
/// result; by transitivity this covers arbitrary related tuples.
pub fn is_compatible(a: &FiniteAlgebra, r: &Congruence) -> bool {
    if r.s() != a.s() {
        return false;
    }
    a.operations().all(|t| table_respects(t, r.block_of()))
}

fn table_respects(t: &OperationTable, block_of: &[usize]) -> bool {
    let s = t.carrier_size();
    let k = t.arity();
    let mut args = vec![0usize; k];
    let mut moved = vec![0usize; k];
    for _ in 0..t.entries().len() {
        let here = block_of[t.at(args.iter().copied())];
        for j in 0..k {
            moved.copy_from_slice(&args);
            for x in 0..s {
                if x != args[j] && block_of[x] == block_of[args[j]] {
                    moved[j] = x;
                    if block_of[t.at(moved.iter().copied())] != here {
                        return false;
                    }
                }
            }
        }
        crate::parallel::odometer(&mut args, s);
    }
    true
}

/// Every congruence of `a`, sorted by `block_of`.
pub fn enumerate_congruences(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Congruence>> {
    limits.check_congruence_s(a.s())?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; a.s()];
    loop {
        let c = Congruence { block_of: rgs.clone() };
        if is_compatible(a, &c) {
            out.push(c);
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Next restricted-growth string in lexicographic order.
fn next_rgs(rgs: &mut [usize]) -> bool {
    for i in (1..rgs.len()).rev() {
        let bound = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
        if rgs[i] < bound {
            rgs[i] += 1;
            for x in &mut rgs[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// The quotient algebra `a / r` on block ids.
pub fn quotient(a: &FiniteAlgebra, r: &Congruence) -> Result<FiniteAlgebra> {
    if r.s() != a.s() {
        return Err(Error::input(
            "congruence",
            format!("partition of {} elements for an algebra on {}", r.s(), a.s()),
        ));
    }
    if !is_compatible(a, r) {
        return Err(Error::input("congruence", "partition is not compatible with the operations"));
    }
    let k = r.block_count();
    let reps = r.representatives();
    let induce = |t: &OperationTable| {
        OperationTable::from_fn(k, t.arity(), |blocks| r.block_of()[t.at(blocks.iter().map(|&b| reps[b]))])
    };
    FiniteAlgebra::from_tables(
        induce(a.theta()),
        a.alphas().iter().map(induce).collect(),
        a.es().iter().map(|&e| r.block_of()[e]).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{canonical_form, power};
    use crate::fixtures;

    fn bell(s: usize) -> usize {
        let mut count = 0;
        let mut rgs = vec![0; s];
        loop {
            count += 1;
            if !next_rgs(&mut rgs) {
                return count;
            }
        }
    }

    #[test]
    fn rgs_enumerates_bell_numbers() {
        let bells: Vec<usize> = (1..=6).map(bell).collect();
        assert_eq!(bells, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn labels_are_normalized() {
        let c = Congruence::new(vec![7, 3, 7, 9]).unwrap();
        assert_eq!(c.block_of(), &[0, 1, 0, 2]);
        assert_eq!(c.representatives(), vec![0, 1, 3]);
    }

    #[test]
    fn e45_is_simple() {
        let cs = enumerate_congruences(&fixtures::e45(), &Limits::default()).unwrap();
        assert_eq!(cs, vec![Congruence::one_block(2), Congruence::identity(2)]);
    }

    #[test]
    fn trivial_algebra_has_one_congruence() {
        let cs = enumerate_congruences(&fixtures::one(2), &Limits::default()).unwrap();
        assert_eq!(cs, vec![Congruence::identity(1)]);
    }

    /// Independent oracle: compare the images of every pair of related tuples.
    fn brute_compatible(a: &FiniteAlgebra, r: &Congruence) -> bool {
        let b = r.block_of();
        a.operations().all(|t| {
            let len = t.entries().len();
            (0..len).all(|u| {
                (0..len).all(|v| {
                    let uu = crate::algebra::decode_tuple(t.carrier_size(), t.arity(), u);
                    let vv = crate::algebra::decode_tuple(t.carrier_size(), t.arity(), v);
                    let related = uu.iter().zip(&vv).all(|(&x, &y)| b[x] == b[y]);
                    !related || b[t.entries()[u]] == b[t.entries()[v]]
                })
            })
        })
    }

    #[test]
    fn enumeration_matches_pairwise_oracle_on_power() {
        let p = power(&fixtures::e45(), 2, &Limits::default()).unwrap();
        let found = enumerate_congruences(&p, &Limits::default()).unwrap();
        let mut rgs = vec![0; 4];
        let mut expected = Vec::new();
        loop {
            let c = Congruence { block_of: rgs.clone() };
            if brute_compatible(&p, &c) {
                expected.push(c);
            }
            if !next_rgs(&mut rgs) {
                break;
            }
        }
        assert_eq!(found, expected);
        // affine over GF(2): congruences are the subspaces of GF(2)^2
        assert_eq!(found.len(), 5);
    }

    #[test]
    fn quotients_by_trivial_partitions() {
        let e45 = fixtures::e45();
        let top = quotient(&e45, &Congruence::one_block(2)).unwrap();
        assert_eq!(top, fixtures::one(2));
        let bottom = quotient(&e45, &Congruence::identity(2)).unwrap();
        assert_eq!(canonical_form(&bottom), canonical_form(&e45));
    }

    #[test]
    fn quotient_rejects_incompatible_partition() {
        // L3 has only the trivial congruences; {0,1},{2} breaks θ(·,2)
        let bad = Congruence::new(vec![0, 0, 1]).unwrap();
        assert!(!is_compatible(&fixtures::l3(), &bad));
        assert!(matches!(quotient(&fixtures::l3(), &bad), Err(Error::Input { .. })));
    }

    #[test]
    fn congruence_json_shape() {
        let c: Congruence = serde_json::from_str(r#"{"block_of":[2,2,5]}"#).unwrap();
        assert_eq!(c.block_of(), &[0, 0, 1]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"block_of":[0,0,1]}"#);
    }
}
