//! Topologies on finite carriers, continuity of operations, separation
//! axioms, and the neighborhood-base facts for protomodular algebras.
//!
//! Subsets of the carrier are bitmasks (bit x = element x). A finite
//! topology is determined by its minimal open neighborhoods `U_x`, and
//! continuity of an operation is monotonicity for the specialization
//! preorder `x ≼ y ⟺ x ∈ U_y`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::checks::{check_protomodular, check_rc_i, CheckReport, Counterexample};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Largest carrier a topology value may live on.
pub const MAX_TOPOLOGY_S: usize = 20;

pub type Subset = u64;

pub fn full_set(s: usize) -> Subset {
    if s == 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

pub fn contains(set: Subset, x: usize) -> bool {
    set >> x & 1 == 1
}

pub fn elements(set: Subset) -> Vec<usize> {
    (0..64).filter(|&x| contains(set, x)).collect()
}

pub fn from_elements(xs: &[usize]) -> Subset {
    xs.iter().fold(0, |acc, &x| acc | 1 << x)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TopologyFile", into = "TopologyFile")]
pub struct FiniteTopology {
    s: usize,
    /// Sorted by mask value.
    opens: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyFile {
    s: usize,
    opens: Vec<Vec<usize>>,
}

impl TryFrom<TopologyFile> for FiniteTopology {
    type Error = Error;
    fn try_from(f: TopologyFile) -> Result<Self> {
        if f.s == 0 || f.s > MAX_TOPOLOGY_S {
            return Err(Error::input("s", format!("topology carrier must be 1..={MAX_TOPOLOGY_S}")));
        }
        let mut opens = Vec::with_capacity(f.opens.len());
        for set in &f.opens {
            if let Some(&bad) = set.iter().find(|&&x| x >= f.s) {
                return Err(Error::input("opens", format!("element {bad} outside 0..{}", f.s)));
            }
            opens.push(from_elements(set));
        }
        FiniteTopology::new(f.s, opens)
    }
}

impl From<FiniteTopology> for TopologyFile {
    fn from(t: FiniteTopology) -> Self {
        TopologyFile {
            s: t.s,
            opens: sorted_element_lists(&t.opens),
        }
    }
}

/// Element lists of the given sets, sorted lexicographically.
pub fn sorted_element_lists(sets: &[Subset]) -> Vec<Vec<usize>> {
    let mut lists: Vec<Vec<usize>> = sets.iter().map(|&m| elements(m)).collect();
    lists.sort();
    lists
}

/// Whether `family` is a topology on `s` points.
pub fn is_topology(family: &[Subset], s: usize) -> bool {
    if s > MAX_TOPOLOGY_S {
        return false;
    }
    let full = full_set(s);
    let has = |m: Subset| family.contains(&m);
    has(0)
        && has(full)
        && family.iter().all(|&m| m & !full == 0)
        && family
            .iter()
            .all(|&u| family.iter().all(|&v| has(u | v) && has(u & v)))
}

impl FiniteTopology {
    pub fn new(s: usize, mut opens: Vec<Subset>) -> Result<Self> {
        opens.sort_unstable();
        opens.dedup();
        if !is_topology(&opens, s) {
            return Err(Error::input(
                "opens",
                "family must contain the empty and full sets and be closed under union and intersection",
            ));
        }
        Ok(FiniteTopology { s, opens })
    }

    pub fn discrete(s: usize) -> Self {
        FiniteTopology {
            s,
            opens: (0..=full_set(s)).collect(),
        }
    }

    pub fn indiscrete(s: usize) -> Self {
        let mut opens = vec![0, full_set(s)];
        opens.dedup();
        FiniteTopology { s, opens }
    }

    /// Topology whose opens are the down-closed sets of a preorder given by
    /// `down[y] = {x : x ≼ y}`.
    pub fn from_preorder(s: usize, down: &[Subset]) -> Self {
        let opens = (0..=full_set(s))
            .filter(|&o| elements(o).into_iter().all(|y| down[y] & !o == 0))
            .collect();
        FiniteTopology { s, opens }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn full(&self) -> Subset {
        full_set(self.s)
    }

    pub fn is_open(&self, set: Subset) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn is_closed(&self, set: Subset) -> bool {
        self.is_open(self.full() & !set)
    }

    pub fn closed_sets(&self) -> Vec<Subset> {
        self.opens.iter().map(|&o| self.full() & !o).collect()
    }

    pub fn clopens(&self) -> Vec<Subset> {
        self.opens.iter().copied().filter(|&o| self.is_closed(o)).collect()
    }

    /// Opens containing `x`.
    pub fn neighborhoods(&self, x: usize) -> Vec<Subset> {
        self.opens.iter().copied().filter(|&o| contains(o, x)).collect()
    }

    /// `U_x`, the smallest open set containing x, for every x.
    pub fn minimal_neighborhoods(&self) -> Vec<Subset> {
        (0..self.s)
            .map(|x| self.neighborhoods(x).into_iter().fold(self.full(), |acc, o| acc & o))
            .collect()
    }

    /// Specialization preorder as `down[y] = {x : x ≼ y}` (equal to `U_y`).
    pub fn specialization(&self) -> Vec<Subset> {
        self.minimal_neighborhoods()
    }

    /// Smallest open set containing `set`.
    pub fn open_hull(&self, set: Subset) -> Subset {
        let u = self.minimal_neighborhoods();
        elements(set).into_iter().fold(0, |acc, x| acc | u[x])
    }
}

fn is_transitive(down: &[Subset]) -> bool {
    down.iter()
        .all(|&row| elements(row).into_iter().all(|x| down[x] & !row == 0))
}

/// All topologies on `s` points, through the bijection with preorders.
/// Coarsest first: ordered by number of opens, then by the sorted masks.
pub fn enumerate_topologies(s: usize, limits: &Limits) -> Result<Vec<FiniteTopology>> {
    limits.check_topology_s(s)?;
    if s == 0 {
        return Err(Error::input("s", "carrier must be nonempty"));
    }
    let off_diagonal: Vec<(usize, usize)> = (0..s)
        .flat_map(|y| (0..s).filter(move |&x| x != y).map(move |x| (x, y)))
        .collect();
    let count = 1u64 << off_diagonal.len();
    let mut out: Vec<FiniteTopology> = (0..count)
        .into_par_iter()
        .filter_map(|bits| {
            let mut down: Vec<Subset> = (0..s).map(|y| 1 << y).collect();
            for (k, &(x, y)) in off_diagonal.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    down[y] |= 1 << x;
                }
            }
            is_transitive(&down).then(|| FiniteTopology::from_preorder(s, &down))
        })
        .collect();
    out.sort_by(|a, b| (a.opens.len(), &a.opens).cmp(&(b.opens.len(), &b.opens)));
    Ok(out)
}

/// Continuity of `table` as a map from the product space.
///
/// Checked on minimal-neighborhood boxes: f(U_{u₁}×…×U_{u_k}) ⊆ U_{f(u)}.
/// Moving one coordinate at a time is enough because ≼ is transitive.
pub fn is_continuous(table: &OperationTable, topo: &FiniteTopology) -> Result<bool> {
    if table.carrier_size() != topo.s() {
        return Err(Error::input(
            "topology",
            format!("table over {} elements, topology over {}", table.carrier_size(), topo.s()),
        ));
    }
    let u = topo.minimal_neighborhoods();
    let s = topo.s();
    let k = table.arity();
    let mut args = vec![0usize; k];
    let mut moved = vec![0usize; k];
    for _ in 0..table.entries().len() {
        let target = u[table.at(args.iter().copied())];
        for j in 0..k {
            moved.copy_from_slice(&args);
            for x in elements(u[args[j]]) {
                moved[j] = x;
                if !contains(target, table.at(moved.iter().copied())) {
                    return Ok(false);
                }
            }
        }
        crate::parallel::odometer(&mut args, s);
    }
    Ok(true)
}

/// Whether θ and every αᵢ are continuous.
pub fn is_compatible(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<bool> {
    for t in alg.operations() {
        if !is_continuous(t, topo)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Topologies on the carrier making every operation continuous.
pub fn compatible_topologies(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<FiniteTopology>> {
    let all = enumerate_topologies(alg.s(), limits)?;
    Ok(all
        .into_par_iter()
        .filter(|t| is_compatible(alg, t).unwrap_or(false))
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SepAxioms {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub regular: bool,
    pub completely_regular: bool,
}

/// Separation axioms by literal quantifier evaluation.
///
/// `regular` and `completely_regular` are the bare separation properties
/// (no T1 included). Complete regularity is separation by a clopen set: a
/// continuous map into [0,1] has finite image here, so cutting between two
/// image values gives a clopen separator, and the indicator of a clopen
/// separator is a continuous separating map.
pub fn sep_axioms(topo: &FiniteTopology) -> SepAxioms {
    let s = topo.s();
    let u = topo.minimal_neighborhoods();
    let pairs = || (0..s).flat_map(|x| (0..s).filter(move |&y| y != x).map(move |y| (x, y)));
    let t0 = pairs().all(|(x, y)| {
        topo.opens()
            .iter()
            .any(|&o| contains(o, x) != contains(o, y))
    });
    let t1 = (0..s).all(|x| topo.is_closed(1 << x));
    let t2 = pairs().all(|(x, y)| u[x] & u[y] == 0);
    let closed = topo.closed_sets();
    let point_closed = || {
        closed
            .iter()
            .flat_map(|&c| (0..s).filter(move |&x| !contains(c, x)).map(move |x| (x, c)))
    };
    let regular = point_closed().all(|(x, c)| u[x] & topo.open_hull(c) == 0);
    let clopens = topo.clopens();
    let completely_regular =
        point_closed().all(|(x, c)| clopens.iter().any(|&k| contains(k, x) && k & c == 0));
    SepAxioms {
        t0,
        t1,
        t2,
        regular,
        completely_regular,
    }
}

/// One open neighborhood Hᵢ of each constant eᵢ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeighborhoodTuple(pub Vec<Subset>);

impl NeighborhoodTuple {
    pub fn sets(&self) -> &[Subset] {
        &self.0
    }

    pub fn total_size(&self) -> u32 {
        self.0.iter().map(|m| m.count_ones()).sum()
    }

    /// Componentwise intersection.
    pub fn meet(&self, other: &NeighborhoodTuple) -> NeighborhoodTuple {
        NeighborhoodTuple(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn validate(&self, alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<()> {
        if self.0.len() != alg.n() {
            return Err(Error::input("H", format!("need {} sets, got {}", alg.n(), self.0.len())));
        }
        for (i, &h) in self.0.iter().enumerate() {
            if !topo.is_open(h) {
                return Err(Error::input(format!("H[{}]", i + 1), "not an open set"));
            }
            if !contains(h, alg.e(i)) {
                return Err(Error::input(format!("H[{}]", i + 1), format!("does not contain e{}", i + 1)));
            }
        }
        Ok(())
    }
}

/// Every tuple of open neighborhoods of (e₁,…,eₙ), in lexicographic order.
pub fn neighborhood_tuples(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Vec<NeighborhoodTuple> {
    let choices: Vec<Vec<Subset>> = alg.es().iter().map(|&e| topo.neighborhoods(e)).collect();
    let mut out = vec![Vec::new()];
    for options in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Subset>| {
                options.iter().map(move |&h| {
                    let mut next = prefix.clone();
                    next.push(h);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(NeighborhoodTuple).collect()
}

/// The tuple of minimal neighborhoods (U_{e₁},…,U_{eₙ}).
pub fn minimal_neighborhood_tuple(alg: &FiniteAlgebra, topo: &FiniteTopology) -> NeighborhoodTuple {
    let u = topo.minimal_neighborhoods();
    NeighborhoodTuple(alg.es().iter().map(|&e| u[e]).collect())
}

/// ⋂ᵢ { b : αᵢ(b, a) ∈ Hᵢ }.
pub fn neighborhood_base_set(alg: &FiniteAlgebra, topo: &FiniteTopology, a: usize, h: &NeighborhoodTuple) -> Result<Subset> {
    if topo.s() != alg.s() {
        return Err(Error::input("topology", "carrier size differs from the algebra"));
    }
    if a >= alg.s() {
        return Err(Error::input("a", format!("{a} outside carrier")));
    }
    h.validate(alg, topo)?;
    Ok(base_set_unchecked(alg, a, h.sets()))
}

pub(crate) fn base_set_unchecked(alg: &FiniteAlgebra, a: usize, h: &[Subset]) -> Subset {
    (0..alg.s())
        .filter(|&b| h.iter().enumerate().all(|(i, &hi)| contains(hi, alg.alpha(i, b, a))))
        .fold(0, |acc, b| acc | 1 << b)
}

fn require_compatible(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<()> {
    if topo.s() != alg.s() {
        return Err(Error::input("topology", "carrier size differs from the algebra"));
    }
    if !is_compatible(alg, topo)? {
        return Err(Error::precondition("compatible", "some operation is not continuous"));
    }
    Ok(())
}

/// The sets ⋂ᵢ αᵢ(−,a)⁻¹(Hᵢ) form a neighborhood base at every a.
pub fn check_prop_2_2(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<CheckReport> {
    check_protomodular(alg).require()?;
    require_compatible(alg, topo)?;
    let tuples = neighborhood_tuples(alg, topo);
    let u = topo.minimal_neighborhoods();
    for (a, &ua) in u.iter().enumerate() {
        let bases: Vec<(&NeighborhoodTuple, Subset)> =
            tuples.iter().map(|h| (h, base_set_unchecked(alg, a, h.sets()))).collect();
        for (h, set) in &bases {
            if ua & !set != 0 {
                let mut tuple = vec![a];
                tuple.extend(h.sets().iter().map(|&m| m as usize));
                return Ok(CheckReport::fail(
                    "prop-2.2",
                    Counterexample {
                        identity: "neighborhood".into(),
                        index: None,
                        tuple,
                        lhs: ua as usize,
                        rhs: *set as usize,
                    },
                ));
            }
        }
        for o in topo.neighborhoods(a) {
            let smallest = bases.iter().map(|&(_, set)| set).fold(topo.full(), |acc, set| acc & set);
            if !bases.iter().any(|&(_, set)| contains(set, a) && set & !o == 0) {
                return Ok(CheckReport::fail(
                    "prop-2.2",
                    Counterexample {
                        identity: "base".into(),
                        index: None,
                        tuple: vec![a, o as usize],
                        lhs: smallest as usize,
                        rhs: o as usize,
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass("prop-2.2"))
}

/// Result of sweeping one implication over every compatible topology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySweep {
    pub report: CheckReport,
    pub compatible: usize,
    /// The compatible topologies satisfying T0.
    pub t0_topologies: Vec<FiniteTopology>,
}

fn sweep(
    alg: &FiniteAlgebra,
    limits: &Limits,
    name: &str,
    rule: &str,
    conclusion: impl Fn(&SepAxioms) -> bool,
) -> Result<TopologySweep> {
    let compatible = compatible_topologies(alg, limits)?;
    let axioms: Vec<SepAxioms> = compatible.par_iter().map(sep_axioms).collect();
    let bad = compatible
        .iter()
        .zip(&axioms)
        .find(|(_, ax)| ax.t0 && !conclusion(ax));
    let report = match bad {
        None => CheckReport::pass(name),
        Some((t, _)) => CheckReport::fail(
            name,
            Counterexample {
                identity: rule.into(),
                index: None,
                tuple: t.opens().iter().map(|&m| m as usize).collect(),
                lhs: 1,
                rhs: 0,
            },
        ),
    };
    let t0_topologies = compatible
        .iter()
        .zip(&axioms)
        .filter(|(_, ax)| ax.t0)
        .map(|(t, _)| t.clone())
        .collect();
    Ok(TopologySweep {
        report,
        compatible: compatible.len(),
        t0_topologies,
    })
}

/// T0 ⇒ T1 over every compatible topology.
pub fn check_lemma_4_1(alg: &FiniteAlgebra, limits: &Limits) -> Result<TopologySweep> {
    limits.check_topology_s(alg.s())?;
    check_protomodular(alg).require()?;
    sweep(alg, limits, "lemma-4.1", "T0 => T1", |ax| ax.t1)
}

/// T0 ⇒ completely regular over every compatible topology, for
/// right-cancellable algebras.
pub fn check_theorem_4_2(alg: &FiniteAlgebra, limits: &Limits) -> Result<TopologySweep> {
    limits.check_topology_s(alg.s())?;
    check_protomodular(alg).require()?;
    check_rc_i(alg).require()?;
    sweep(alg, limits, "theorem-4.2", "T0 => completely regular", |ax| ax.completely_regular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn is_topology_examples() {
        assert!(is_topology(&[0, 0b11], 2));
        assert!(!is_topology(&[0, 0b01, 0b10], 2));
        assert!(is_topology(fixtures::sierp().opens(), 2));
        assert!(!is_topology(&[0, 0b001, 0b010, 0b111], 3));
    }

    /// Independent oracle: every family of subsets, filtered by the axioms.
    fn raw_family_count(s: usize) -> usize {
        let subsets = 1usize << s;
        (0u64..1 << subsets)
            .filter(|fam| {
                let family: Vec<Subset> = (0..subsets as u64).filter(|&m| fam >> m & 1 == 1).collect();
                is_topology(&family, s)
            })
            .count()
    }

    #[test]
    fn enumeration_counts_match_raw_families() {
        let limits = Limits::default();
        assert_eq!(enumerate_topologies(1, &limits).unwrap().len(), 1);
        for s in 2..=3 {
            assert_eq!(enumerate_topologies(s, &limits).unwrap().len(), raw_family_count(s));
        }
        assert_eq!(raw_family_count(2), 4);
        assert_eq!(raw_family_count(3), 29);
        assert_eq!(enumerate_topologies(4, &limits).unwrap().len(), 355);
    }

    #[test]
    fn enumeration_rejects_over_cap() {
        assert!(matches!(enumerate_topologies(5, &Limits::default()), Err(Error::Limit { .. })));
        let raised = Limits::default().with_topology_s_max(9);
        assert!(matches!(enumerate_topologies(6, &raised), Err(Error::Limit { .. })));
    }

    #[test]
    fn specialization_round_trip() {
        for s in 1..=4 {
            for t in enumerate_topologies(s, &Limits::default()).unwrap() {
                assert_eq!(FiniteTopology::from_preorder(s, &t.specialization()), t);
            }
        }
    }

    /// Oracle for continuity: the preimage of every open is a union of boxes.
    fn continuous_by_preimages(t: &OperationTable, topo: &FiniteTopology) -> bool {
        let u = topo.minimal_neighborhoods();
        let k = t.arity();
        let len = t.entries().len();
        topo.opens().iter().all(|&o| {
            (0..len).all(|code| {
                let args = crate::algebra::decode_tuple(topo.s(), k, code);
                if !contains(o, t.entries()[code]) {
                    return true;
                }
                // the whole box of minimal neighborhoods must map into o
                (0..len).all(|other| {
                    let v = crate::algebra::decode_tuple(topo.s(), k, other);
                    let inside = v.iter().zip(&args).all(|(&vj, &aj)| contains(u[aj], vj));
                    !inside || contains(o, t.entries()[other])
                })
            })
        })
    }

    #[test]
    fn continuity_agrees_with_preimage_oracle() {
        let algs = [fixtures::e45(), fixtures::g2(), fixtures::l3()];
        for alg in &algs {
            for topo in enumerate_topologies(alg.s(), &Limits::default()).unwrap() {
                for t in alg.operations() {
                    assert_eq!(is_continuous(t, &topo).unwrap(), continuous_by_preimages(t, &topo));
                }
            }
        }
    }

    #[test]
    fn continuity_examples() {
        let e45 = fixtures::e45();
        for t in e45.operations() {
            assert!(is_continuous(t, &fixtures::disc(2)).unwrap());
            assert!(is_continuous(t, &fixtures::indisc(2)).unwrap());
        }
        assert!(!is_continuous(&e45.alphas()[1], &fixtures::sierp()).unwrap());
        let constant = OperationTable::new(3, 2, vec![1; 9]).unwrap();
        for topo in enumerate_topologies(3, &Limits::default()).unwrap() {
            assert!(is_continuous(&constant, &topo).unwrap());
        }
        assert!(matches!(is_continuous(&constant, &fixtures::disc(2)), Err(Error::Input { .. })));
    }

    #[test]
    fn compatible_topologies_of_fixtures() {
        let limits = Limits::default();
        let e45 = compatible_topologies(&fixtures::e45(), &limits).unwrap();
        assert_eq!(e45, vec![fixtures::indisc(2), fixtures::disc(2)]);
        assert_eq!(compatible_topologies(&fixtures::one(2), &limits).unwrap().len(), 1);
        let l3 = compatible_topologies(&fixtures::l3(), &limits).unwrap();
        assert!(l3.contains(&fixtures::indisc(3)) && l3.contains(&fixtures::disc(3)));
    }

    #[test]
    fn separation_examples() {
        let sierp = sep_axioms(&fixtures::sierp());
        assert!(sierp.t0 && !sierp.t1 && !sierp.completely_regular);
        let disc = sep_axioms(&fixtures::disc(3));
        assert!(disc.t0 && disc.t1 && disc.t2 && disc.regular && disc.completely_regular);
        let partition = FiniteTopology::new(3, vec![0, 0b011, 0b100, 0b111]).unwrap();
        let ax = sep_axioms(&partition);
        assert!(!ax.t0 && ax.completely_regular && ax.regular);
    }

    #[test]
    fn separation_chain_over_all_small_spaces() {
        for s in 1..=4 {
            for t in enumerate_topologies(s, &Limits::default()).unwrap() {
                let ax = sep_axioms(&t);
                assert!(!ax.completely_regular || ax.regular);
                assert!(!ax.t2 || ax.t1);
                assert!(!ax.t1 || ax.t0);
                assert!(!(ax.completely_regular && ax.t0) || ax.t1);
                // on finite spaces T1 forces the discrete topology
                assert_eq!(ax.t1, t == FiniteTopology::discrete(s));
            }
        }
    }

    #[test]
    fn base_set_examples() {
        let e45 = fixtures::e45();
        let h = NeighborhoodTuple(vec![0b01, 0b10]);
        assert_eq!(neighborhood_base_set(&e45, &fixtures::disc(2), 0, &h).unwrap(), 0b01);
        let full = NeighborhoodTuple(vec![0b11, 0b11]);
        for a in 0..2 {
            assert_eq!(neighborhood_base_set(&e45, &fixtures::disc(2), a, &full).unwrap(), 0b11);
        }
        let g = NeighborhoodTuple(vec![0b01]);
        assert_eq!(neighborhood_base_set(&fixtures::g2(), &fixtures::disc(2), 1, &g).unwrap(), 0b10);
    }

    #[test]
    fn base_set_rejects_bad_tuples() {
        let e45 = fixtures::e45();
        let missing_e = NeighborhoodTuple(vec![0b10, 0b10]);
        assert!(matches!(
            neighborhood_base_set(&e45, &fixtures::disc(2), 0, &missing_e),
            Err(Error::Input { .. })
        ));
        let not_open = NeighborhoodTuple(vec![0b01, 0b11]);
        assert!(neighborhood_base_set(&e45, &fixtures::indisc(2), 0, &not_open).is_err());
    }

    #[test]
    fn prop_2_2_examples() {
        let e45 = fixtures::e45();
        assert!(check_prop_2_2(&e45, &fixtures::disc(2)).unwrap().holds);
        assert!(check_prop_2_2(&e45, &fixtures::indisc(2)).unwrap().holds);
        assert!(check_prop_2_2(&fixtures::g2(), &fixtures::disc(2)).unwrap().holds);
        assert!(matches!(
            check_prop_2_2(&e45, &fixtures::sierp()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn lemma_4_1_and_theorem_4_2_on_e45() {
        let limits = Limits::default();
        let l = check_lemma_4_1(&fixtures::e45(), &limits).unwrap();
        assert!(l.report.holds);
        assert_eq!(l.t0_topologies, vec![fixtures::disc(2)]);
        assert!(check_theorem_4_2(&fixtures::e45(), &limits).unwrap().report.holds);
        assert!(matches!(
            check_theorem_4_2(&fixtures::l3(), &limits),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn topology_json_is_sorted() {
        let t = FiniteTopology::new(3, vec![0b111, 0b100, 0, 0b011]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"s":3,"opens":[[],[0,1],[0,1,2],[2]]}"#);
        let back: FiniteTopology = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<FiniteTopology>(r#"{"s":2,"opens":[[],[0],[1]]}"#).is_err());
    }
}
