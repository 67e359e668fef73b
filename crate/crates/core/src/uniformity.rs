//! Coverings `C_H` built from neighborhood tuples, star refinement, the
//! covering conditions (C1)–(C4), and the topology induced by the resulting
//! uniformity base.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::checks::{check_protomodular, check_rc_i, derive_ti, CheckReport, Counterexample, Route};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::topology::{
    self, base_set_unchecked, elements, full_set, minimal_neighborhood_tuple, neighborhood_tuples,
    sep_axioms, sorted_element_lists, FiniteTopology, NeighborhoodTuple, Subset,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CoveringFile", into = "CoveringFile")]
pub struct Covering {
    s: usize,
    /// Deduplicated, sorted by mask.
    blocks: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoveringFile {
    s: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<CoveringFile> for Covering {
    type Error = Error;
    fn try_from(f: CoveringFile) -> Result<Self> {
        if f.s == 0 || f.s > topology::MAX_TOPOLOGY_S {
            return Err(Error::input("s", "covering carrier out of range"));
        }
        let mut blocks = Vec::new();
        for b in &f.blocks {
            if b.iter().any(|&x| x >= f.s) {
                return Err(Error::input("blocks", "element outside carrier"));
            }
            blocks.push(topology::from_elements(b));
        }
        Covering::new(f.s, blocks)
    }
}

impl From<Covering> for CoveringFile {
    fn from(c: Covering) -> Self {
        CoveringFile {
            s: c.s,
            blocks: sorted_element_lists(&c.blocks),
        }
    }
}

impl Covering {
    pub fn new(s: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(Error::input("blocks", "empty block"));
        }
        let union = blocks.iter().fold(0, |acc, b| acc | b);
        if union != full_set(s) {
            return Err(Error::input("blocks", "blocks do not cover the carrier"));
        }
        blocks.sort_unstable();
        blocks.dedup();
        Ok(Covering { s, blocks })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }
}

/// Union of the blocks of `c` that meet `m`.
pub fn star(m: Subset, c: &Covering) -> Subset {
    c.blocks.iter().filter(|&&b| b & m != 0).fold(0, |acc, b| acc | b)
}

/// Every block of `finer` lies in some block of `coarser`.
pub fn is_inscribed(finer: &Covering, coarser: &Covering) -> bool {
    finer
        .blocks
        .iter()
        .all(|&a| coarser.blocks.iter().any(|&b| a & !b == 0))
}

/// For every block B of `finer`, St(B, finer) lies in a single block of
/// `coarser`.
pub fn is_strong_star_inscribed(finer: &Covering, coarser: &Covering) -> bool {
    finer.blocks.iter().all(|&b| {
        let st = star(b, finer);
        coarser.blocks.iter().any(|&a| st & !a == 0)
    })
}

/// The covering (⋂ᵢ αᵢ(−,a)⁻¹(Hᵢ))_{a ∈ A}.
pub fn covering_ch(alg: &FiniteAlgebra, topo: &FiniteTopology, h: &NeighborhoodTuple) -> Result<Covering> {
    if topo.s() != alg.s() {
        return Err(Error::input("topology", "carrier size differs from the algebra"));
    }
    h.validate(alg, topo)?;
    Ok(covering_unchecked(alg, h))
}

fn covering_unchecked(alg: &FiniteAlgebra, h: &NeighborhoodTuple) -> Covering {
    let mut blocks: Vec<Subset> = (0..alg.s()).map(|a| base_set_unchecked(alg, a, h.sets())).collect();
    blocks.sort_unstable();
    blocks.dedup();
    // a block may be empty only if αᵢ(a,a) ∉ Hᵢ, i.e. without (2.1)
    blocks.retain(|&b| b != 0);
    Covering { s: alg.s(), blocks }
}

/// A binary relation stored as row bitmasks: `rows[x]` = {y : (x,y) ∈ R}.
pub type Relation = Vec<Subset>;

/// ⋃ over blocks of block × block.
pub fn entourage(c: &Covering) -> Relation {
    (0..c.s).map(|x| star(1 << x, c)).collect()
}

/// B(x, R) = {y : (x,y) ∈ R}.
pub fn ball(x: usize, r: &Relation) -> Subset {
    r[x]
}

/// O is open iff each x ∈ O has a generator R with B(x,R) ⊆ O.
pub fn induced_topology(s: usize, generators: &[Relation]) -> Result<FiniteTopology> {
    if generators.is_empty() {
        return Err(Error::input("generators", "need at least one relation"));
    }
    if generators.iter().any(|r| r.len() != s) {
        return Err(Error::input("generators", "relation size differs from carrier"));
    }
    let opens: Vec<Subset> = (0..=full_set(s))
        .filter(|&o| {
            elements(o)
                .into_iter()
                .all(|x| generators.iter().any(|r| ball(x, r) & !o == 0))
        })
        .collect();
    FiniteTopology::new(s, opens).map_err(|_| Error::input("generators", "ball criterion does not yield a topology"))
}

/// Which neighborhoods of each eᵢ the tuples H range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborhoodBase {
    /// Every open neighborhood.
    All,
    /// Only the minimal open neighborhood U_{eᵢ}.
    Minimal,
}

fn tuples_for(alg: &FiniteAlgebra, topo: &FiniteTopology, base: NeighborhoodBase) -> Vec<NeighborhoodTuple> {
    match base {
        NeighborhoodBase::All => neighborhood_tuples(alg, topo),
        NeighborhoodBase::Minimal => vec![minimal_neighborhood_tuple(alg, topo)],
    }
}

/// Star refinements of `C_H` found two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarRefinement {
    /// Least total size, then lexicographically least, among all tuples.
    pub search: NeighborhoodTuple,
    /// Built by shrinking neighborhoods until the derived terms Tᵢ map the
    /// product box into Hᵢ, then intersecting.
    pub constructive: NeighborhoodTuple,
}

fn search_refinement(alg: &FiniteAlgebra, target: &Covering, tuples: &[NeighborhoodTuple]) -> Option<NeighborhoodTuple> {
    let mut ordered: Vec<&NeighborhoodTuple> = tuples.iter().collect();
    ordered.sort_by_key(|h| (h.total_size(), (*h).clone()));
    ordered
        .into_iter()
        .find(|h| is_strong_star_inscribed(&covering_unchecked(alg, h), target))
        .cloned()
}

/// Image of the box ∏ slots under `table` (arity = slots.len()).
fn box_image(table: &crate::algebra::OperationTable, slots: &[Subset]) -> Subset {
    let lists: Vec<Vec<usize>> = slots.iter().map(|&m| elements(m)).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return 0;
    }
    let mut pos = vec![0usize; lists.len()];
    let mut image = 0;
    loop {
        image |= 1 << table.at(pos.iter().zip(&lists).map(|(&p, l)| l[p]));
        let mut k = lists.len();
        loop {
            if k == 0 {
                return image;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < lists[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

fn constructive_refinement(
    alg: &FiniteAlgebra,
    topo: &FiniteTopology,
    h: &NeighborhoodTuple,
    limits: &Limits,
) -> Result<NeighborhoodTuple> {
    let n = alg.n();
    let (terms, report) = derive_ti(alg, Route::ViaII, limits)?;
    if !report.holds {
        return Err(Error::Invariant(format!("derived terms fail: {report}")));
    }
    let u = topo.minimal_neighborhoods();
    let minimal: Vec<Subset> = alg.es().iter().map(|&e| u[e]).collect();
    let mut refined: Vec<Subset> = vec![topo.full(); n];
    for i in 0..n {
        // slot k*n + j holds the neighborhood of e_j feeding argument block k
        let mut slots: Vec<Subset> = (0..3 * n).map(|slot| h.sets()[slot % n]).collect();
        let mut next = 0;
        while box_image(&terms.big_t[i], &slots) & !h.sets()[i] != 0 {
            if next == slots.len() {
                return Err(Error::Invariant(format!(
                    "T{} maps the box of minimal neighborhoods outside H{}",
                    i + 1,
                    i + 1
                )));
            }
            slots[next] = minimal[next % n];
            next += 1;
        }
        for (slot, &set) in slots.iter().enumerate() {
            refined[slot % n] &= set;
        }
    }
    let out = NeighborhoodTuple(refined);
    out.validate(alg, topo)?;
    Ok(out)
}

/// A tuple H′ whose covering is strongly star-inscribed in `C_H`.
pub fn find_star_refinement(
    alg: &FiniteAlgebra,
    topo: &FiniteTopology,
    h: &NeighborhoodTuple,
    limits: &Limits,
) -> Result<StarRefinement> {
    check_rc_i(alg).require()?;
    require_compatible(alg, topo)?;
    if !sep_axioms(topo).t0 {
        return Err(Error::precondition("T0", "topology is not T0"));
    }
    let target = covering_ch(alg, topo, h)?;
    let tuples = neighborhood_tuples(alg, topo);
    let search = search_refinement(alg, &target, &tuples)
        .ok_or_else(|| Error::Invariant("no star refinement among neighborhood tuples".into()))?;
    let constructive = constructive_refinement(alg, topo, h, limits)?;
    if !is_strong_star_inscribed(&covering_unchecked(alg, &constructive), &target) {
        return Err(Error::Invariant(format!(
            "constructed tuple {:?} is not a star refinement",
            constructive.sets()
        )));
    }
    Ok(StarRefinement { search, constructive })
}

fn require_compatible(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<()> {
    if topo.s() != alg.s() {
        return Err(Error::input("topology", "carrier size differs from the algebra"));
    }
    if !topology::is_compatible(alg, topo)? {
        return Err(Error::precondition("compatible", "some operation is not continuous"));
    }
    Ok(())
}

fn masks(h: &NeighborhoodTuple) -> Vec<usize> {
    h.sets().iter().map(|&m| m as usize).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub h: NeighborhoodTuple,
    pub covering: Covering,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub c1: CheckReport,
    pub c2: CheckReport,
    pub c3: CheckReport,
    pub c4: CheckReport,
    pub generators: Vec<Generator>,
    /// For each generator that has one, the least star refinement found.
    pub refinements: Vec<(NeighborhoodTuple, NeighborhoodTuple)>,
}

impl UniformityReport {
    pub fn all_hold(&self) -> bool {
        self.reports().iter().all(|r| r.holds)
    }

    pub fn reports(&self) -> [&CheckReport; 4] {
        [&self.c1, &self.c2, &self.c3, &self.c4]
    }
}

/// (C1)–(C4) for the family generated by all coverings `C_H`.
///
/// (C1) holds by representing the family through its generators. (C2) uses
/// the componentwise intersection of two tuples; (C3) the least star
/// refinement by search, cross-checked against the constructive one when
/// the algebra is right-cancellable; (C4) looks for a generator with no
/// block containing a given pair.
pub fn verify_c_conditions(alg: &FiniteAlgebra, topo: &FiniteTopology, limits: &Limits) -> Result<UniformityReport> {
    verify_c_conditions_with(alg, topo, NeighborhoodBase::All, limits)
}

pub fn verify_c_conditions_with(
    alg: &FiniteAlgebra,
    topo: &FiniteTopology,
    base: NeighborhoodBase,
    limits: &Limits,
) -> Result<UniformityReport> {
    check_protomodular(alg).require()?;
    require_compatible(alg, topo)?;
    let tuples = tuples_for(alg, topo, base);
    let generators: Vec<Generator> = tuples
        .iter()
        .map(|h| Generator {
            h: h.clone(),
            covering: covering_unchecked(alg, h),
        })
        .collect();

    let c1 = CheckReport::pass("C1");

    let mut c2 = CheckReport::pass("C2");
    'outer: for g1 in &generators {
        for g2 in &generators {
            let meet = g1.h.meet(&g2.h);
            let c = covering_unchecked(alg, &meet);
            let in_family = tuples.contains(&meet);
            if !in_family || !is_inscribed(&c, &g1.covering) || !is_inscribed(&c, &g2.covering) {
                let mut tuple = masks(&g1.h);
                tuple.extend(masks(&g2.h));
                c2 = CheckReport::fail(
                    "C2",
                    Counterexample {
                        identity: "C2".into(),
                        index: None,
                        tuple,
                        lhs: in_family as usize,
                        rhs: 1,
                    },
                );
                break 'outer;
            }
        }
    }

    let rc = check_rc_i(alg).holds;
    let mut c3 = CheckReport::pass("C3");
    let mut refinements = Vec::new();
    for g in &generators {
        match search_refinement(alg, &g.covering, &tuples) {
            Some(found) => {
                if rc && base == NeighborhoodBase::All {
                    let built = constructive_refinement(alg, topo, &g.h, limits)?;
                    if !is_strong_star_inscribed(&covering_unchecked(alg, &built), &g.covering) {
                        return Err(Error::Invariant(format!(
                            "constructed tuple {:?} does not star-refine H = {:?}",
                            built.sets(),
                            g.h.sets()
                        )));
                    }
                }
                refinements.push((g.h.clone(), found));
            }
            None if c3.holds => {
                c3 = CheckReport::fail(
                    "C3",
                    Counterexample {
                        identity: "C3".into(),
                        index: None,
                        tuple: masks(&g.h),
                        lhs: 0,
                        rhs: 1,
                    },
                );
            }
            None => {}
        }
    }

    let mut c4 = CheckReport::pass("C4");
    'pairs: for x in 0..alg.s() {
        for y in x + 1..alg.s() {
            let pair: Subset = 1 << x | 1 << y;
            let separated = generators
                .iter()
                .any(|g| g.covering.blocks().iter().all(|&b| pair & !b != 0));
            if !separated {
                c4 = CheckReport::fail(
                    "C4",
                    Counterexample {
                        identity: "C4".into(),
                        index: None,
                        tuple: vec![x, y],
                        lhs: 0,
                        rhs: 1,
                    },
                );
                break 'pairs;
            }
        }
    }

    Ok(UniformityReport {
        c1,
        c2,
        c3,
        c4,
        generators,
        refinements,
    })
}

/// Entourages of every generator covering.
pub fn generator_relations(alg: &FiniteAlgebra, topo: &FiniteTopology, base: NeighborhoodBase) -> Vec<Relation> {
    tuples_for(alg, topo, base)
        .iter()
        .map(|h| entourage(&covering_unchecked(alg, h)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma44Report {
    pub report: CheckReport,
    pub induced: FiniteTopology,
}

/// The topology induced by the uniformity equals the original one.
pub fn check_lemma_4_4(alg: &FiniteAlgebra, topo: &FiniteTopology) -> Result<Lemma44Report> {
    check_lemma_4_4_with(alg, topo, NeighborhoodBase::All)
}

pub fn check_lemma_4_4_with(alg: &FiniteAlgebra, topo: &FiniteTopology, base: NeighborhoodBase) -> Result<Lemma44Report> {
    check_protomodular(alg).require()?;
    check_rc_i(alg).require()?;
    require_compatible(alg, topo)?;
    if !sep_axioms(topo).t0 {
        return Err(Error::precondition("T0", "topology is not T0"));
    }
    let induced = induced_topology(alg.s(), &generator_relations(alg, topo, base))?;
    let diff = (0..=topo.full()).find(|&o| topo.is_open(o) != induced.is_open(o));
    let report = match diff {
        None => CheckReport::pass("lemma-4.4"),
        Some(o) => CheckReport::fail(
            "lemma-4.4",
            Counterexample {
                identity: "tau' = tau".into(),
                index: None,
                tuple: elements(o),
                lhs: induced.is_open(o) as usize,
                rhs: topo.is_open(o) as usize,
            },
        ),
    };
    Ok(Lemma44Report { report, induced })
}
