//! Exhaustive search for protomodular structures on small carriers.
//!
//! With the protomodular filter on, candidates are generated already
//! satisfying αᵢ(a,a) = eᵢ and θ(α(a,b), b) = a:
//!
//! * n = 1: every right translation x ↦ θ(x,b) is a permutation with
//!   θ(e,b) = b, and α(−,b) is its inverse, so columns are enumerated as
//!   permutations directly.
//! * n ≥ 2: θ is enumerated freely; for each constant tuple e with
//!   θ(e,a) = a, the value (α₁(a,b),…,αₙ(a,b)) for a ≠ b ranges over the
//!   θ(−,b)-preimages of a, while αᵢ(a,a) = eᵢ is forced.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{canonical_form, decode_tuple, FiniteAlgebra, OperationTable};
use crate::checks::{check_2_associative, check_group_collapse, check_protomodular, check_rc_i, Identity};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Filter {
    #[serde(rename = "protomodular")]
    Protomodular,
    #[serde(rename = "rc-i")]
    RcI,
    #[serde(rename = "2-assoc")]
    TwoAssociative,
    /// θ(a,e) = a, n = 1 only.
    #[serde(rename = "right-identity")]
    RightIdentity,
}

impl std::str::FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "protomodular" => Ok(Filter::Protomodular),
            "rc-i" | "rc_i" => Ok(Filter::RcI),
            "2-assoc" | "two_associative" => Ok(Filter::TwoAssociative),
            "right-identity" | "right_identity_3_8" => Ok(Filter::RightIdentity),
            other => Err(Error::input("filter", format!("unknown filter `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub s: usize,
    pub n: usize,
    pub filters: Vec<Filter>,
    /// Keep only canonical forms, one per relabeling orbit.
    pub dedup: bool,
}

impl SearchSpec {
    pub fn new(s: usize, n: usize, filters: &[Filter], dedup: bool) -> Self {
        let mut filters = filters.to_vec();
        filters.sort();
        filters.dedup();
        SearchSpec { s, n, filters, dedup }
    }

    pub fn has(&self, f: Filter) -> bool {
        self.filters.contains(&f)
    }

    /// The generator `search_with` actually uses for `strategy`.
    pub fn resolve(&self, strategy: Strategy) -> Strategy {
        match strategy {
            _ if !self.has(Filter::Protomodular) => Strategy::Raw,
            Strategy::Auto if self.n > 1 => Strategy::FreeTheta,
            other => other,
        }
    }

    /// Number of candidates the resolved generator visits, saturating.
    pub fn estimate(&self, strategy: Strategy) -> u128 {
        let (s, n) = (self.s as u128, self.n as u32);
        let exponent = match self.resolve(strategy) {
            Strategy::Auto => {
                let columns = (1..s).product::<u128>();
                return s.saturating_mul(columns.saturating_pow(self.s as u32));
            }
            Strategy::FreeTheta => s.saturating_pow(n + 1),
            Strategy::Raw => s
                .saturating_pow(n + 1)
                .saturating_add(self.n as u128 * s * s)
                .saturating_add(self.n as u128),
        };
        if exponent > 200 {
            return u128::MAX;
        }
        s.saturating_pow(exponent as u32)
    }

    fn validate(&self, strategy: Strategy, limits: &Limits) -> Result<()> {
        if self.s == 0 {
            return Err(Error::input("s", "carrier must be nonempty"));
        }
        if self.n == 0 {
            return Err(Error::input("n", "signature needs n >= 1"));
        }
        if self.has(Filter::RightIdentity) && self.n != 1 {
            return Err(Error::input("filter", "right-identity applies to n = 1 only"));
        }
        let estimate = self.estimate(strategy);
        if estimate > limits.search_budget {
            return Err(Error::limit(
                format!("search space for s={}, n={}", self.s, self.n),
                estimate,
                limits.search_budget,
            ));
        }
        limits.check_table(self.s, self.n + 1)?;
        Ok(())
    }
}

/// Predicate outcomes for one structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flags {
    pub protomodular: bool,
    pub rc_i: bool,
    pub two_associative: bool,
    /// θ(a,e) = a; only for n = 1.
    pub right_identity: Option<bool>,
    /// θ is a group operation with identity e; only for protomodular n = 1.
    pub group: Option<bool>,
}

impl Flags {
    pub fn of(alg: &FiniteAlgebra) -> Flags {
        let protomodular = check_protomodular(alg).holds;
        let binary = alg.n() == 1;
        let group = (binary && protomodular).then(|| is_group(alg));
        Flags {
            protomodular,
            rc_i: check_rc_i(alg).holds,
            two_associative: check_2_associative(alg).holds,
            right_identity: binary.then(|| Identity::RightIdentity.first_violation(alg).is_none()),
            group,
        }
    }

    /// Flags of `alg` if it passes every filter. Filters are evaluated
    /// first so that rejected candidates cost one check each.
    fn if_passes(alg: &FiniteAlgebra, filters: &[Filter]) -> Option<Flags> {
        let pass = filters.iter().all(|f| match f {
            Filter::Protomodular => check_protomodular(alg).holds,
            Filter::RcI => check_rc_i(alg).holds,
            Filter::TwoAssociative => check_2_associative(alg).holds,
            Filter::RightIdentity => Identity::RightIdentity.first_violation(alg).is_none(),
        });
        pass.then(|| Flags::of(alg))
    }
}

/// Associative with two-sided identity e and two-sided inverses.
fn is_group(alg: &FiniteAlgebra) -> bool {
    [Identity::Associativity, Identity::DerivedC, Identity::RightIdentity]
        .iter()
        .all(|id| id.first_violation(alg).is_none())
        && (0..alg.s()).all(|a| {
            (0..alg.s()).any(|x| alg.th(&[x], a) == alg.e(0) && alg.th(&[a], x) == alg.e(0))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub algebras: Vec<FiniteAlgebra>,
    pub flags: Vec<Flags>,
    /// Structures generated before filtering and deduplication.
    pub candidates: u64,
}

/// How candidates are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Permutation columns for n = 1 under the protomodular filter, free θ
    /// otherwise.
    Auto,
    /// Free θ with α read off from preimages, for any n.
    FreeTheta,
    /// Every (θ, α, e), filters applied afterwards.
    Raw,
}

type Shard = Box<dyn Fn() -> Vec<FiniteAlgebra> + Send + Sync>;

/// Candidate generators, one per shard of the search space.
fn candidates(spec: &SearchSpec, strategy: Strategy) -> Vec<Shard> {
    let (s, n) = (spec.s, spec.n);
    let strategy = spec.resolve(strategy);
    if strategy == Strategy::Raw {
        let theta_len = s.pow(n as u32 + 1);
        let total = (s as u64).pow(theta_len as u32);
        return (0..total)
            .map(|code| {
                Box::new(move || raw_with_theta(s, n, decode_tuple(s, theta_len, code as usize))) as Shard
            })
            .collect();
    }
    if strategy == Strategy::Auto {
        return (0..s)
            .flat_map(|e| {
                let first_columns = permutations_sending(s, e, 0);
                first_columns.into_iter().map(move |first| {
                    Box::new(move || semi_loops(s, e, &first)) as Shard
                })
            })
            .collect();
    }
    let theta_len = s.pow(n as u32 + 1);
    let total = (s as u64).pow(theta_len as u32);
    (0..total)
        .map(|code| {
            Box::new(move || protomodular_with_theta(s, n, decode_tuple(s, theta_len, code as usize))) as Shard
        })
        .collect()
}

/// Permutations p of 0..s with p[e] = b.
fn permutations_sending(s: usize, e: usize, b: usize) -> Vec<Vec<usize>> {
    (0..s).permutations(s).filter(|p| p[e] == b).collect()
}

/// All n = 1 protomodular structures with constant `e` and column 0 = `first`.
fn semi_loops(s: usize, e: usize, first: &[usize]) -> Vec<FiniteAlgebra> {
    let per_column: Vec<Vec<Vec<usize>>> = (1..s).map(|b| permutations_sending(s, e, b)).collect();
    let mut out = Vec::new();
    let rest = per_column.iter().map(|c| c.iter()).multi_cartesian_product();
    let build = |columns: &[&Vec<usize>]| {
        let theta = OperationTable::from_fn(s, 2, |xb| columns[xb[1]][xb[0]]);
        let alpha = OperationTable::from_fn(s, 2, |ab| {
            columns[ab[1]].iter().position(|&v| v == ab[0]).expect("column is a permutation")
        });
        FiniteAlgebra::from_tables(theta, vec![alpha], vec![e]).expect("well-formed tables")
    };
    if s == 1 {
        out.push(build(&[&first.to_vec()]));
        return out;
    }
    for tail in rest {
        let mut columns: Vec<&Vec<usize>> = Vec::with_capacity(s);
        let first = first.to_vec();
        columns.push(&first);
        columns.extend(tail);
        out.push(build(&columns));
    }
    out
}

/// All (α, e) completing `theta` to a protomodular structure, n ≥ 1.
fn protomodular_with_theta(s: usize, n: usize, theta: Vec<usize>) -> Vec<FiniteAlgebra> {
    let theta = OperationTable::new(s, n + 1, theta).expect("generated table");
    let heads: Vec<Vec<usize>> = (0..s.pow(n as u32)).map(|c| decode_tuple(s, n, c)).collect();
    // preimages[b][a] = heads x with θ(x,b) = a
    let mut preimages = vec![vec![Vec::new(); s]; s];
    for (h, x) in heads.iter().enumerate() {
        for (b, column) in preimages.iter_mut().enumerate() {
            column[theta.at(x.iter().copied().chain([b]))].push(h);
        }
    }
    if preimages.iter().any(|col| col.iter().any(|p| p.is_empty())) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for e in &heads {
        if (0..s).any(|a| theta.at(e.iter().copied().chain([a])) != a) {
            continue;
        }
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|a| (0..s).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let choices = free.iter().map(|&(a, b)| preimages[b][a].iter()).multi_cartesian_product();
        let mut emit = |picked: &[&usize]| {
            let mut alphas = vec![vec![0usize; s * s]; n];
            for a in 0..s {
                for (i, table) in alphas.iter_mut().enumerate() {
                    table[a * s + a] = e[i];
                }
            }
            for (&(a, b), &&h) in free.iter().zip(picked) {
                for (i, table) in alphas.iter_mut().enumerate() {
                    table[a * s + b] = heads[h][i];
                }
            }
            let alphas = alphas
                .into_iter()
                .map(|t| OperationTable::new(s, 2, t).expect("generated table"))
                .collect();
            out.push(FiniteAlgebra::from_tables(theta.clone(), alphas, e.clone()).expect("well-formed tables"));
        };
        if free.is_empty() {
            emit(&[]);
        } else {
            for picked in choices {
                emit(&picked);
            }
        }
    }
    out
}

/// Every (α, e) with the given θ, no identities assumed.
fn raw_with_theta(s: usize, n: usize, theta: Vec<usize>) -> Vec<FiniteAlgebra> {
    let alpha_tables = (s as u64).pow((s * s) as u32);
    let consts = (s as u64).pow(n as u32);
    let mut out = Vec::new();
    let per_alpha: Vec<Vec<usize>> = (0..alpha_tables).map(|c| decode_tuple(s, s * s, c as usize)).collect();
    for alphas in (0..n).map(|_| per_alpha.iter()).multi_cartesian_product() {
        for c in 0..consts {
            let es = decode_tuple(s, n, c as usize);
            let a = FiniteAlgebra::new(s, n, theta.clone(), alphas.iter().map(|t| (*t).clone()).collect(), es)
                .expect("well-formed tables");
            out.push(a);
        }
    }
    out
}

/// Structures passing every filter, canonically ordered.
pub fn search(spec: &SearchSpec, limits: &Limits) -> Result<SearchResult> {
    search_with(spec, Strategy::Auto, limits)
}

/// [`search`] with an explicit candidate generator. Every strategy returns
/// the same algebras; they differ only in how many candidates are visited.
pub fn search_with(spec: &SearchSpec, strategy: Strategy, limits: &Limits) -> Result<SearchResult> {
    spec.validate(strategy, limits)?;
    let shards = candidates(spec, strategy);
    let per_shard: Vec<(u64, Vec<(FiniteAlgebra, Flags)>)> = shards
        .par_iter()
        .map(|shard| {
            let algs = shard();
            let count = algs.len() as u64;
            let hits = algs
                .into_iter()
                .filter_map(|a| {
                    let flags = Flags::if_passes(&a, &spec.filters)?;
                    Some(if spec.dedup { (canonical_form(&a), flags) } else { (a, flags) })
                })
                .collect::<Vec<_>>();
            let mut hits = hits;
            if spec.dedup {
                hits.sort_by_key(|x| x.0.key());
                hits.dedup_by(|x, y| x.0 == y.0);
            }
            (count, hits)
        })
        .collect();
    let candidates = per_shard.iter().map(|(c, _)| c).sum();
    let mut hits: Vec<(FiniteAlgebra, Flags)> = per_shard.into_iter().flat_map(|(_, h)| h).collect();
    hits.sort_by_key(|x| x.0.key());
    hits.dedup_by(|x, y| x.0 == y.0);
    let (algebras, flags) = hits.into_iter().unzip();
    Ok(SearchResult {
        spec: spec.clone(),
        algebras,
        flags,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub spec: SearchSpec,
    pub total: usize,
    pub protomodular: usize,
    pub rc_i: usize,
    pub two_associative: usize,
    /// n = 1 only.
    pub groups: Option<usize>,
    /// Count per predicate combination, ordered by flags.
    pub combinations: Vec<(Flags, usize)>,
    /// n = 1 structures with rc-i and θ(a,e) = a that the group-collapse
    /// check does not confirm as groups. Expected to be zero.
    pub group_collapse_violations: usize,
}

/// Counts per predicate combination over the structures `search` returns.
pub fn classify(spec: &SearchSpec, limits: &Limits) -> Result<Classification> {
    let result = search(spec, limits)?;
    let mut combos: BTreeMap<Flags, usize> = BTreeMap::new();
    for f in &result.flags {
        *combos.entry(*f).or_default() += 1;
    }
    let count = |p: fn(&Flags) -> bool| result.flags.iter().filter(|f| p(f)).count();
    let violations = result
        .algebras
        .par_iter()
        .zip(&result.flags)
        .filter(|(a, f)| {
            f.protomodular
                && f.rc_i
                && f.right_identity == Some(true)
                && !check_group_collapse(a).map(|g| g.is_group()).unwrap_or(false)
        })
        .count();
    Ok(Classification {
        spec: spec.clone(),
        total: result.algebras.len(),
        protomodular: count(|f| f.protomodular),
        rc_i: count(|f| f.rc_i),
        two_associative: count(|f| f.two_associative),
        groups: (spec.n == 1).then(|| count(|f| f.group == Some(true))),
        combinations: combos.into_iter().collect(),
        group_collapse_violations: violations,
    })
}

/// One line of a JSON-lines catalog: the algebra fields plus its flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub s: usize,
    pub n: usize,
    pub theta: Vec<usize>,
    pub alphas: Vec<Vec<usize>>,
    pub es: Vec<usize>,
    #[serde(flatten)]
    pub flags: Flags,
}

impl CatalogEntry {
    pub fn new(a: &FiniteAlgebra, flags: Flags) -> Self {
        CatalogEntry {
            s: a.s(),
            n: a.n(),
            theta: a.theta().entries().to_vec(),
            alphas: a.alphas().iter().map(|t| t.entries().to_vec()).collect(),
            es: a.es().to_vec(),
            flags,
        }
    }

    pub fn algebra(&self) -> Result<FiniteAlgebra> {
        FiniteAlgebra::new(self.s, self.n, self.theta.clone(), self.alphas.clone(), self.es.clone())
    }
}

pub fn catalog_lines(result: &SearchResult) -> Result<Vec<String>> {
    result
        .algebras
        .iter()
        .zip(&result.flags)
        .map(|(a, f)| {
            serde_json::to_string(&CatalogEntry::new(a, *f)).map_err(Error::from)
        })
        .collect()
}
