//! The equivalent forms of right-cancellability, the explicit term
//! witnesses `Tᵢ`, and the collapse of right-cancellable left semi-loops to
//! groups.

use serde::{Deserialize, Serialize};

use super::{
    check_2_associative, check_identities, check_protomodular, check_rc_i, check_rc_ii, check_rc_iii, check_rc_v,
    CheckReport, Counterexample, Identity,
};
use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parallel::first_tuple;

/// Which of the two term constructions supplies `Tᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    /// tⱼ(x,y) = αⱼ(θ(x,eⱼ),θ(y,eⱼ)),
    /// Tᵢ(a,a′,a″) = αᵢ(θ(t(a″,a′), θ(a,eᵢ)), eᵢ).
    #[serde(rename = "via-ii")]
    ViaII,
    /// tⱼ(x) = αⱼ(eⱼ,θ(x,eⱼ)),
    /// Tᵢ(a,a′,a″) = αᵢ(θ(a″,eᵢ), θ(t(a), θ(a′,eᵢ))).
    #[serde(rename = "via-iii")]
    ViaIII,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::ViaII => "via-ii",
            Route::ViaIII => "via-iii",
        }
    }
}

/// Tabulated terms. `t` has arity 2n on the via-ii route and n on the via-iii
/// route; every `big_t[i]` has arity 3n with argument blocks (a, a′, a″).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTermTables {
    pub route: Route,
    pub t: Vec<OperationTable>,
    pub big_t: Vec<OperationTable>,
}

impl DerivedTermTables {
    /// Tᵢ(a, a′, a″).
    pub fn eval_big_t(&self, i: usize, a: &[usize], a1: &[usize], a2: &[usize]) -> usize {
        self.big_t[i].at(a.iter().chain(a1).chain(a2).copied())
    }
}

/// Functional-dependency form of condition (iv): whenever
/// θ(a,b) = θ(a′,b′), the value αᵢ(θ(a″,b′),b) depends on (a,a′,a″) only.
///
/// A counterexample lists (a, a′, a″, b₁, b₁′, b₂, b₂′) for two admissible
/// pairs giving different values.
pub fn check_rc_iv_semantic(alg: &FiniteAlgebra) -> Result<CheckReport> {
    check_protomodular(alg).require()?;
    let (s, n) = (alg.s(), alg.n());
    let hit = first_tuple(s, 3 * n, |key| {
        let (a, rest) = key.split_at(n);
        let (a1, a2) = rest.split_at(n);
        (0..n).find_map(|i| {
            let mut first: Option<(usize, usize, usize)> = None;
            for b in 0..s {
                let left = alg.th(a, b);
                for b1 in 0..s {
                    if alg.th(a1, b1) != left {
                        continue;
                    }
                    let v = alg.alpha(i, alg.th(a2, b1), b);
                    match first {
                        None => first = Some((b, b1, v)),
                        Some((fb, fb1, fv)) if fv != v => return Some((i, [fb, fb1, b, b1], fv, v)),
                        Some(_) => {}
                    }
                }
            }
            None
        })
    });
    Ok(match hit {
        None => CheckReport::pass("rc-iv"),
        Some((key, (i, pairs, lhs, rhs))) => {
            let mut tuple = key;
            tuple.extend_from_slice(&pairs);
            CheckReport::fail(
                "rc-iv",
                Counterexample {
                    identity: "(3.5)".into(),
                    index: Some(i + 1),
                    tuple,
                    lhs,
                    rhs,
                },
            )
        }
    })
}

/// Tabulates the explicit terms `tᵢ` and `Tᵢ` and verifies that they
/// witness (3.4) ⇒ (3.5) on every constrained tuple.
///
/// The report also checks Tᵢ(e,…,e) = eᵢ and, on the via-ii route, that
/// cancelling over eᵢ gives the same `t` table as cancelling over any other
/// element.
pub fn derive_ti(alg: &FiniteAlgebra, route: Route, limits: &Limits) -> Result<(DerivedTermTables, CheckReport)> {
    check_rc_i(alg).require()?;
    let (s, n) = (alg.s(), alg.n());
    limits.check_table(s, 3 * n)?;

    let t: Vec<OperationTable> = (0..n)
        .map(|j| match route {
            Route::ViaII => OperationTable::from_fn(s, 2 * n, |xy| {
                alg.alpha(j, alg.th(&xy[..n], alg.e(j)), alg.th(&xy[n..], alg.e(j)))
            }),
            Route::ViaIII => OperationTable::from_fn(s, n, |x| alg.alpha(j, alg.e(j), alg.th(x, alg.e(j)))),
        })
        .collect();

    let big_t: Vec<OperationTable> = (0..n)
        .map(|i| {
            let ei = alg.e(i);
            OperationTable::from_fn(s, 3 * n, |v| {
                let (a, a1, a2) = (&v[..n], &v[n..2 * n], &v[2 * n..]);
                match route {
                    Route::ViaII => {
                        let ts = t.iter().map(|tj| tj.at(a2.iter().chain(a1).copied()));
                        alg.alpha(i, alg.th_iter(ts, alg.th(a, ei)), ei)
                    }
                    Route::ViaIII => {
                        let ts = t.iter().map(|tj| tj.at(a.iter().copied()));
                        alg.alpha(i, alg.th(a2, ei), alg.th_iter(ts, alg.th(a1, ei)))
                    }
                }
            })
        })
        .collect();

    let tables = DerivedTermTables { route, t, big_t };
    let name = format!("derive-Ti({})", route.label());

    let witness = first_tuple(s, 3 * n + 2, |v| {
        let (a, a1, a2) = (&v[..n], &v[n..2 * n], &v[2 * n..3 * n]);
        let (b, b1) = (v[3 * n], v[3 * n + 1]);
        if alg.th(a, b) != alg.th(a1, b1) {
            return None;
        }
        (0..n).find_map(|i| {
            let actual = alg.alpha(i, alg.th(a2, b1), b);
            let term = tables.eval_big_t(i, a, a1, a2);
            (actual != term).then_some((i, actual, term))
        })
    });
    if let Some((tuple, (i, lhs, rhs))) = witness {
        let cex = Counterexample {
            identity: "T-witness".into(),
            index: Some(i + 1),
            tuple,
            lhs,
            rhs,
        };
        return Ok((tables, CheckReport::fail(name, cex)));
    }

    let es = alg.es();
    if let Some(i) = (0..n).find(|&i| tables.eval_big_t(i, es, es, es) != alg.e(i)) {
        let cex = Counterexample {
            identity: "T(e)=e".into(),
            index: Some(i + 1),
            tuple: [es, es, es].concat(),
            lhs: tables.eval_big_t(i, es, es, es),
            rhs: alg.e(i),
        };
        return Ok((tables, CheckReport::fail(name, cex)));
    }

    if route == Route::ViaII {
        let drift = first_tuple(s, 2 * n + 1, |v| {
            let (x, y, c) = (&v[..n], &v[n..2 * n], v[2 * n]);
            (0..n).find_map(|j| {
                let here = alg.alpha(j, alg.th(x, c), alg.th(y, c));
                let table = tables.t[j].at(x.iter().chain(y).copied());
                (here != table).then_some((j, here, table))
            })
        });
        if let Some((tuple, (j, lhs, rhs))) = drift {
            let cex = Counterexample {
                identity: "t-base".into(),
                index: Some(j + 1),
                tuple,
                lhs,
                rhs,
            };
            return Ok((tables, CheckReport::fail(name, cex)));
        }
    }

    Ok((tables, CheckReport::pass(name)))
}

/// Outcomes of every form of right-cancellability on one algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lemma31Pattern {
    pub rc_i: bool,
    pub rc_ii: bool,
    pub rc_iii: bool,
    pub rc_iv: bool,
    pub rc_v: bool,
    pub two_associative: bool,
}

impl Lemma31Pattern {
    pub fn of(alg: &FiniteAlgebra) -> Result<Self> {
        Ok(Lemma31Pattern {
            rc_iv: check_rc_iv_semantic(alg)?.holds,
            rc_i: check_rc_i(alg).holds,
            rc_ii: check_rc_ii(alg).holds,
            rc_iii: check_rc_iii(alg).holds,
            rc_v: check_rc_v(alg).holds,
            two_associative: check_2_associative(alg).holds,
        })
    }

    /// The first implication of the equivalence that this pattern breaks.
    pub fn violation(&self) -> Option<(&'static str, bool, bool)> {
        let rules = [
            ("rc-i => rc-ii", self.rc_i, self.rc_ii),
            ("rc-ii => rc-i", self.rc_ii, self.rc_i),
            ("rc-i => rc-iii", self.rc_i, self.rc_iii),
            ("rc-iii => rc-i", self.rc_iii, self.rc_i),
            ("rc-i => rc-iv", self.rc_i, self.rc_iv),
            ("rc-iv => rc-i", self.rc_iv, self.rc_i),
            ("rc-i => rc-v", self.rc_i, self.rc_v),
            ("2-assoc & rc-v => rc-i", self.two_associative && self.rc_v, self.rc_i),
        ];
        rules.into_iter().find(|&(_, premise, conclusion)| premise && !conclusion)
    }
}

/// Asserts the equivalences (i) ⇔ (ii) ⇔ (iii) ⇔ (iv), their implication of
/// (v), and (v) ⇒ (i) under 2-associativity.
pub fn check_lemma31_consistency(alg: &FiniteAlgebra) -> Result<CheckReport> {
    let pattern = Lemma31Pattern::of(alg)?;
    Ok(match pattern.violation() {
        None => CheckReport::pass("lemma31"),
        Some((rule, premise, conclusion)) => CheckReport::fail(
            "lemma31",
            Counterexample {
                identity: rule.into(),
                index: None,
                tuple: vec![],
                lhs: premise as usize,
                rhs: conclusion as usize,
            },
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupCollapse {
    /// The hypothesis (rc-i together with θ(a,e) = a) fails.
    NotApplicable { reason: String },
    Checked(CheckReport),
}

impl GroupCollapse {
    /// Report form; a non-applicable collapse holds vacuously.
    pub fn report(&self) -> CheckReport {
        match self {
            GroupCollapse::NotApplicable { .. } => CheckReport::pass("group"),
            GroupCollapse::Checked(r) => r.clone(),
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(self, GroupCollapse::Checked(r) if r.holds)
    }
}

/// For n = 1: if rc-i and θ(a,e) = a hold, θ must be a group operation with
/// identity e and inverses, and (3.9), (3.10) must hold.
pub fn check_group_collapse(alg: &FiniteAlgebra) -> Result<GroupCollapse> {
    if alg.n() != 1 {
        return Err(Error::input("n", "group collapse is stated for n = 1"));
    }
    check_protomodular(alg).require()?;
    if !check_rc_i(alg).holds {
        return Ok(GroupCollapse::NotApplicable {
            reason: "rc-i fails".into(),
        });
    }
    if Identity::RightIdentity.first_violation(alg).is_some() {
        return Ok(GroupCollapse::NotApplicable {
            reason: "(3.8) fails".into(),
        });
    }
    Ok(GroupCollapse::Checked(check_identities(
        alg,
        "group",
        &[
            Identity::Associativity,
            Identity::DerivedC,
            Identity::RightIdentity,
            Identity::RightInverse,
            Identity::RightDivisionUnit,
            Identity::QuotientCancel,
        ],
    )))
}
