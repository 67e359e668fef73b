//! Exhaustive identity checks over finite algebras.
//!
//! Every check scans its whole tuple space and reports the lexicographically
//! least violation, so reports are reproducible byte for byte.

mod lemma31;

pub use lemma31::{
    check_group_collapse, check_lemma31_consistency, check_rc_iv_semantic, derive_ti, DerivedTermTables, GroupCollapse,
    Lemma31Pattern, Route,
};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::parallel::first_tuple;

/// A failing tuple: both sides of the identity evaluated at `tuple`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Label of the identity or implication that failed, e.g. `(3.1)`.
    pub identity: String,
    /// One-based operation index `i`, when the identity is indexed.
    pub index: Option<usize>,
    pub tuple: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            holds: true,
            counterexample: None,
        }
    }

    pub fn fail(check: impl Into<String>, cex: Counterexample) -> Self {
        CheckReport {
            check: check.into(),
            holds: false,
            counterexample: Some(cex),
        }
    }

    /// Turns a failed report into a precondition error.
    pub fn require(self) -> Result<()> {
        if self.holds {
            Ok(())
        } else {
            Err(Error::precondition(self.check.clone(), self.to_string()))
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: holds", self.check),
            Some(c) => write!(f, "{}: FAILS, {c}", self.check),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails", self.identity)?;
        if let Some(i) = self.index {
            write!(f, " for i={i}")?;
        }
        if !self.tuple.is_empty() {
            let vals: Vec<String> = self.tuple.iter().map(|v| v.to_string()).collect();
            write!(f, " at ({})", vals.join(","))?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

/// The identities of the signature that are checked tuple by tuple.
///
/// Tuple layouts (each `a` block has n entries):
/// `(2.1)` a · `(2.2)` a b · `(a)` a b c · `(b)` a b · `(c)` a ·
/// `(2.5)` a̅ b̅ c · `(3.1)` a̅ a̅′ b b′ · `(3.2)`/`(3.3)` a̅ a̅′ a̅″ b b′ ·
/// `(3.6)`/`(3.7)` a̅ b b′ · `(3.8)`/`(3.9)` a · `(3.10)` a a′ b ·
/// `assoc` a b c · `inverse` a.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// αᵢ(a,a) = eᵢ
    ConstantDiagonal,
    /// θ(α₁(a,b),…,αₙ(a,b),b) = a
    Recovery,
    /// αᵢ(a,c) = αᵢ(b,c) for all i ⇒ a = b
    DerivedA,
    /// αᵢ(a,b) = eᵢ for all i ⇒ a = b
    DerivedB,
    /// θ(e₁,…,eₙ,a) = a
    DerivedC,
    TwoAssociative,
    Rc1,
    Rc2,
    Rc3,
    Rc6,
    Rc7,
    /// θ(a,e) = a, n = 1
    RightIdentity,
    /// α(a,e) = a, n = 1
    RightDivisionUnit,
    /// α(θ(a,b),θ(a′,b)) = α(a,a′), n = 1
    QuotientCancel,
    /// θ(θ(a,b),c) = θ(a,θ(b,c)), n = 1
    Associativity,
    /// θ(a, α(e,a)) = e, n = 1
    RightInverse,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::ConstantDiagonal,
        Identity::Recovery,
        Identity::DerivedA,
        Identity::DerivedB,
        Identity::DerivedC,
        Identity::TwoAssociative,
        Identity::Rc1,
        Identity::Rc2,
        Identity::Rc3,
        Identity::Rc6,
        Identity::Rc7,
        Identity::RightIdentity,
        Identity::RightDivisionUnit,
        Identity::QuotientCancel,
        Identity::Associativity,
        Identity::RightInverse,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::ConstantDiagonal => "(2.1)",
            Identity::Recovery => "(2.2)",
            Identity::DerivedA => "(a)",
            Identity::DerivedB => "(b)",
            Identity::DerivedC => "(c)",
            Identity::TwoAssociative => "(2.5)",
            Identity::Rc1 => "(3.1)",
            Identity::Rc2 => "(3.2)",
            Identity::Rc3 => "(3.3)",
            Identity::Rc6 => "(3.6)",
            Identity::Rc7 => "(3.7)",
            Identity::RightIdentity => "(3.8)",
            Identity::RightDivisionUnit => "(3.9)",
            Identity::QuotientCancel => "(3.10)",
            Identity::Associativity => "assoc",
            Identity::RightInverse => "inverse",
        }
    }

    pub fn from_label(label: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|id| id.label() == label)
    }

    /// Number of element variables for signature parameter `n`.
    pub fn vars(self, n: usize) -> usize {
        match self {
            Identity::ConstantDiagonal | Identity::DerivedC => 1,
            Identity::Recovery | Identity::DerivedB => 2,
            Identity::DerivedA => 3,
            Identity::TwoAssociative => 2 * n + 1,
            Identity::Rc1 => 2 * n + 2,
            Identity::Rc2 | Identity::Rc3 => 3 * n + 2,
            Identity::Rc6 | Identity::Rc7 => n + 2,
            Identity::RightIdentity | Identity::RightDivisionUnit | Identity::RightInverse => 1,
            Identity::QuotientCancel | Identity::Associativity => 3,
        }
    }

    /// Whether the identity is stated separately for each i.
    pub fn indexed(self) -> bool {
        matches!(
            self,
            Identity::ConstantDiagonal | Identity::Rc1 | Identity::Rc2 | Identity::Rc3 | Identity::Rc6 | Identity::Rc7
        )
    }

    /// Only meaningful for n = 1.
    pub fn binary_only(self) -> bool {
        matches!(
            self,
            Identity::RightIdentity
                | Identity::RightDivisionUnit
                | Identity::QuotientCancel
                | Identity::Associativity
                | Identity::RightInverse
        )
    }

    /// Both sides at `t` for zero-based index `i` (ignored when not indexed).
    /// Implications evaluate to equal sides whenever the premise fails.
    pub fn evaluate(self, alg: &FiniteAlgebra, i: usize, t: &[usize]) -> (usize, usize) {
        let n = alg.n();
        match self {
            Identity::ConstantDiagonal => (alg.alpha(i, t[0], t[0]), alg.e(i)),
            Identity::Recovery => {
                let (a, b) = (t[0], t[1]);
                (alg.th_iter((0..n).map(|j| alg.alpha(j, a, b)), b), a)
            }
            Identity::DerivedA => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let premise = (0..n).all(|j| alg.alpha(j, a, c) == alg.alpha(j, b, c));
                if premise {
                    (a, b)
                } else {
                    (a, a)
                }
            }
            Identity::DerivedB => {
                let (a, b) = (t[0], t[1]);
                if (0..n).all(|j| alg.alpha(j, a, b) == alg.e(j)) {
                    (a, b)
                } else {
                    (a, a)
                }
            }
            Identity::DerivedC => (alg.th_iter(alg.es().iter().copied(), t[0]), t[0]),
            Identity::TwoAssociative => {
                let (a, rest) = t.split_at(n);
                let (b, c) = (&rest[..n], rest[n]);
                let lhs = alg.th(a, alg.th(b, c));
                let rhs = alg.th_iter(b.iter().map(|&bj| alg.th(a, bj)), c);
                (lhs, rhs)
            }
            Identity::Rc1 => {
                let (a, rest) = t.split_at(n);
                let (a1, b, b1) = (&rest[..n], rest[n], rest[n + 1]);
                (
                    alg.alpha(i, alg.th(a, b), alg.th(a1, b)),
                    alg.alpha(i, alg.th(a, b1), alg.th(a1, b1)),
                )
            }
            Identity::Rc2 => {
                let (a, a1, a2, b, b1) = split3(t, n);
                let side = |b: usize| alg.alpha(i, alg.th(a, alg.th(a1, b)), alg.th(a2, b));
                (side(b), side(b1))
            }
            Identity::Rc3 => {
                let (a, a1, a2, b, b1) = split3(t, n);
                let side = |b: usize| alg.alpha(i, alg.th(a, b), alg.th(a1, alg.th(a2, b)));
                (side(b), side(b1))
            }
            Identity::Rc6 => {
                let (a, b, b1) = (&t[..n], t[n], t[n + 1]);
                (alg.alpha(i, alg.th(a, b), b), alg.alpha(i, alg.th(a, b1), b1))
            }
            Identity::Rc7 => {
                let (a, b, b1) = (&t[..n], t[n], t[n + 1]);
                (alg.alpha(i, b, alg.th(a, b)), alg.alpha(i, b1, alg.th(a, b1)))
            }
            Identity::RightIdentity => (alg.th(&[t[0]], alg.e(0)), t[0]),
            Identity::RightDivisionUnit => (alg.alpha(0, t[0], alg.e(0)), t[0]),
            Identity::QuotientCancel => {
                let (a, a1, b) = (t[0], t[1], t[2]);
                (alg.alpha(0, alg.th(&[a], b), alg.th(&[a1], b)), alg.alpha(0, a, a1))
            }
            Identity::Associativity => {
                let (a, b, c) = (t[0], t[1], t[2]);
                (alg.th(&[alg.th(&[a], b)], c), alg.th(&[a], alg.th(&[b], c)))
            }
            Identity::RightInverse => {
                let a = t[0];
                (alg.th(&[a], alg.alpha(0, alg.e(0), a)), alg.e(0))
            }
        }
    }

    /// First violation in lexicographic tuple order (ties broken by smallest i).
    pub fn first_violation(self, alg: &FiniteAlgebra) -> Option<Counterexample> {
        if self.binary_only() && alg.n() != 1 {
            return None;
        }
        let indices = if self.indexed() { alg.n() } else { 1 };
        first_tuple(alg.s(), self.vars(alg.n()), |t| {
            (0..indices).find_map(|i| {
                let (lhs, rhs) = self.evaluate(alg, i, t);
                (lhs != rhs).then_some((i, lhs, rhs))
            })
        })
        .map(|(tuple, (i, lhs, rhs))| Counterexample {
            identity: self.label().to_string(),
            index: self.indexed().then_some(i + 1),
            tuple,
            lhs,
            rhs,
        })
    }
}

fn split3(t: &[usize], n: usize) -> (&[usize], &[usize], &[usize], usize, usize) {
    (&t[..n], &t[n..2 * n], &t[2 * n..3 * n], t[3 * n], t[3 * n + 1])
}

/// Re-evaluates a counterexample produced by an identity check.
/// Returns `None` for labels that are not tuple identities.
pub fn reproduce(alg: &FiniteAlgebra, cex: &Counterexample) -> Option<(usize, usize)> {
    let id = Identity::from_label(&cex.identity)?;
    if cex.tuple.len() != id.vars(alg.n()) || cex.tuple.iter().any(|&x| x >= alg.s()) {
        return None;
    }
    let i = cex.index.map_or(0, |i| i - 1);
    Some(id.evaluate(alg, i, &cex.tuple))
}

/// Checks the identities in order and reports the first one that fails.
pub fn check_identities(alg: &FiniteAlgebra, name: &str, ids: &[Identity]) -> CheckReport {
    ids.iter()
        .find_map(|id| id.first_violation(alg))
        .map_or_else(|| CheckReport::pass(name), |c| CheckReport::fail(name, c))
}

/// αᵢ(a,a) = eᵢ and θ(α₁(a,b),…,αₙ(a,b),b) = a.
pub fn check_protomodular(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "protomodular", &[Identity::ConstantDiagonal, Identity::Recovery])
}

/// The consequences (a), (b), (c) of protomodularity.
pub fn check_derived_abc(alg: &FiniteAlgebra) -> Result<[CheckReport; 3]> {
    check_protomodular(alg).require()?;
    Ok([
        check_identities(alg, "abc-a", &[Identity::DerivedA]),
        check_identities(alg, "abc-b", &[Identity::DerivedB]),
        check_identities(alg, "abc-c", &[Identity::DerivedC]),
    ])
}

pub fn check_2_associative(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "2-assoc", &[Identity::TwoAssociative])
}

/// Right-cancellability in its defining form.
pub fn check_rc_i(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "rc-i", &[Identity::Rc1])
}

pub fn check_rc_ii(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "rc-ii", &[Identity::Rc2])
}

pub fn check_rc_iii(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "rc-iii", &[Identity::Rc3])
}

pub fn check_rc_v(alg: &FiniteAlgebra) -> CheckReport {
    check_identities(alg, "rc-v", &[Identity::Rc6, Identity::Rc7])
}

/// θ(a, e) = a for n = 1.
pub fn check_right_identity(alg: &FiniteAlgebra) -> Result<CheckReport> {
    if alg.n() != 1 {
        return Err(Error::input("n", "(3.8) is stated for n = 1 only"));
    }
    Ok(check_identities(alg, "right-identity", &[Identity::RightIdentity]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power, FiniteAlgebra};
    use crate::fixtures;
    use crate::limits::Limits;
    use proptest::prelude::*;

    #[test]
    fn fixtures_are_protomodular() {
        assert!(check_protomodular(&fixtures::e45()).holds);
        assert!(check_protomodular(&fixtures::g2()).holds);
        assert!(check_protomodular(&fixtures::l3()).holds);
        assert!(check_protomodular(&fixtures::one(3)).holds);
    }

    #[test]
    fn g2_with_wrong_constant_breaks_constant_diagonal() {
        let bad = FiniteAlgebra::new(2, 1, vec![0, 1, 1, 0], vec![vec![0, 1, 1, 0]], vec![1]).unwrap();
        let r = check_protomodular(&bad);
        assert!(!r.holds);
        let c = r.counterexample.unwrap();
        assert_eq!(c.identity, "(2.1)");
        assert_eq!((c.index, c.tuple.as_slice(), c.lhs, c.rhs), (Some(1), &[0][..], 0, 1));
    }

    #[test]
    fn derived_facts_hold_on_fixtures() {
        for a in [fixtures::e45(), fixtures::g2(), fixtures::l3()] {
            for r in check_derived_abc(&a).unwrap() {
                assert!(r.holds, "{r}");
            }
        }
    }

    #[test]
    fn derived_facts_need_protomodularity() {
        let bad = FiniteAlgebra::new(2, 1, vec![0, 0, 0, 0], vec![vec![0, 0, 0, 0]], vec![0]).unwrap();
        assert!(matches!(check_derived_abc(&bad), Err(Error::Precondition { .. })));
    }

    #[test]
    fn two_associativity_on_fixtures() {
        assert!(check_2_associative(&fixtures::g2()).holds);
        assert!(check_2_associative(&fixtures::one(2)).holds);
        // E45 is θ(x,y,z) = x+y+z+1 over GF(2): the left side of (2.5) is
        // a1+a2+b1+b2+c, the right side b1+b2+c+1, so they differ iff a1 = a2.
        let r = check_2_associative(&fixtures::e45());
        let c = r.counterexample.expect("E45 is not 2-associative");
        assert_eq!(c.tuple, vec![0, 0, 0, 0, 0]);
        assert_eq!((c.lhs, c.rhs), (0, 1));
    }

    #[test]
    fn rc_i_on_fixtures() {
        assert!(check_rc_i(&fixtures::e45()).holds);
        assert!(check_rc_i(&fixtures::g2()).holds);
        let c = check_rc_i(&fixtures::l3()).counterexample.expect("L3 is not right-cancellable");
        assert_eq!(c.identity, "(3.1)");
        assert_eq!(c.tuple, vec![0, 1, 0, 2]);
        assert_eq!((c.lhs, c.rhs), (1, 2));
    }

    #[test]
    fn l3_documented_witness_violates_rc_i() {
        // a=1, a'=2 compared between b=0 and b=1
        let (lhs, rhs) = Identity::Rc1.evaluate(&fixtures::l3(), 0, &[1, 2, 0, 1]);
        assert_eq!((lhs, rhs), (1, 2));
    }

    #[test]
    fn other_rc_forms_on_fixtures() {
        for a in [fixtures::e45(), fixtures::g2()] {
            assert!(check_rc_ii(&a).holds);
            assert!(check_rc_iii(&a).holds);
            assert!(check_rc_v(&a).holds);
        }
        assert!(!check_rc_ii(&fixtures::l3()).holds);
        assert!(!check_rc_iii(&fixtures::l3()).holds);
    }

    #[test]
    fn right_identity_is_binary_only() {
        assert!(check_right_identity(&fixtures::g2()).unwrap().holds);
        assert!(matches!(check_right_identity(&fixtures::e45()), Err(Error::Input { .. })));
    }

    #[test]
    fn report_json_shape() {
        let r = check_rc_i(&fixtures::l3());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"check":"rc-i","holds":false,"counterexample":{"identity":"(3.1)","index":1,"tuple":[0,1,0,2],"lhs":1,"rhs":2}}"#
        );
        assert_eq!(
            serde_json::to_string(&check_rc_i(&fixtures::g2())).unwrap(),
            r#"{"check":"rc-i","holds":true,"counterexample":null}"#
        );
    }

    #[test]
    fn identities_transport_to_powers() {
        let e45 = fixtures::e45();
        for k in 1..=3 {
            let p = power(&e45, k, &Limits::default()).unwrap();
            assert!(check_protomodular(&p).holds);
            assert!(check_rc_i(&p).holds);
        }
    }

    fn arb_algebra() -> impl Strategy<Value = FiniteAlgebra> {
        (1usize..=3, 1usize..=2).prop_flat_map(|(s, n)| {
            let theta = prop::collection::vec(0..s, s.pow(n as u32 + 1));
            let alphas = prop::collection::vec(prop::collection::vec(0..s, s * s), n);
            let es = prop::collection::vec(0..s, n);
            (theta, alphas, es).prop_map(move |(t, a, e)| FiniteAlgebra::new(s, n, t, a, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn counterexamples_reproduce(alg in arb_algebra()) {
            for id in Identity::ALL {
                match id.first_violation(&alg) {
                    Some(c) => {
                        prop_assert_eq!(reproduce(&alg, &c), Some((c.lhs, c.rhs)));
                        prop_assert_ne!(c.lhs, c.rhs);
                    }
                    None if !(id.binary_only() && alg.n() != 1) => {
                        // exhaustive re-scan in plain nested order
                        let vars = id.vars(alg.n());
                        let total = alg.s().pow(vars as u32);
                        let idx = if id.indexed() { alg.n() } else { 1 };
                        for code in 0..total {
                            let t = crate::algebra::decode_tuple(alg.s(), vars, code);
                            for i in 0..idx {
                                let (l, r) = id.evaluate(&alg, i, &t);
                                prop_assert_eq!(l, r);
                            }
                        }
                    }
                    None => {}
                }
            }
        }

        #[test]
        fn reports_hold_iff_no_counterexample(alg in arb_algebra()) {
            for r in [check_protomodular(&alg), check_rc_i(&alg), check_rc_v(&alg), check_2_associative(&alg)] {
                prop_assert_eq!(r.holds, r.counterexample.is_none());
            }
        }

        #[test]
        fn rc_i_invariant_under_relabeling(alg in arb_algebra()) {
            let c = crate::algebra::canonical_form(&alg);
            prop_assert_eq!(check_rc_i(&alg).holds, check_rc_i(&c).holds);
        }
    }
}
