//! The two-element algebra E45, its powers and their quotients, run
//! through every check in the library.

use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_congruences, power, quotient, FiniteAlgebra};
use crate::checks::{check_lemma31_consistency, check_protomodular, check_rc_i, derive_ti, CheckReport, Route};
use crate::error::Result;
use crate::fixtures;
use crate::limits::Limits;
use crate::topology::{check_lemma_4_1, check_theorem_4_2, FiniteTopology};
use crate::uniformity::{check_lemma_4_4, verify_c_conditions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleEntry {
    pub algebra: String,
    pub s: usize,
    /// Set for the uniformity checks run against one topology.
    pub topology: Option<FiniteTopology>,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub entries: Vec<BundleEntry>,
    /// Algebras whose carrier exceeds the topology cap.
    pub topology_skipped: Vec<String>,
}

impl Bundle {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().flat_map(|e| &e.reports).all(|r| r.holds)
    }

    pub fn failures(&self) -> Vec<(&str, &CheckReport)> {
        self.entries
            .iter()
            .flat_map(|e| e.reports.iter().map(move |r| (e.algebra.as_str(), r)))
            .filter(|(_, r)| !r.holds)
            .collect()
    }
}

/// Runs the checks on one algebra and appends the results.
pub fn run_pipeline(label: &str, alg: &FiniteAlgebra, limits: &Limits, bundle: &mut Bundle) -> Result<()> {
    let rc_i = check_rc_i(alg);
    let mut reports = vec![check_protomodular(alg), rc_i.clone(), check_lemma31_consistency(alg)?];
    if rc_i.holds {
        for route in [Route::ViaII, Route::ViaIII] {
            reports.push(derive_ti(alg, route, limits)?.1);
        }
    }
    if limits.check_topology_s(alg.s()).is_err() {
        bundle.entries.push(entry(label, alg, None, reports));
        bundle.topology_skipped.push(label.to_string());
        return Ok(());
    }
    let lemma = check_lemma_4_1(alg, limits)?;
    reports.push(lemma.report);
    let mut per_topology = Vec::new();
    if rc_i.holds {
        reports.push(check_theorem_4_2(alg, limits)?.report);
        for topo in &lemma.t0_topologies {
            let c = verify_c_conditions(alg, topo, limits)?;
            let mut rs: Vec<CheckReport> = c.reports().into_iter().cloned().collect();
            rs.push(check_lemma_4_4(alg, topo)?.report);
            per_topology.push(entry(label, alg, Some(topo.clone()), rs));
        }
    }
    bundle.entries.push(entry(label, alg, None, reports));
    bundle.entries.extend(per_topology);
    Ok(())
}

fn entry(label: &str, alg: &FiniteAlgebra, topology: Option<FiniteTopology>, reports: Vec<CheckReport>) -> BundleEntry {
    BundleEntry {
        algebra: label.to_string(),
        s: alg.s(),
        topology,
        reports,
    }
}

/// E45 itself, then E45² and E45³ together with every quotient of each.
pub fn verify_example_4_5(limits: &Limits) -> Result<Bundle> {
    let mut bundle = Bundle {
        entries: Vec::new(),
        topology_skipped: Vec::new(),
    };
    let e45 = fixtures::e45();
    run_pipeline("E45", &e45, limits, &mut bundle)?;
    for k in [2, 3] {
        let p = power(&e45, k, limits)?;
        let label = format!("E45^{k}");
        run_pipeline(&label, &p, limits, &mut bundle)?;
        for r in enumerate_congruences(&p, limits)? {
            let q = quotient(&p, &r)?;
            run_pipeline(&format!("{label}/{:?}", r.block_of()), &q, limits, &mut bundle)?;
        }
    }
    Ok(bundle)
}
