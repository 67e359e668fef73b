use crate::error::{Error, Result};

/// Largest carrier for which topology enumeration is ever attempted.
/// 6 points already means 2^30 candidate relations.
pub const TOPOLOGY_S_CEILING: usize = 5;

/// Size caps shared by every exhaustive routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of entries in any single operation table.
    pub table_entry_max: u128,
    /// Largest carrier whose partitions are enumerated.
    pub congruence_s_max: usize,
    /// Largest carrier whose topologies are enumerated.
    pub topology_s_max: usize,
    /// Upper bound on estimated search candidates.
    pub search_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_entry_max: 10_000_000,
            congruence_s_max: 8,
            topology_s_max: 4,
            search_budget: 1_000_000_000,
        }
    }
}

impl Limits {
    pub fn with_topology_s_max(mut self, s: usize) -> Self {
        self.topology_s_max = s;
        self
    }

    pub(crate) fn check_table(&self, s: usize, arity: usize) -> Result<usize> {
        let entries = (s as u128)
            .checked_pow(arity as u32)
            .unwrap_or(u128::MAX);
        if entries > self.table_entry_max {
            return Err(Error::limit(
                format!("table with carrier {s} and arity {arity}"),
                entries,
                self.table_entry_max,
            ));
        }
        Ok(entries as usize)
    }

    pub(crate) fn check_topology_s(&self, s: usize) -> Result<()> {
        let cap = self.topology_s_max.min(TOPOLOGY_S_CEILING);
        if s > cap {
            return Err(Error::limit(
                "carrier size for topology enumeration",
                s as u128,
                cap as u128,
            ));
        }
        Ok(())
    }

    pub(crate) fn check_congruence_s(&self, s: usize) -> Result<()> {
        if s > self.congruence_s_max {
            return Err(Error::limit(
                "carrier size for congruence enumeration",
                s as u128,
                self.congruence_s_max as u128,
            ));
        }
        Ok(())
    }
}
