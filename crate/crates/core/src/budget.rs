//! Resource limits for the exponential procedures.
//!
//! `HOMLAB_BUDGET` overrides the defaults. It holds either a bare integer,
//! applied to every limit, or comma-separated `key=value` pairs with keys
//! `assignments`, `subproblems`, `pivots` and `nodes`.

use crate::error::ParseError;

pub const ENV_VAR: &str = "HOMLAB_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Assignments enumerated by brute-force oracles.
    pub assignments: u64,
    /// VCSP subproblems solved by `valhom_solve`.
    pub subproblems: u64,
    /// Simplex pivots per LP.
    pub pivots: u64,
    /// Search nodes for `search_triple`.
    pub nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            assignments: 100_000_000,
            subproblems: 1_000_000,
            pivots: 10_000_000,
            nodes: 1_000_000_000,
        }
    }
}

impl Budgets {
    pub fn unlimited() -> Self {
        Budgets {
            assignments: u64::MAX,
            subproblems: u64::MAX,
            pivots: u64::MAX,
            nodes: u64::MAX,
        }
    }

    /// Defaults with `HOMLAB_BUDGET` applied, if set.
    pub fn from_env() -> Result<Self, ParseError> {
        let mut b = Budgets::default();
        if let Ok(spec) = std::env::var(ENV_VAR) {
            b.apply(&spec)?;
        }
        Ok(b)
    }

    pub fn apply(&mut self, spec: &str) -> Result<(), ParseError> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(());
        }
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| ParseError::BadNumber(s.trim().to_string()))
        };
        if !spec.contains('=') {
            let v = num(spec)?;
            *self = Budgets {
                assignments: v,
                subproblems: v,
                pivots: v,
                nodes: v,
            };
            return Ok(());
        }
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| ParseError::Structure(format!("bad budget item `{item}`")))?;
            let v = num(value)?;
            match key.trim() {
                "assignments" => self.assignments = v,
                "subproblems" => self.subproblems = v,
                "pivots" => self.pivots = v,
                "nodes" => self.nodes = v,
                other => return Err(ParseError::Structure(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(())
    }
}
