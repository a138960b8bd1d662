use crate::budget::Budgets;
use crate::error::{invalid, Result};
use crate::rational::{ExtRational, Rational};
use crate::sa::{solve_sa, SaSolution, SaStats};
use crate::vcsp::VcspInstance;

/// Accumulated relaxation work.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaTotals {
    pub sa_calls: u64,
    pub lps: u64,
    pub certificates: u64,
    pub pivots: u64,
    pub max_lp_vars: usize,
    pub max_lp_rows: usize,
}

impl SaTotals {
    pub fn record(&mut self, s: &SaStats) {
        self.sa_calls += 1;
        self.lps += s.lps as u64;
        self.certificates += s.certificates as u64;
        self.pivots += s.pivots;
        self.max_lp_vars = self.max_lp_vars.max(s.lp_vars);
        self.max_lp_rows = self.max_lp_rows.max(s.lp_rows);
    }

    pub fn merge(&mut self, o: &SaTotals) {
        self.sa_calls += o.sa_calls;
        self.lps += o.lps;
        self.certificates += o.certificates;
        self.pivots += o.pivots;
        self.max_lp_vars = self.max_lp_vars.max(o.max_lp_vars);
        self.max_lp_rows = self.max_lp_rows.max(o.max_lp_rows);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnifOutcome {
    /// `assignment[x]` is the 0-based value of variable `x`.
    Assignment { assignment: Vec<usize>, cost: ExtRational },
    /// Pinning some variable to every value changed the relaxed optimum, so
    /// the instance's language has no persistent majority triple.
    NoTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnifReport {
    pub outcome: UnifOutcome,
    pub stats: SaTotals,
}

fn sa(inst: &VcspInstance, budgets: &Budgets, stats: &mut SaTotals) -> Result<SaSolution> {
    let sol = solve_sa(inst, 2, 3, budgets)?;
    stats.record(&sol.stats);
    Ok(sol)
}

/// Self-reduction through SA(2,3). Variables are fixed lowest index first,
/// each to the lowest value whose pinning keeps the relaxed optimum.
///
/// A value already carrying marginal one at the current optimal point is
/// kept without a new solve, and values the relaxation rules out are never
/// tried; neither shortcut changes which value is chosen.
pub fn unif_solve(inst: &VcspInstance, budgets: &Budgets) -> Result<UnifReport> {
    let mut stats = SaTotals::default();
    let n = inst.num_vars();
    let first = sa(inst, budgets, &mut stats)?;
    if !first.is_feasible() {
        return Ok(UnifReport {
            outcome: UnifOutcome::Assignment {
                assignment: vec![0; n],
                cost: ExtRational::Infinite,
            },
            stats,
        });
    }
    let target = first.optimum.clone();
    let mut current = inst.clone();
    let mut point = first;
    let mut assignment = Vec::with_capacity(n);
    let one = Rational::one();
    for x in 0..n {
        let mut chosen = None;
        for a in 0..inst.domain_size() {
            if !point.alive[x][a] {
                continue;
            }
            let mut trial = current.clone();
            trial.pin(x, a)?;
            if point.marginals[x][a] == one {
                current = trial;
                chosen = Some(a);
                break;
            }
            let sol = sa(&trial, budgets, &mut stats)?;
            if sol.optimum == target {
                current = trial;
                point = sol;
                chosen = Some(a);
                break;
            }
        }
        match chosen {
            Some(a) => assignment.push(a),
            None => {
                return Ok(UnifReport {
                    outcome: UnifOutcome::NoTriple,
                    stats,
                })
            }
        }
    }
    let cost = inst.cost(&assignment);
    if cost != target {
        return Err(invalid(format!(
            "self-reduction ended at cost {cost} instead of the relaxed optimum {target}"
        )));
    }
    Ok(UnifReport {
        outcome: UnifOutcome::Assignment { assignment, cost },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vcsp::{brute_force_opt, CostFunction};

    fn r(n: i64) -> ExtRational {
        ExtRational::from_integer(n)
    }

    #[test]
    fn infeasible_gives_infinite_zeros() {
        let mut inst = VcspInstance::new(2, 2);
        inst.add_term(vec![0, 1], CostFunction::constant(2, 2, ExtRational::Infinite).unwrap())
            .unwrap();
        let rep = unif_solve(&inst, &Budgets::default()).unwrap();
        assert_eq!(
            rep.outcome,
            UnifOutcome::Assignment {
                assignment: vec![0, 0],
                cost: ExtRational::Infinite
            }
        );
    }

    #[test]
    fn path_with_costs_matches_brute_force() {
        let mut inst = VcspInstance::new(3, 4);
        for x in 0..3 {
            let f = CostFunction::from_fn(3, 2, |t| if t[0] == t[1] { ExtRational::Infinite } else { r((t[0] * 2 + t[1] + x) as i64 % 5) })
                .unwrap();
            inst.add_term(vec![x, x + 1], f).unwrap();
        }
        let rep = unif_solve(&inst, &Budgets::default()).unwrap();
        let (opt, _) = brute_force_opt(&inst, 1_000_000).unwrap();
        match rep.outcome {
            UnifOutcome::Assignment { assignment, cost } => {
                assert_eq!(cost, opt);
                assert_eq!(inst.cost(&assignment), opt);
            }
            UnifOutcome::NoTriple => panic!("trees have width one"),
        }
    }

    #[test]
    fn triangle_two_coloring_is_infeasible() {
        let mut inst = VcspInstance::new(2, 3);
        let neq = CostFunction::from_fn(2, 2, |t| if t[0] == t[1] { ExtRational::Infinite } else { r(0) }).unwrap();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            inst.add_term(vec![a, b], neq.clone()).unwrap();
        }
        let rep = unif_solve(&inst, &Budgets::default()).unwrap();
        assert!(matches!(rep.outcome, UnifOutcome::Assignment { cost: ExtRational::Infinite, .. }));
    }
}
