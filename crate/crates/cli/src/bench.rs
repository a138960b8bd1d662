//! Benchmark suites. Every suite writes CSV with the header
//!
//! `suite,id,seed,n,h,method,value,trials,subproblems,millis,check`
//!
//! where `n` and `h` are the vertex counts of the input and target, `value`
//! is exact (`p/q` or `inf`) and `check` is a `;`-separated list of
//! `name=value` assertions. Apart from `millis`, output depends only on the
//! seed.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use homlab_core::graph::generators::{cycle, random_digraph, with_pendants};
use homlab_core::poly::odd_cycle_majority;
use homlab_core::solvers::{algorithm_b_trial, alpha_below, brute_force_valhom, trial_seed, valhom_solve, TrialPlan};
use homlab_core::vcsp::{odd_cycle_language, ValHomInstance};
use homlab_core::{Budgets, ExtRational, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// Per-trial success rates of the randomized odd-cycle test.
    OddCycles,
    /// Upper bounds on alpha_k for k = 3..6.
    AlphaTable,
    /// ValHom solver against exhaustive search on random instances.
    OracleEquivalence,
    /// Exhaustive check of the odd-cycle majority polymorphisms, k = 1..6.
    PolymorphismAudit,
}

const HEADER: &str = "suite,id,seed,n,h,method,value,trials,subproblems,millis,check\n";
const ODD_CYCLE_TRIALS: u64 = 500;
const ORACLE_INSTANCES: usize = 30;

struct Row<'a> {
    suite: &'a str,
    id: String,
    seed: u64,
    n: usize,
    h: usize,
    method: &'a str,
    value: String,
    trials: u64,
    subproblems: u64,
    millis: u128,
    check: String,
}

fn push(out: &mut String, r: Row<'_>) {
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.suite, r.id, r.seed, r.n, r.h, r.method, r.value, r.trials, r.subproblems, r.millis, r.check
    )
    .unwrap();
}

pub fn run(suite: Suite, seed: u64, budgets: &Budgets) -> Result<String> {
    let mut out = String::from(HEADER);
    match suite {
        Suite::OddCycles => odd_cycles(&mut out, seed, budgets)?,
        Suite::AlphaTable => alpha_table(&mut out, seed)?,
        Suite::OracleEquivalence => oracle_equivalence(&mut out, seed, budgets)?,
        Suite::PolymorphismAudit => polymorphism_audit(&mut out, seed)?,
    }
    Ok(out)
}

fn odd_cycles(out: &mut String, seed: u64, budgets: &Budgets) -> Result<()> {
    for k in 1..=3 {
        for pendants in [0, 2, 4] {
            let start = Instant::now();
            let base = 2 * k + 1;
            let attach: Vec<usize> = (1..=pendants).collect();
            let g = with_pendants(&cycle(base), &attach);
            let mut yes = 0u64;
            for i in 0..ODD_CYCLE_TRIALS {
                yes += u64::from(algorithm_b_trial(&g, k, trial_seed(seed, i), budgets)?.0);
            }
            let plan = TrialPlan::new(k, g.n(), seed)?;
            let bound = plan.success_lower_bound();
            let p = bound.to_f64();
            let sigma = (p * (1.0 - p) / ODD_CYCLE_TRIALS as f64).sqrt();
            let rate = yes as f64 / ODD_CYCLE_TRIALS as f64;
            push(
                out,
                Row {
                    suite: "odd-cycles",
                    id: format!("k{k}_c{base}_p{pendants}"),
                    seed,
                    n: g.n(),
                    h: base,
                    method: "algorithm-b",
                    value: Rational::new(yes as i64, ODD_CYCLE_TRIALS as i64).to_string(),
                    trials: ODD_CYCLE_TRIALS,
                    subproblems: 0,
                    millis: start.elapsed().as_millis(),
                    check: format!(
                        "bound={};planned_trials={};rate_ok={}",
                        bound.to_decimal(6, false),
                        plan.trials,
                        rate >= p - 3.0 * sigma
                    ),
                },
            );
        }
    }
    Ok(())
}

fn alpha_table(out: &mut String, seed: u64) -> Result<()> {
    for (k, claim) in [(3, 1365), (4, 1313), (5, 1274), (6, 1244)] {
        let start = Instant::now();
        let c = Rational::new(claim, 1000);
        let plan = TrialPlan::new(k, 0, seed)?;
        push(
            out,
            Row {
                suite: "alpha-table",
                id: format!("alpha{k}"),
                seed,
                n: 0,
                h: 2 * k + 1,
                method: "interval",
                value: plan.alpha_hi.to_decimal(9, true),
                trials: 0,
                subproblems: 0,
                millis: start.elapsed().as_millis(),
                check: format!("alpha<{}={}", c.to_decimal(3, false), alpha_below(k, &c)),
            },
        );
    }
    Ok(())
}

fn oracle_equivalence(out: &mut String, seed: u64, budgets: &Budgets) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..ORACLE_INSTANCES {
        let start = Instant::now();
        let n = rng.random_range(1..=6);
        let h = rng.random_range(1..=4);
        let g = random_digraph(n, 0.35, true, &mut rng);
        let hh = random_digraph(h, 0.35, true, &mut rng);
        let inst = ValHomInstance::new(g, hh, |_, _| {
            if rng.random_bool(0.2) {
                ExtRational::Infinite
            } else {
                ExtRational::from_integer(rng.random_range(0..=5))
            }
        });
        let rep = valhom_solve(&inst, None, budgets)?;
        let (oracle, _) = brute_force_valhom(&inst, budgets.assignments)?;
        let witness_ok = rep.witness.as_ref().is_none_or(|w| inst.cost(w) == rep.value);
        push(
            out,
            Row {
                suite: "oracle-equivalence",
                id: format!("valhom{i}"),
                seed,
                n,
                h,
                method: "valhom",
                value: rep.value.to_string(),
                trials: 0,
                subproblems: rep.stats.subproblems,
                millis: start.elapsed().as_millis(),
                check: format!("match={};witness={witness_ok}", rep.value == oracle),
            },
        );
    }
    Ok(())
}

fn polymorphism_audit(out: &mut String, seed: u64) -> Result<()> {
    for k in 1..=6 {
        let start = Instant::now();
        let f = odd_cycle_majority(k)?;
        let (lang, _) = odd_cycle_language(k);
        let verified = f.is_majority() && lang.relations().iter().all(|r| f.preserves(&r.pairs));
        push(
            out,
            Row {
                suite: "polymorphism-audit",
                id: format!("k{k}"),
                seed,
                n: 2 * k + 1,
                h: 2 * k + 1,
                method: "exhaustive",
                value: lang.relations().len().to_string(),
                trials: 0,
                subproblems: 0,
                millis: start.elapsed().as_millis(),
                check: format!("verified={verified}"),
            },
        );
    }
    Ok(())
}
