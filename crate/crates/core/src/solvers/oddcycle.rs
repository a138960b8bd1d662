use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rational::{ExtRational, Rational};
use crate::sa::solve_sa;
use crate::vcsp::{CostFunction, OddCycleFamily, OddSet, VcspInstance};

/// The splitmix64 finaliser.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`: `splitmix64(master ^ splitmix64(index))`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

fn dyadic(num: BigInt, bits: u32) -> Rational {
    Rational::from_bigint(num) / Rational::from_bigint(BigInt::one() << bits)
}

fn round_down(r: &Rational, bits: u32) -> Rational {
    let scaled = r * &Rational::from_bigint(BigInt::one() << bits);
    dyadic(scaled.floor(), bits)
}

fn round_up(r: &Rational, bits: u32) -> Rational {
    let scaled = r * &Rational::from_bigint(BigInt::one() << bits);
    dyadic(scaled.ceil(), bits)
}

/// Bounds on `-ln(1 - q)` for `0 < q_lo <= q_hi < 1`, each within about
/// `2^-bits` of the true value.
fn neg_log1m(q_lo: &Rational, q_hi: &Rational, bits: u32) -> (Rational, Rational) {
    let eps = dyadic(BigInt::one(), bits);
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    let (mut p_lo, mut p_hi) = (q_lo.clone(), q_hi.clone());
    let mut j = 1i64;
    loop {
        let jj = Rational::from_integer(j);
        lo += &round_down(&(&p_lo / &jj), bits);
        hi += &round_up(&(&p_hi / &jj), bits);
        p_lo = round_down(&(&p_lo * q_lo), bits);
        p_hi = round_up(&(&p_hi * q_hi), bits);
        j += 1;
        // Remaining terms sum to at most p / (j (1 - q)).
        let tail = &p_hi / &(&Rational::from_integer(j) * &(&Rational::one() - q_hi));
        if tail < eps {
            hi += &round_up(&tail, bits);
            return (lo, hi);
        }
    }
}

/// `α_k^(2k+1) = (2k+1)^(2k+1) / (2 (2k)^(2k))`, exactly.
pub fn alpha_power(k: usize) -> Rational {
    let m = (2 * k + 1) as u32;
    let num = BigInt::from(2 * k + 1).pow(m);
    let den = BigInt::from(2) * BigInt::from(2 * k).pow(m - 1);
    Rational::from_bigint(num) / Rational::from_bigint(den)
}

/// Exact test of `α_k < c`.
pub fn alpha_below(k: usize, c: &Rational) -> bool {
    alpha_power(k) < c.pow((2 * k + 1) as u32)
}

/// Dyadic bounds `lo < α_k < hi` with `hi - lo = 2^-bits`.
pub fn alpha_bounds(k: usize, bits: u32) -> (Rational, Rational) {
    let target = alpha_power(k);
    let m = (2 * k + 1) as u32;
    let (mut lo, mut hi) = (Rational::one(), Rational::from_integer(2));
    for _ in 0..bits {
        let mid = &(&lo + &hi) / &Rational::from_integer(2);
        if mid.pow(m) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Repetition plan for `k` and an `n`-vertex input: enough independent
/// trials that a per-trial success probability of `α_k^-n` gives overall
/// failure probability below one half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialPlan {
    pub k: usize,
    pub n: usize,
    pub alpha_lo: Rational,
    pub alpha_hi: Rational,
    /// `⌈ln(1/2) / ln(1 - α_k^-n)⌉ + 1`, rounded up if the bounds leave the
    /// ceiling undecided.
    pub trials: u64,
    pub seed: u64,
}

impl TrialPlan {
    pub fn new(k: usize, n: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        let bits = 96 + n as u32;
        let (alpha_lo, alpha_hi) = alpha_bounds(k, 96);
        if n == 0 {
            return Ok(TrialPlan {
                k,
                n,
                alpha_lo,
                alpha_hi,
                trials: 1,
                seed,
            });
        }
        let q_lo = round_down(&alpha_hi.pow(n as u32).recip(), bits);
        let q_hi = round_up(&alpha_lo.pow(n as u32).recip(), bits);
        let (l_lo, l_hi) = neg_log1m(&q_lo, &q_hi, bits);
        let half = Rational::new(1, 2);
        let (ln2_lo, ln2_hi) = neg_log1m(&half, &half, 128);
        let ratio_hi = &ln2_hi / &l_lo;
        let trials = ratio_hi.ceil() + BigInt::one();
        let trials = trials
            .to_u64()
            .ok_or_else(|| invalid(format!("trial count {trials} does not fit in 64 bits")))?;
        debug_assert!((&ln2_lo / &l_hi).ceil() <= (&ln2_hi / &l_lo).ceil());
        Ok(TrialPlan {
            k,
            n,
            alpha_lo,
            alpha_hi,
            trials,
            seed,
        })
    }

    /// Lower bound on the per-trial success probability `α_k^-n`.
    pub fn success_lower_bound(&self) -> Rational {
        self.alpha_hi.pow(self.n as u32).recip()
    }
}

/// What one trial drew and answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    /// `lists[v - 1]` is the list of vertex `v`.
    pub lists: Vec<OddSet>,
    pub yes: bool,
}

/// Draws `S` with probability `(2k-1)/(2k+1)` and each of `A`, `B` with
/// probability `1/(2k+1)`, independently per vertex.
pub fn sample_lists(n: usize, k: usize, rng: &mut impl Rng) -> Vec<OddSet> {
    let m = 2 * k + 1;
    (0..n)
        .map(|_| match rng.random_range(0..m) {
            r if r + 2 < m => OddSet::S,
            r if r + 2 == m => OddSet::A,
            _ => OddSet::B,
        })
        .collect()
}

/// One run of the randomized algorithm: sample lists, encode list
/// homomorphism to `C_{2k+1}` as a `{0, inf}` instance, and answer YES iff
/// the SA(2,3) optimum is zero.
pub fn algorithm_b_trial(g: &Graph, k: usize, seed: u64, budgets: &Budgets) -> Result<(bool, Vec<OddSet>)> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let fam = OddCycleFamily::new(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = sample_lists(g.n(), k, &mut rng);
    let d = fam.len();
    let mut inst = VcspInstance::new(d, g.n());
    for (u, v) in g.edges() {
        let (lu, lv) = (lists[u - 1], lists[v - 1]);
        let f = CostFunction::from_fn(d, 2, |t| {
            let (a, b) = (t[0] + 1, t[1] + 1);
            if fam.contains(lu, a) && fam.contains(lv, b) && fam.adjacent(a, b) {
                ExtRational::zero()
            } else {
                ExtRational::Infinite
            }
        })?;
        inst.add_term(vec![u - 1, v - 1], f)?;
    }
    let sol = solve_sa(&inst, 2, 3, budgets)?;
    Ok((sol.optimum.is_zero(), lists))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycleReport {
    pub plan: TrialPlan,
    pub yes: bool,
    /// Every trial run, in order; the run stops at the first YES.
    pub transcript: Vec<TrialRecord>,
}

/// Decides whether `g` maps to `C_{2k+1}` by repeating
/// [`algorithm_b_trial`] with seeds derived from `seed`. YES answers are
/// always correct. `trials` overrides the planned count.
pub fn odd_cycle_solve(
    g: &Graph,
    k: usize,
    seed: u64,
    trials: Option<u64>,
    budgets: &Budgets,
) -> Result<OddCycleReport> {
    let mut plan = TrialPlan::new(k, g.n(), seed)?;
    if let Some(t) = trials {
        plan.trials = t;
    }
    let mut transcript = Vec::new();
    let mut yes = false;
    for index in 0..plan.trials {
        let s = trial_seed(seed, index);
        let (answer, lists) = algorithm_b_trial(g, k, s, budgets)?;
        transcript.push(TrialRecord {
            index,
            seed: s,
            lists,
            yes: answer,
        });
        if answer {
            yes = true;
            break;
        }
    }
    Ok(OddCycleReport { plan, yes, transcript })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle};

    #[test]
    fn alpha_values() {
        assert!(alpha_below(3, &Rational::new(1365, 1000)));
        assert!(!alpha_below(3, &Rational::new(1364, 1000)));
        let (lo, hi) = alpha_bounds(1, 40);
        assert!(lo < Rational::new(3, 2) && Rational::new(3, 2) <= hi);
    }

    #[test]
    fn trial_counts() {
        // α_1 = 3/2, so α^-1 = 2/3 and ln(1/2)/ln(1/3) = 0.63...
        assert_eq!(TrialPlan::new(1, 1, 0).unwrap().trials, 2);
        // (2/3)^2 = 4/9: ln 2 / -ln(5/9) = 1.179...
        assert_eq!(TrialPlan::new(1, 2, 0).unwrap().trials, 3);
        assert_eq!(TrialPlan::new(2, 0, 0).unwrap().trials, 1);
        // α_3^-12 ≈ 0.02380; ln 2 / -ln(1 - q) ≈ 28.77.
        assert_eq!(TrialPlan::new(3, 12, 0).unwrap().trials, 30);
    }

    #[test]
    fn sampler_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let lists = sample_lists(70_000, 3, &mut rng);
        let s = lists.iter().filter(|&&l| l == OddSet::S).count();
        let a = lists.iter().filter(|&&l| l == OddSet::A).count();
        // Expected 50000 and 10000.
        assert!((49_000..51_000).contains(&s), "{s}");
        assert!((9_500..10_500).contains(&a), "{a}");
    }

    #[test]
    fn edgeless_is_yes_and_k4_is_no() {
        let b = Budgets::default();
        for seed in 0..5 {
            assert!(algorithm_b_trial(&Graph::new(4), 2, seed, &b).unwrap().0);
            assert!(!algorithm_b_trial(&complete(4), 2, seed, &b).unwrap().0);
        }
        let rep = odd_cycle_solve(&cycle(5), 2, 1, None, &b).unwrap();
        let again = odd_cycle_solve(&cycle(5), 2, 1, None, &b).unwrap();
        assert_eq!(rep, again);
        assert!(rep.transcript.len() as u64 <= rep.plan.trials);
    }
}
