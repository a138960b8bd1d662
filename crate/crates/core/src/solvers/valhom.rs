use super::unif::{unif_solve, SaTotals, UnifOutcome};
use crate::budget::Budgets;
use crate::error::{invalid, Error, Result};
use crate::graph::{Coloring, Graph, Vertex};
use crate::rational::ExtRational;
use crate::vcsp::{strip_isolated, valhom_to_vcsp, ValHomInstance};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Colors of the coloring of `H` that settled the instance.
    pub colors: usize,
    /// Colorings of `H` tried, the settling one included.
    pub colorings_tried: u64,
    /// Subproblems handed to the self-reduction solver.
    pub subproblems: u64,
    /// Colorings of `G` skipped because some arc had no matching arc in `H`.
    pub pruned: u64,
    pub sa: SaTotals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub value: ExtRational,
    /// `witness[v - 1]` is the image of `v`; present iff `value` is finite.
    pub witness: Option<Vec<Vertex>>,
    pub stats: SolveStats,
}

/// Proper colorings of `hu` with exactly `k` colors, in restricted-growth
/// form: vertex 1 gets color 1 and each later vertex at most one more than
/// the largest color so far. `visit` returns `true` to stop.
fn for_each_coloring(
    hu: &Graph,
    k: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        hu: &Graph,
        k: usize,
        colors: &mut Vec<usize>,
        used: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        let v = colors.len() + 1;
        if v > hu.n() {
            return if used == k { visit(colors) } else { Ok(false) };
        }
        let remaining = hu.n() - colors.len();
        if used + remaining < k {
            return Ok(false);
        }
        for c in 1..=(used + 1).min(k) {
            if hu.neighbors(v).iter().any(|&u| u < v && colors[u - 1] == c) {
                continue;
            }
            colors.push(c);
            let stop = rec(hu, k, colors, used.max(c), visit)?;
            colors.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(hu, k, &mut Vec::with_capacity(hu.n()), 0, visit)
}

/// Solves every subproblem for one coloring of `H`. Returns `None` as soon
/// as one of them reports that no triple exists.
fn settle(
    inst: &ValHomInstance,
    gamma_h: &Coloring,
    budgets: &Budgets,
    stats: &mut SolveStats,
) -> Result<Option<(ExtRational, Option<Vec<Vertex>>)>> {
    let n = inst.g().n();
    let k = gamma_h.k();
    let mut allowed = vec![false; k * k];
    for &(a, b) in inst.h_arcs() {
        allowed[(gamma_h.color(a) - 1) * k + gamma_h.color(b) - 1] = true;
    }
    // Arcs of G checked when their later endpoint is colored.
    let mut back: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n + 1];
    for &(u, v) in inst.g_arcs() {
        back[u.max(v)].push((u, v));
    }
    let mut best: (ExtRational, Option<Vec<Vertex>>) = (ExtRational::Infinite, None);
    let mut gamma_g = vec![0usize; n];
    if n == 0 {
        return Ok(Some((inst.cost(&[]), Some(Vec::new()))));
    }
    let mut depth = 0usize;
    loop {
        gamma_g[depth] += 1;
        if gamma_g[depth] > k {
            gamma_g[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        let v = depth + 1;
        let ok = back[v]
            .iter()
            .all(|&(a, b)| allowed[(gamma_g[a - 1] - 1) * k + gamma_g[b - 1] - 1]);
        if !ok {
            stats.pruned += 1;
            continue;
        }
        if depth + 1 < n {
            depth += 1;
            continue;
        }
        stats.subproblems += 1;
        if stats.subproblems > budgets.subproblems {
            return Err(Error::Budget {
                what: "valhom subproblems",
                limit: budgets.subproblems,
            });
        }
        let vcsp = valhom_to_vcsp(inst, &gamma_g, gamma_h)?;
        let rep = unif_solve(&vcsp, budgets)?;
        stats.sa.merge(&rep.stats);
        match rep.outcome {
            UnifOutcome::NoTriple => return Ok(None),
            UnifOutcome::Assignment { assignment, cost } => {
                if cost.is_finite() && (best.1.is_none() || cost < best.0) {
                    best = (cost, Some(assignment.iter().map(|&a| a + 1).collect()));
                }
            }
        }
    }
    Ok(Some(best))
}

/// Minimum-cost homomorphism by enumerating colorings of `H` with
/// `k = 1, 2, ...` colors and, for each, all compatible colorings of `G`,
/// solving each pairing with [`unif_solve`]. Stops at the first coloring of
/// `H` for which every pairing is solved. With `hint`, only that coloring of
/// `H` is used.
///
/// Isolated vertices of `G` are mapped to vertex 1 of `H`.
pub fn valhom_solve(inst: &ValHomInstance, hint: Option<&Coloring>, budgets: &Budgets) -> Result<SolveReport> {
    let mut stats = SolveStats::default();
    let (g, h) = (inst.g(), inst.h());
    if g.n() == 0 {
        return Ok(SolveReport {
            value: ExtRational::zero(),
            witness: Some(Vec::new()),
            stats,
        });
    }
    if h.n() == 0 {
        return Ok(SolveReport {
            value: ExtRational::Infinite,
            witness: None,
            stats,
        });
    }
    let (core, kept) = strip_isolated(inst);
    let hu = h.underlying();
    let expand = |local: Vec<Vertex>| {
        let mut full = vec![1; g.n()];
        for (i, &v) in kept.iter().enumerate() {
            full[v - 1] = local[i];
        }
        full
    };
    let finish = |(value, local): (ExtRational, Option<Vec<Vertex>>), stats: SolveStats| SolveReport {
        witness: local.filter(|_| value.is_finite()).map(expand),
        value,
        stats,
    };

    if let Some(gamma_h) = hint {
        gamma_h.check_size(&hu)?;
        if !gamma_h.is_proper(&hu) {
            return Err(invalid("hint coloring is not proper on H"));
        }
        stats.colors = gamma_h.k();
        stats.colorings_tried = 1;
        return match settle(&core, gamma_h, budgets, &mut stats)? {
            Some(best) => Ok(finish(best, stats)),
            None => Err(invalid("the hint coloring has no persistent majority triple")),
        };
    }

    for k in 1..=h.n() {
        let mut outcome = None;
        for_each_coloring(&hu, k, &mut |colors| {
            stats.colorings_tried += 1;
            let gamma_h = Coloring::new(colors.to_vec())?;
            match settle(&core, &gamma_h, budgets, &mut stats)? {
                Some(best) => {
                    stats.colors = k;
                    outcome = Some(best);
                    Ok(true)
                }
                None => Ok(false),
            }
        })?;
        if let Some(best) = outcome {
            return Ok(finish(best, stats));
        }
    }
    Err(invalid("no coloring of H settled the instance, including the identity"))
}
