//! A reduced model with the same optimum as [`super::build_sa`].
//!
//! Blocks over the same set of size at most `k` are tied together by
//! marginalisation both ways, so they are merged and their costs summed.
//! A zero block over a set larger than `k` is redundant next to a term
//! block over the same set. Marginalisation down to every subset follows by
//! chaining through subsets one element smaller, and normalisation of every
//! block follows from normalisation of the singletons. Variables in
//! different components of the primal graph only meet in zero blocks,
//! which product distributions satisfy, so components are solved apart.
//!
//! Before any LP is built, entries forced to zero are removed by
//! propagation. When every remaining cost is nonnegative, an integral
//! assignment using only zero-cost entries certifies optimum zero.

use std::collections::HashMap;
use std::collections::VecDeque;

use super::{combinations, projection};
use crate::budget::Budgets;
use crate::error::{invalid, Result};
use crate::lp::{lp_solve_exact, LpStatus, RationalLp};
use crate::rational::{ExtRational, Rational};
use crate::vcsp::{increment, table_size, VcspInstance};

/// Search nodes spent looking for a zero-cost integral point before
/// falling back to the LP.
const CERTIFICATE_NODES: u64 = 100_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaStats {
    pub components: usize,
    /// Components settled by an integral zero-cost point.
    pub certificates: usize,
    pub lps: usize,
    pub lp_vars: usize,
    pub lp_rows: usize,
    pub pivots: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaSolution {
    /// `Infinite` when the relaxation is infeasible.
    pub optimum: ExtRational,
    /// `marginals[x][a] = λ_x(a)` at an optimal point; empty when infeasible.
    pub marginals: Vec<Vec<Rational>>,
    /// `alive[x][a]` is false when `λ_x(a) = 0` at every feasible point.
    /// Empty when infeasible.
    pub alive: Vec<Vec<bool>>,
    pub stats: SaStats,
}

impl SaSolution {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_finite()
    }
}

struct Block {
    vars: Vec<usize>,
    cost: Option<Vec<ExtRational>>,
    alive: Vec<bool>,
}

impl Block {
    fn cost(&self, e: usize) -> Option<&Rational> {
        match &self.cost {
            Some(c) => c[e].finite(),
            None => Some(zero()),
        }
    }
}

fn zero() -> &'static Rational {
    static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
    ZERO.get_or_init(Rational::zero)
}

struct Link {
    parent: usize,
    child: usize,
    proj: Vec<u32>,
    /// Parent entries grouped by child entry.
    inv_start: Vec<u32>,
    inv: Vec<u32>,
}

impl Link {
    fn new(parent: usize, child: usize, proj: Vec<u32>, child_size: usize) -> Self {
        let mut inv_start = vec![0u32; child_size + 1];
        for &s in &proj {
            inv_start[s as usize + 1] += 1;
        }
        for s in 0..child_size {
            inv_start[s + 1] += inv_start[s];
        }
        let mut fill = inv_start.clone();
        let mut inv = vec![0u32; proj.len()];
        for (t, &s) in proj.iter().enumerate() {
            inv[fill[s as usize] as usize] = t as u32;
            fill[s as usize] += 1;
        }
        Link {
            parent,
            child,
            proj,
            inv_start,
            inv,
        }
    }

    fn parents_of(&self, s: usize) -> &[u32] {
        &self.inv[self.inv_start[s] as usize..self.inv_start[s + 1] as usize]
    }
}

struct Model {
    d: usize,
    /// Global variable of each local variable.
    vars: Vec<usize>,
    blocks: Vec<Block>,
    links: Vec<Link>,
    /// Singleton block of each local variable.
    singleton: Vec<usize>,
}

struct ComponentResult {
    optimum: Option<Rational>,
    marginals: Vec<Vec<Rational>>,
    alive: Vec<Vec<bool>>,
}

/// Solves `SA(k, l)` for `inst` exactly.
pub fn solve_sa(inst: &VcspInstance, k: usize, l: usize, budgets: &Budgets) -> Result<SaSolution> {
    if k == 0 || k > l {
        return Err(invalid(format!("SA levels need 0 < k <= l, got k={k}, l={l}")));
    }
    let (d, n) = (inst.domain_size(), inst.num_vars());
    let mut stats = SaStats::default();
    let infeasible = |stats| SaSolution {
        optimum: ExtRational::Infinite,
        marginals: Vec::new(),
        alive: Vec::new(),
        stats,
    };
    if d == 0 {
        return Ok(if n == 0 {
            SaSolution {
                optimum: ExtRational::zero(),
                marginals: Vec::new(),
                alive: Vec::new(),
                stats,
            }
        } else {
            infeasible(stats)
        });
    }
    let mut marginals = vec![Vec::new(); n];
    let mut alive = vec![Vec::new(); n];
    let mut total = Rational::zero();
    for (vars, terms) in components(inst) {
        stats.components += 1;
        let model = Model::build(inst, vars.clone(), &terms, k, l)?;
        let res = model.solve(budgets, &mut stats)?;
        let Some(opt) = res.optimum else {
            return Ok(infeasible(stats));
        };
        total += &opt;
        for (i, &x) in vars.iter().enumerate() {
            marginals[x] = res.marginals[i].clone();
            alive[x] = res.alive[i].clone();
        }
    }
    Ok(SaSolution {
        optimum: ExtRational::Finite(total),
        marginals,
        alive,
        stats,
    })
}

/// Components of the primal graph with the terms inside each.
fn components(inst: &VcspInstance) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = inst.num_vars();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for t in inst.terms() {
        for w in t.scope.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut index = HashMap::new();
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        let c = *index.entry(r).or_insert_with(|| {
            out.push((Vec::new(), Vec::new()));
            out.len() - 1
        });
        out[c].0.push(x);
    }
    for (i, t) in inst.terms().iter().enumerate() {
        let c = index[&find(&mut parent, t.scope[0])];
        out[c].1.push(i);
    }
    out
}

impl Model {
    fn build(inst: &VcspInstance, vars: Vec<usize>, terms: &[usize], k: usize, l: usize) -> Result<Self> {
        let d = inst.domain_size();
        let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let c = vars.len();
        let all: Vec<usize> = (0..c).collect();
        let mut blocks: Vec<Block> = Vec::new();
        let mut by_set: HashMap<Vec<usize>, usize> = HashMap::new();
        let new_block = |blocks: &mut Vec<Block>, set: Vec<usize>| -> Result<usize> {
            let size = table_size(d, set.len())?;
            blocks.push(Block {
                vars: set,
                cost: None,
                alive: vec![true; size],
            });
            Ok(blocks.len() - 1)
        };
        for r in 1..=k.min(c) {
            for set in combinations(&all, r) {
                let b = new_block(&mut blocks, set.clone())?;
                by_set.insert(set, b);
            }
        }
        let mut big_terms: HashMap<Vec<usize>, ()> = HashMap::new();
        for &i in terms {
            let term = &inst.terms()[i];
            let mut set: Vec<usize> = term.scope.iter().map(|x| local[x]).collect();
            set.sort_unstable();
            set.dedup();
            let b = match by_set.get(&set) {
                Some(&b) => b,
                None => {
                    big_terms.insert(set.clone(), ());
                    new_block(&mut blocks, set.clone())?
                }
            };
            let block = &mut blocks[b];
            let size = block.alive.len();
            let costs = block.cost.get_or_insert_with(|| vec![ExtRational::zero(); size]);
            let pos: Vec<usize> = term
                .scope
                .iter()
                .map(|x| set.binary_search(&local[x]).unwrap())
                .collect();
            let mut t = vec![0; set.len()];
            let mut image = vec![0; pos.len()];
            for entry in costs.iter_mut() {
                for (v, &p) in image.iter_mut().zip(&pos) {
                    *v = t[p];
                }
                *entry += term.function.get(&image);
                increment(&mut t, d);
            }
        }
        for r in k + 1..=l.min(c) {
            for set in combinations(&all, r) {
                if !big_terms.contains_key(&set) {
                    new_block(&mut blocks, set)?;
                }
            }
        }
        let mut links = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let r = block.vars.len();
            if r < 2 {
                continue;
            }
            let sub = if r <= k { r - 1 } else { k };
            for child_set in combinations(&block.vars, sub) {
                let child = by_set[&child_set];
                let proj = projection(&block.vars, &child_set, d);
                links.push(Link::new(b, child, proj, blocks[child].alive.len()));
            }
        }
        for block in &mut blocks {
            if let Some(costs) = &block.cost {
                for (a, v) in block.alive.iter_mut().zip(costs) {
                    *a = v.is_finite();
                }
            }
        }
        let singleton = (0..c).map(|x| by_set[&vec![x]]).collect();
        Ok(Model {
            d,
            vars,
            blocks,
            links,
            singleton,
        })
    }

    /// Removes entries that vanish at every feasible point. Returns false
    /// when some block loses all its entries.
    fn propagate(&mut self) -> bool {
        let mut as_parent = vec![Vec::new(); self.blocks.len()];
        let mut as_child = vec![Vec::new(); self.blocks.len()];
        for (i, link) in self.links.iter().enumerate() {
            as_parent[link.parent].push(i);
            as_child[link.child].push(i);
        }
        // Every entry counts until it is dequeued as dead.
        let mut support: Vec<Vec<u32>> = self
            .links
            .iter()
            .map(|link| {
                let mut s = vec![0u32; self.blocks[link.child].alive.len()];
                for &c in &link.proj {
                    s[c as usize] += 1;
                }
                s
            })
            .collect();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for (block, b) in self.blocks.iter().enumerate() {
            for (e, a) in b.alive.iter().enumerate() {
                if !a {
                    queue.push_back((block, e));
                }
            }
        }
        while let Some((b, e)) = queue.pop_front() {
            for &i in &as_parent[b] {
                let link = &self.links[i];
                let s = link.proj[e] as usize;
                support[i][s] -= 1;
                if support[i][s] == 0 && self.blocks[link.child].alive[s] {
                    self.blocks[link.child].alive[s] = false;
                    queue.push_back((link.child, s));
                }
            }
            for &i in &as_child[b] {
                let link = &self.links[i];
                for &t in link.parents_of(e) {
                    let a = &mut self.blocks[link.parent].alive[t as usize];
                    if *a {
                        *a = false;
                        queue.push_back((link.parent, t as usize));
                    }
                }
            }
        }
        self.blocks.iter().all(|b| b.alive.iter().any(|&a| a))
    }

    fn alive_singletons(&self) -> Vec<Vec<bool>> {
        self.singleton.iter().map(|&b| self.blocks[b].alive.clone()).collect()
    }

    fn solve(mut self, budgets: &Budgets, stats: &mut SaStats) -> Result<ComponentResult> {
        if !self.propagate() {
            return Ok(ComponentResult {
                optimum: None,
                marginals: Vec::new(),
                alive: Vec::new(),
            });
        }
        let alive = self.alive_singletons();
        let nonnegative = self.blocks.iter().all(|b| {
            (0..b.alive.len()).all(|e| !b.alive[e] || b.cost(e).is_none_or(|c| !c.is_negative()))
        });
        if nonnegative {
            if let Some(x) = self.zero_point() {
                stats.certificates += 1;
                let marginals = x
                    .iter()
                    .map(|&a| {
                        (0..self.d)
                            .map(|v| if v == a { Rational::one() } else { Rational::zero() })
                            .collect()
                    })
                    .collect();
                return Ok(ComponentResult {
                    optimum: Some(Rational::zero()),
                    marginals,
                    alive,
                });
            }
        }
        let mut lp = RationalLp::new();
        let mut col: Vec<Vec<u32>> = Vec::with_capacity(self.blocks.len());
        for (b, block) in self.blocks.iter().enumerate() {
            let mut ids = vec![u32::MAX; block.alive.len()];
            for (e, id) in ids.iter_mut().enumerate() {
                if block.alive[e] {
                    let c = block.cost(e).expect("alive entries are finite").clone();
                    *id = lp.add_var(format!("b{b}e{e}"), c) as u32;
                }
            }
            col.push(ids);
        }
        for &b in &self.singleton {
            let row = col[b]
                .iter()
                .filter(|&&j| j != u32::MAX)
                .map(|&j| (j as usize, Rational::one()))
                .collect();
            lp.add_row(row, Rational::one())?;
        }
        for link in &self.links {
            for s in 0..self.blocks[link.child].alive.len() {
                let cj = col[link.child][s];
                if cj == u32::MAX {
                    continue;
                }
                let mut row: Vec<(usize, Rational)> = link
                    .parents_of(s)
                    .iter()
                    .map(|&t| col[link.parent][t as usize])
                    .filter(|&j| j != u32::MAX)
                    .map(|j| (j as usize, Rational::one()))
                    .collect();
                row.push((cj as usize, -Rational::one()));
                lp.add_row(row, Rational::zero())?;
            }
        }
        stats.lps += 1;
        stats.lp_vars += lp.num_vars();
        stats.lp_rows += lp.num_rows();
        let res = lp_solve_exact(&lp, budgets.pivots)?;
        stats.pivots += res.pivots;
        match res.status {
            LpStatus::Infeasible => Ok(ComponentResult {
                optimum: None,
                marginals: Vec::new(),
                alive: Vec::new(),
            }),
            LpStatus::Unbounded => unreachable!("every λ lies in [0, 1]"),
            LpStatus::Optimal => {
                let marginals = self
                    .singleton
                    .iter()
                    .map(|&b| {
                        col[b]
                            .iter()
                            .map(|&j| {
                                if j == u32::MAX {
                                    Rational::zero()
                                } else {
                                    res.solution[j as usize].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                Ok(ComponentResult {
                    optimum: res.optimum,
                    marginals,
                    alive,
                })
            }
        }
    }

    /// An assignment hitting an alive zero-cost entry in every block.
    fn zero_point(&self) -> Option<Vec<usize>> {
        let c = self.vars.len();
        let mut at_depth = vec![Vec::new(); c];
        for (b, block) in self.blocks.iter().enumerate() {
            at_depth[*block.vars.last().expect("nonempty")].push(b);
        }
        let ok = |b: usize, x: &[usize]| {
            let block = &self.blocks[b];
            let e = block.vars.iter().fold(0, |acc, &v| acc * self.d + x[v]);
            block.alive[e] && block.cost(e).is_some_and(Rational::is_zero)
        };
        let mut x = vec![0usize; c];
        let mut depth = 0;
        let mut nodes = 0u64;
        loop {
            if x[depth] == self.d {
                if depth == 0 {
                    return None;
                }
                x[depth] = 0;
                depth -= 1;
                x[depth] += 1;
                continue;
            }
            nodes += 1;
            if nodes > CERTIFICATE_NODES {
                return None;
            }
            if at_depth[depth].iter().all(|&b| ok(b, &x)) {
                if depth + 1 == c {
                    return Some(x);
                }
                depth += 1;
                x[depth] = 0;
            } else {
                x[depth] += 1;
            }
        }
    }
}
