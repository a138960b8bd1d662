//! Valued constraint satisfaction.
//!
//! In memory, variables are `0..n` and domain values `0..d`; the text
//! formats use 1-based numbering for both.

pub mod io;
mod language;
mod valhom;

use crate::error::{invalid, Error, Result};
use crate::rational::ExtRational;

pub use language::{
    crisp_language_of_coloring, odd_cycle_language, CrispLanguage, OddCycleFamily, OddSet,
};
pub use valhom::{strip_isolated, valhom_to_vcsp, ValHomInstance};

/// A dense table `D^r -> Q ∪ {inf}`. Tuples are indexed lexicographically
/// with the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFunction {
    d: usize,
    arity: usize,
    table: Vec<ExtRational>,
}

impl CostFunction {
    pub fn new(d: usize, arity: usize, table: Vec<ExtRational>) -> Result<Self> {
        if arity == 0 {
            return Err(invalid("cost functions need arity at least 1"));
        }
        let size = table_size(d, arity)?;
        if table.len() != size {
            return Err(invalid(format!(
                "table has {} entries, expected {d}^{arity} = {size}",
                table.len()
            )));
        }
        Ok(CostFunction { d, arity, table })
    }

    pub fn constant(d: usize, arity: usize, value: ExtRational) -> Result<Self> {
        let size = table_size(d, arity)?;
        Self::new(d, arity, vec![value; size])
    }

    pub fn from_fn(d: usize, arity: usize, mut f: impl FnMut(&[usize]) -> ExtRational) -> Result<Self> {
        let size = table_size(d, arity)?;
        let mut table = Vec::with_capacity(size);
        let mut t = vec![0; arity];
        for _ in 0..size {
            table.push(f(&t));
            increment(&mut t, d);
        }
        Self::new(d, arity, table)
    }

    /// `phi_a`: zero at `a`, infinite elsewhere.
    pub fn pin(d: usize, a: usize) -> Self {
        Self::from_fn(d, 1, |t| {
            if t[0] == a {
                ExtRational::zero()
            } else {
                ExtRational::Infinite
            }
        })
        .expect("unary table")
    }

    pub fn domain_size(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[ExtRational] {
        &self.table
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.d + x)
    }

    pub fn get(&self, t: &[usize]) -> &ExtRational {
        &self.table[self.index(t)]
    }

    /// Tuples of finite cost.
    pub fn feasible(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut t = vec![0; self.arity];
        for v in &self.table {
            if v.is_finite() {
                out.push(t.clone());
            }
            increment(&mut t, self.d);
        }
        out
    }
}

pub(crate) fn table_size(d: usize, arity: usize) -> Result<usize> {
    u32::try_from(arity)
        .ok()
        .and_then(|a| d.checked_pow(a))
        .filter(|&s| s <= 1 << 28)
        .ok_or_else(|| invalid(format!("table {d}^{arity} too large")))
}

/// Advances `t` as a base-`d` counter, most significant digit first.
pub(crate) fn increment(t: &mut [usize], d: usize) {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < d {
            return;
        }
        *x = 0;
    }
}

/// A cost function applied to a tuple of variables. Variables may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub scope: Vec<usize>,
    pub function: CostFunction,
}

impl Term {
    /// Distinct variables of the scope, sorted.
    pub fn scope_set(&self) -> Vec<usize> {
        let mut s = self.scope.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspInstance {
    d: usize,
    n: usize,
    terms: Vec<Term>,
}

impl VcspInstance {
    pub fn new(d: usize, n: usize) -> Self {
        VcspInstance {
            d,
            n,
            terms: Vec::new(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.d
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn add_term(&mut self, scope: Vec<usize>, function: CostFunction) -> Result<()> {
        if function.domain_size() != self.d {
            return Err(invalid("term domain differs from instance domain"));
        }
        if scope.len() != function.arity() {
            return Err(invalid(format!(
                "scope of length {} for a function of arity {}",
                scope.len(),
                function.arity()
            )));
        }
        if let Some(&x) = scope.iter().find(|&&x| x >= self.n) {
            return Err(invalid(format!("variable {} out of range", x + 1)));
        }
        self.terms.push(Term { scope, function });
        Ok(())
    }

    /// Adds the pinning term `phi_a(x)`.
    pub fn pin(&mut self, x: usize, a: usize) -> Result<()> {
        self.add_term(vec![x], CostFunction::pin(self.d, a))
    }

    /// `Φ(α)`; `assignment[x]` is the value of variable `x`.
    pub fn cost(&self, assignment: &[usize]) -> ExtRational {
        let mut total = ExtRational::zero();
        let mut buf = Vec::new();
        for term in &self.terms {
            buf.clear();
            buf.extend(term.scope.iter().map(|&x| assignment[x]));
            total += term.function.get(&buf);
            if total.is_infinite() {
                break;
            }
        }
        total
    }
}

/// Exact optimum by exhaustive search, returning the lexicographically first
/// optimal assignment (all zeros with value inf if nothing is feasible).
/// Refuses when `d^n` exceeds `budget`.
pub fn brute_force_opt(inst: &VcspInstance, budget: u64) -> Result<(ExtRational, Vec<usize>)> {
    let (d, n) = (inst.d, inst.n);
    let space = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > budget as u128 {
        return Err(Error::Budget {
            what: "brute-force assignment",
            limit: budget,
        });
    }
    if n == 0 {
        return Ok((inst.cost(&[]), Vec::new()));
    }
    if d == 0 {
        return Ok((ExtRational::Infinite, vec![0; n]));
    }
    // Each term is charged at the depth of its last variable.
    let mut at_depth: Vec<Vec<&Term>> = vec![Vec::new(); n];
    let mut constant = ExtRational::zero();
    for term in &inst.terms {
        match term.scope.iter().max() {
            Some(&x) => at_depth[x].push(term),
            None => constant += &term.function.table[0],
        }
    }
    let mut best: Option<(ExtRational, Vec<usize>)> = None;
    let mut assignment = vec![0usize; n];
    let mut partial = vec![ExtRational::zero(); n + 1];
    partial[0] = constant;
    let mut depth = 0usize;
    let mut buf = Vec::new();
    // Iterative DFS: `assignment[depth]` is the value being tried.
    loop {
        if assignment[depth] == d {
            if depth == 0 {
                break;
            }
            assignment[depth] = 0;
            depth -= 1;
            assignment[depth] += 1;
            continue;
        }
        let mut value = partial[depth].clone();
        for term in &at_depth[depth] {
            if value.is_infinite() {
                break;
            }
            buf.clear();
            buf.extend(term.scope.iter().map(|&x| assignment[x]));
            value += term.function.get(&buf);
        }
        if value.is_infinite() {
            assignment[depth] += 1;
            continue;
        }
        if depth + 1 == n {
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, assignment.clone()));
            }
            assignment[depth] += 1;
        } else {
            partial[depth + 1] = value;
            depth += 1;
            assignment[depth] = 0;
        }
    }
    Ok(best.unwrap_or((ExtRational::Infinite, vec![0; n])))
}
