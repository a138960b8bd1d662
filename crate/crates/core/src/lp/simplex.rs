use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{LpResult, LpStatus, RationalLp, Row};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Consecutive degenerate pivots after which pricing switches to Bland's
/// rule for the rest of the solve.
const DEGENERATE_SWITCH: u32 = 30;

/// Solves `lp` exactly: presolve, then a two-phase primal simplex over
/// sparse rows. Deterministic. Fails with [`Error::Budget`] after
/// `pivot_budget` pivots.
pub fn lp_solve_exact(lp: &RationalLp, pivot_budget: u64) -> Result<LpResult> {
    let n = lp.num_vars();
    let infeasible = |pivots| LpResult {
        status: LpStatus::Infeasible,
        optimum: None,
        solution: Vec::new(),
        pivots,
    };
    let Some((mut values, rows)) = presolve(lp) else {
        return Ok(infeasible(0));
    };
    // Renumber the variables that survive presolve and occur in a row.
    let mut col_of = vec![u32::MAX; n];
    let mut var_of = Vec::new();
    for row in &rows {
        for (j, _) in &row.coeffs {
            if col_of[*j] == u32::MAX {
                col_of[*j] = var_of.len() as u32;
                var_of.push(*j);
            }
        }
    }
    for j in 0..n {
        if values[j].is_none() && col_of[j] == u32::MAX {
            if lp.objective()[j].is_negative() {
                return Ok(LpResult {
                    status: LpStatus::Unbounded,
                    optimum: None,
                    solution: Vec::new(),
                    pivots: 0,
                });
            }
            values[j] = Some(Rational::zero());
        }
    }
    let cost: Vec<Rational> = var_of.iter().map(|&j| lp.objective()[j].clone()).collect();
    let sparse: Vec<Vec<(u32, Rational)>> = rows
        .iter()
        .map(|r| {
            let mut v: Vec<(u32, Rational)> = r.coeffs.iter().map(|(j, a)| (col_of[*j], a.clone())).collect();
            v.sort_by_key(|(c, _)| *c);
            v
        })
        .collect();
    let rhs = rows.into_iter().map(|r| r.rhs).collect();
    let mut t = Tableau::new(sparse, rhs, var_of.len(), pivot_budget);
    let outcome = t.solve(&cost)?;
    let pivots = t.pivots;
    match outcome {
        LpStatus::Infeasible => return Ok(infeasible(pivots)),
        LpStatus::Unbounded => {
            return Ok(LpResult {
                status: LpStatus::Unbounded,
                optimum: None,
                solution: Vec::new(),
                pivots,
            })
        }
        LpStatus::Optimal => {}
    }
    for &j in &var_of {
        values[j] = Some(Rational::zero());
    }
    for (i, b) in t.basis.iter().enumerate() {
        if let Basic::Var(c) = b {
            values[var_of[*c]] = Some(t.rhs[i].clone());
        }
    }
    let solution: Vec<Rational> = values.into_iter().map(|v| v.unwrap_or_default()).collect();
    debug_assert!(lp.check_feasible(&solution));
    Ok(LpResult {
        status: LpStatus::Optimal,
        optimum: Some(lp.objective_value(&solution)),
        solution,
        pivots,
    })
}

/// Fixes variables forced by pinned zeros, sign patterns and singleton rows.
/// Returns the fixed values and the residual rows over unfixed variables,
/// or `None` when some row cannot be satisfied.
fn presolve(lp: &RationalLp) -> Option<(Vec<Option<Rational>>, Vec<Row>)> {
    let n = lp.num_vars();
    let rows = lp.rows();
    let mut value: Vec<Option<Rational>> = (0..n)
        .map(|j| lp.is_fixed_zero(j).then(Rational::zero))
        .collect();
    let mut col_rows = vec![Vec::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in &r.coeffs {
            col_rows[*j].push(i);
        }
    }
    let mut done = vec![false; rows.len()];
    let mut queued = vec![true; rows.len()];
    let mut queue: VecDeque<usize> = (0..rows.len()).collect();
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        if done[i] {
            continue;
        }
        let mut rhs = rows[i].rhs.clone();
        let mut live = Vec::new();
        for (j, a) in &rows[i].coeffs {
            match &value[*j] {
                Some(v) => {
                    if !v.is_zero() {
                        rhs = rhs.sub_mul(a, v);
                    }
                }
                None => live.push((*j, a)),
            }
        }
        let positive = live.iter().all(|(_, a)| a.is_positive());
        let negative = live.iter().all(|(_, a)| a.is_negative());
        let mut fix = |j: usize, v: Rational, value: &mut Vec<Option<Rational>>| {
            value[j] = Some(v);
            for &k in &col_rows[j] {
                if !done[k] && !queued[k] {
                    queued[k] = true;
                    queue.push_back(k);
                }
            }
        };
        if live.is_empty() {
            if !rhs.is_zero() {
                return None;
            }
        } else if positive || negative {
            if (positive && rhs.is_negative()) || (negative && rhs.is_positive()) {
                return None;
            }
            if rhs.is_zero() {
                for (j, _) in live {
                    fix(j, Rational::zero(), &mut value);
                }
            } else if live.len() == 1 {
                let (j, a) = live[0];
                fix(j, &rhs / a, &mut value);
            } else {
                continue;
            }
        } else if live.len() == 1 {
            unreachable!("a single coefficient has a sign");
        } else {
            continue;
        }
        done[i] = true;
    }
    let mut residual = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if done[i] {
            continue;
        }
        let mut rhs = r.rhs.clone();
        let mut coeffs = Vec::new();
        for (j, a) in &r.coeffs {
            match &value[*j] {
                Some(v) => rhs = rhs.sub_mul(a, v),
                None => coeffs.push((*j, a.clone())),
            }
        }
        residual.push(Row { coeffs, rhs });
    }
    Some((value, residual))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Basic {
    /// The artificial variable of the original row with this index.
    Art(usize),
    Var(usize),
}

struct Tableau {
    rows: Vec<Vec<(u32, Rational)>>,
    rhs: Vec<Rational>,
    basis: Vec<Basic>,
    is_basic: Vec<bool>,
    /// Reduced costs of the structural columns.
    d: Vec<Rational>,
    /// Current objective value.
    f: Rational,
    m0: usize,
    pivots: u64,
    budget: u64,
    bland: bool,
    degenerate_run: u32,
}

impl Tableau {
    fn new(mut rows: Vec<Vec<(u32, Rational)>>, mut rhs: Vec<Rational>, n: usize, budget: u64) -> Self {
        for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
            if b.is_negative() {
                *b = -&*b;
                for (_, a) in row.iter_mut() {
                    *a = -&*a;
                }
            }
        }
        let m = rows.len();
        Tableau {
            rows,
            rhs,
            basis: (0..m).map(Basic::Art).collect(),
            is_basic: vec![false; n],
            d: vec![Rational::zero(); n],
            f: Rational::zero(),
            m0: m,
            pivots: 0,
            budget,
            bland: false,
            degenerate_run: 0,
        }
    }

    /// Bland order of basic variables: artificials first.
    fn key(&self, b: Basic) -> usize {
        match b {
            Basic::Art(i) => i,
            Basic::Var(j) => self.m0 + j,
        }
    }

    fn coef(row: &[(u32, Rational)], c: u32) -> Option<&Rational> {
        row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
    }

    fn solve(&mut self, cost: &[Rational]) -> Result<LpStatus> {
        // Phase one minimises the sum of artificials.
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            for (j, a) in row {
                self.d[*j as usize] -= a;
            }
            self.f += b;
        }
        if self.run()? == LpStatus::Unbounded {
            unreachable!("phase one is bounded below by zero");
        }
        if self.f.is_positive() {
            return Ok(LpStatus::Infeasible);
        }
        let mut i = 0;
        while i < self.rows.len() {
            if let Basic::Art(_) = self.basis[i] {
                match self.rows[i].first() {
                    Some(&(c, _)) => self.pivot(i, c as usize)?,
                    None => {
                        self.rows.swap_remove(i);
                        self.rhs.swap_remove(i);
                        self.basis.swap_remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        self.d = cost.to_vec();
        self.f = Rational::zero();
        for i in 0..self.rows.len() {
            let Basic::Var(j) = self.basis[i] else { unreachable!() };
            let c = &cost[j];
            if c.is_zero() {
                continue;
            }
            for (k, a) in &self.rows[i] {
                self.d[*k as usize] = self.d[*k as usize].sub_mul(c, a);
            }
            self.f = self.f.sub_mul(&-c, &self.rhs[i]);
        }
        self.run()
    }

    /// Pivots until no reduced cost is negative.
    fn run(&mut self) -> Result<LpStatus> {
        loop {
            let entering = if self.bland {
                self.d.iter().position(|x| x.is_negative())
            } else {
                let mut best: Option<usize> = None;
                for (j, x) in self.d.iter().enumerate() {
                    if x.is_negative() && best.is_none_or(|b| *x < self.d[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(e) = entering else {
                return Ok(LpStatus::Optimal);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let Some(a) = Self::coef(row, e as u32) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => match ratio.cmp(best) {
                        Ordering::Less => true,
                        Ordering::Equal => self.key(self.basis[i]) < self.key(self.basis[*l]),
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return Ok(LpStatus::Unbounded);
            };
            if ratio.is_zero() {
                self.degenerate_run += 1;
                if self.degenerate_run >= DEGENERATE_SWITCH {
                    self.bland = true;
                }
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, e)?;
        }
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<()> {
        if self.pivots >= self.budget {
            return Err(Error::Budget {
                what: "simplex pivots",
                limit: self.budget,
            });
        }
        self.pivots += 1;
        let ec = e as u32;
        let a = Self::coef(&self.rows[r], ec).expect("pivot entry").clone();
        if !a.is_one() {
            let inv = a.recip();
            for (_, x) in self.rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let Some(c) = Self::coef(&self.rows[i], ec).cloned() else { continue };
            self.rows[i] = combine(&self.rows[i], &c, &pivot_row);
            self.rhs[i] = self.rhs[i].sub_mul(&c, &pivot_rhs);
        }
        let c = self.d[e].clone();
        if !c.is_zero() {
            for (j, x) in &pivot_row {
                self.d[*j as usize] = self.d[*j as usize].sub_mul(&c, x);
            }
            self.f = self.f.sub_mul(&-&c, &pivot_rhs);
        }
        self.rows[r] = pivot_row;
        if let Basic::Var(old) = self.basis[r] {
            self.is_basic[old] = false;
        }
        self.basis[r] = Basic::Var(e);
        self.is_basic[e] = true;
        Ok(())
    }
}

/// `row - c * other`, dropping zeros.
fn combine(row: &[(u32, Rational)], c: &Rational, other: &[(u32, Rational)]) -> Vec<(u32, Rational)> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j == other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i == row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            out.push((other[j].0, -(c * &other[j].1)));
            j += 1;
        } else {
            let v = row[i].1.sub_mul(c, &other[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn solve(lp: &RationalLp) -> LpResult {
        lp_solve_exact(lp, 10_000).unwrap()
    }

    #[test]
    fn tiny_examples() {
        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(1));
        lp.add_row(vec![(x, r(1))], r(1)).unwrap();
        assert_eq!(solve(&lp).optimum, Some(r(1)));

        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(0));
        let y = lp.add_var("y", r(0));
        lp.add_row(vec![(x, r(1)), (y, r(1))], r(1)).unwrap();
        let res = solve(&lp);
        assert_eq!(res.optimum, Some(r(0)));
        assert!(lp.check_feasible(&res.solution));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(0));
        let y = lp.add_var("y", r(0));
        lp.add_row(vec![(x, r(1)), (y, r(1))], r(1)).unwrap();
        lp.add_row(vec![(x, r(1)), (y, r(1))], r(2)).unwrap();
        assert_eq!(solve(&lp).status, LpStatus::Infeasible);

        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(-1));
        let y = lp.add_var("y", r(0));
        lp.add_row(vec![(x, r(1)), (y, r(-1))], r(0)).unwrap();
        assert_eq!(solve(&lp).status, LpStatus::Unbounded);

        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(0));
        lp.fix_zero(x);
        lp.add_row(vec![(x, r(1))], r(1)).unwrap();
        assert_eq!(solve(&lp).status, LpStatus::Infeasible);
    }

    #[test]
    fn fractional_optimum() {
        // min -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6
        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(-1));
        let y = lp.add_var("y", r(-1));
        let s1 = lp.add_var("s1", r(0));
        let s2 = lp.add_var("s2", r(0));
        lp.add_row(vec![(x, r(1)), (y, r(2)), (s1, r(1))], r(4)).unwrap();
        lp.add_row(vec![(x, r(3)), (y, r(1)), (s2, r(1))], r(6)).unwrap();
        let res = solve(&lp);
        assert_eq!(res.optimum, Some(Rational::new(-14, 5)));
        assert_eq!(res.solution[x], Rational::new(8, 5));
        assert_eq!(res.solution[y], Rational::new(6, 5));
    }

    #[test]
    fn redundant_rows_and_budget() {
        let mut lp = RationalLp::new();
        let v: Vec<usize> = (0..4).map(|j| lp.add_var(format!("x{j}"), r(j as i64 - 1))).collect();
        lp.add_row(vec![(v[0], r(1)), (v[1], r(1)), (v[2], r(-1))], r(2)).unwrap();
        lp.add_row(vec![(v[0], r(2)), (v[1], r(2)), (v[2], r(-2))], r(4)).unwrap();
        lp.add_row(vec![(v[2], r(1)), (v[3], r(-1))], r(1)).unwrap();
        let res = solve(&lp);
        assert_eq!(res.status, LpStatus::Optimal);
        assert!(lp.check_feasible(&res.solution));
        assert_eq!(res.optimum, Some(r(-2)));
        assert!(matches!(lp_solve_exact(&lp, 0), Err(Error::Budget { .. })));
    }
}
