//! Exact rational linear programs in equality form:
//! minimise `c·x` subject to `A x = b`, `x >= 0`, some `x_j` pinned to zero.
//!
//! Dump format, one item per line:
//!
//! ```text
//! lp N M               variable and equality counts
//! v J NAME             name of variable J (1-based)
//! z J                  x_J = 0
//! min J COEF           objective coefficient of x_J (zero when absent)
//! eq RHS J:COEF ...    one equality row
//! ```

mod simplex;

use std::fmt::Write;

use crate::error::{invalid, ParseError, Result};
use crate::rational::Rational;
use crate::text::lines;

pub use simplex::lp_solve_exact;

/// One equality `Σ coeffs = rhs`, coefficients sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalLp {
    names: Vec<String>,
    objective: Vec<Rational>,
    fixed_zero: Vec<bool>,
    rows: Vec<Row>,
}

impl RationalLp {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with objective coefficient `cost`.
    pub fn add_var(&mut self, name: impl Into<String>, cost: Rational) -> usize {
        self.names.push(name.into());
        self.objective.push(cost);
        self.fixed_zero.push(false);
        self.names.len() - 1
    }

    pub fn fix_zero(&mut self, j: usize) {
        self.fixed_zero[j] = true;
    }

    /// Adds `Σ coeffs = rhs`. Repeated variables are merged and zero
    /// coefficients dropped.
    pub fn add_row(&mut self, mut coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Result<()> {
        if let Some(&(j, _)) = coeffs.iter().find(|(j, _)| *j >= self.num_vars()) {
            return Err(invalid(format!("row uses unknown variable {j}")));
        }
        coeffs.sort_by_key(|(j, _)| *j);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(coeffs.len());
        for (j, a) in coeffs {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += &a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.rows.push(Row { coeffs: merged, rhs });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn is_fixed_zero(&self, j: usize) -> bool {
        self.fixed_zero[j]
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Whether `x` satisfies every constraint exactly.
    pub fn check_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && x.iter().zip(&self.fixed_zero).all(|(v, &z)| !z || v.is_zero())
            && self.rows.iter().all(|r| {
                let lhs: Rational = r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                lhs == r.rhs
            })
    }

    pub fn dump(&self) -> String {
        let mut s = format!("lp {} {}\n", self.num_vars(), self.num_rows());
        for (j, name) in self.names.iter().enumerate() {
            writeln!(s, "v {} {name}", j + 1).unwrap();
        }
        for (j, _) in self.fixed_zero.iter().enumerate().filter(|(_, &z)| z) {
            writeln!(s, "z {}", j + 1).unwrap();
        }
        for (j, c) in self.objective.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            writeln!(s, "min {} {c}", j + 1).unwrap();
        }
        for row in &self.rows {
            write!(s, "eq {}", row.rhs).unwrap();
            for (j, a) in &row.coeffs {
                write!(s, " {}:{a}", j + 1).unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut it = lines(text);
        let head = it
            .next()
            .ok_or_else(|| ParseError::Structure("empty LP file".into()))?;
        if head.keyword() != "lp" {
            return Err(head.err("expected `lp N M`").into());
        }
        head.expect_len(3)?;
        let (n, m): (usize, usize) = (head.get(1)?, head.get(2)?);
        let mut lp = RationalLp::new();
        for j in 0..n {
            lp.add_var(format!("x{}", j + 1), Rational::zero());
        }
        let var = |line: &crate::text::Line<'_>, s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(j) if (1..=n).contains(&j) => Ok(j - 1),
                _ => Err(line.err(format!("bad variable `{s}`")).into()),
            }
        };
        for line in it {
            match line.keyword() {
                "v" => {
                    line.expect_len(3)?;
                    let j = var(&line, line.fields[1])?;
                    lp.names[j] = line.fields[2].to_string();
                }
                "z" => {
                    line.expect_len(2)?;
                    let j = var(&line, line.fields[1])?;
                    lp.fixed_zero[j] = true;
                }
                "min" => {
                    line.expect_len(3)?;
                    let j = var(&line, line.fields[1])?;
                    lp.objective[j] = line.get(2)?;
                }
                "eq" => {
                    let rhs: Rational = line.get(1)?;
                    let mut coeffs = Vec::new();
                    for f in &line.fields[2..] {
                        let (j, a) = f
                            .split_once(':')
                            .ok_or_else(|| line.err(format!("expected J:COEF, found `{f}`")))?;
                        let a: Rational = a.parse().map_err(|_| line.err(format!("bad coefficient `{a}`")))?;
                        coeffs.push((var(&line, j)?, a));
                    }
                    lp.add_row(coeffs, rhs)?;
                }
                other => return Err(line.err(format!("unexpected `{other}` in LP file")).into()),
            }
        }
        if lp.num_rows() != m {
            return Err(ParseError::Structure(format!("header announces {m} rows, found {}", lp.num_rows())).into());
        }
        Ok(lp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Set when optimal.
    pub optimum: Option<Rational>,
    /// A feasible optimal point when optimal, empty otherwise.
    pub solution: Vec<Rational>,
    pub pivots: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn dump_round_trip() {
        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(1));
        let y = lp.add_var("y", Rational::new(-1, 2));
        lp.fix_zero(y);
        lp.add_row(vec![(x, r(1)), (y, r(2)), (x, r(1))], r(3)).unwrap();
        assert_eq!(lp.rows()[0].coeffs, vec![(0, r(2)), (1, r(2))]);
        let text = lp.dump();
        assert_eq!(RationalLp::parse(&text).unwrap(), lp);
        assert!(RationalLp::parse("lp 1 1\n").is_err());
        assert!(RationalLp::parse("lp 1 1\neq 1 2:1\n").is_err());
    }

    #[test]
    fn feasibility_check() {
        let mut lp = RationalLp::new();
        let x = lp.add_var("x", r(1));
        let y = lp.add_var("y", r(0));
        lp.add_row(vec![(x, r(1)), (y, r(1))], r(1)).unwrap();
        assert!(lp.check_feasible(&[Rational::new(1, 3), Rational::new(2, 3)]));
        assert!(!lp.check_feasible(&[r(2), r(-1)]));
        assert_eq!(lp.objective_value(&[Rational::new(1, 3), r(0)]), Rational::new(1, 3));
    }
}
