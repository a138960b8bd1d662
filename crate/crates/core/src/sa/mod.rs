//! The Sherali-Adams relaxation `SA(k, l)` of a VCSP instance.
//!
//! [`build_sa`] writes the relaxation out literally: one λ-block per term,
//! zero-cost blocks for every variable set of size at most `l`, and
//! marginalisation between every pair of blocks whose sets are nested with
//! the smaller of size at most `k`. [`solve_sa`] solves an equivalent, much
//! smaller model component by component.

mod compact;

use crate::error::{invalid, Result};
use crate::lp::RationalLp;
use crate::rational::Rational;
use crate::vcsp::{increment, table_size, VcspInstance};

pub use compact::{solve_sa, SaSolution, SaStats};

/// One λ-block of [`SaLp`]: variables `offset .. offset + d^|vars|` of the
/// LP, one per assignment to `vars` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaBlock {
    pub vars: Vec<usize>,
    /// Index of the instance term, `None` for an added zero term.
    pub term: Option<usize>,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct SaLp {
    pub lp: RationalLp,
    pub blocks: Vec<SaBlock>,
}

/// All `r`-element subsets of `items`, lexicographically.
pub(crate) fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..r).rev().find(|&p| idx[p] != p + items.len() - r) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..r {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// For each assignment of `vars` (lexicographic), the index of its
/// restriction to `sub`. `sub` must be a subset of `vars`.
pub(crate) fn projection(vars: &[usize], sub: &[usize], d: usize) -> Vec<u32> {
    let pos: Vec<usize> = sub
        .iter()
        .map(|x| vars.iter().position(|y| y == x).expect("subset"))
        .collect();
    let size = d.pow(vars.len() as u32);
    let mut out = Vec::with_capacity(size);
    let mut t = vec![0; vars.len()];
    for _ in 0..size {
        out.push(pos.iter().fold(0u32, |acc, &p| acc * d as u32 + t[p] as u32));
        increment(&mut t, d);
    }
    out
}

/// The literal `SA(k, l)` linear program of `inst`.
pub fn build_sa(inst: &VcspInstance, k: usize, l: usize) -> Result<SaLp> {
    if k == 0 || k > l {
        return Err(invalid(format!("SA levels need 0 < k <= l, got k={k}, l={l}")));
    }
    let (d, n) = (inst.domain_size(), inst.num_vars());
    let mut sets: Vec<(Vec<usize>, Option<usize>)> = inst
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| (t.scope_set(), Some(i)))
        .collect();
    let all: Vec<usize> = (0..n).collect();
    for j in 1..=l.min(n) {
        sets.extend(combinations(&all, j).into_iter().map(|s| (s, None)));
    }
    let mut lp = RationalLp::new();
    let mut blocks = Vec::with_capacity(sets.len());
    for (b, (vars, term)) in sets.into_iter().enumerate() {
        let size = table_size(d, vars.len())?;
        let offset = lp.num_vars();
        let mut t = vec![0; vars.len()];
        let mut image = Vec::new();
        for _ in 0..size {
            let name = format!(
                "b{}[{}]",
                b + 1,
                vars.iter()
                    .zip(&t)
                    .map(|(x, a)| format!("{}={}", x + 1, a + 1))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let mut cost = Rational::zero();
            let mut infinite = false;
            if let Some(i) = term {
                let term = &inst.terms()[i];
                image.clear();
                image.extend(term.scope.iter().map(|x| t[vars.binary_search(x).unwrap()]));
                match term.function.get(&image).finite() {
                    Some(c) => cost = c.clone(),
                    None => infinite = true,
                }
            }
            let j = lp.add_var(name, cost);
            if infinite {
                lp.fix_zero(j);
            }
            increment(&mut t, d);
        }
        lp.add_row((offset..offset + size).map(|j| (j, Rational::one())).collect(), Rational::one())?;
        blocks.push(SaBlock { vars, term, offset });
    }
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            let nested = i != j
                && bj.vars.len() <= k
                && bj.vars.iter().all(|x| bi.vars.binary_search(x).is_ok());
            // Equal sets are linked once.
            if !nested || (bi.vars.len() == bj.vars.len() && j < i) {
                continue;
            }
            let proj = projection(&bi.vars, &bj.vars, d);
            let mut rows: Vec<Vec<(usize, Rational)>> = (0..d.pow(bj.vars.len() as u32))
                .map(|s| vec![(bj.offset + s, -Rational::one())])
                .collect();
            for (t, &s) in proj.iter().enumerate() {
                rows[s as usize].push((bi.offset + t, Rational::one()));
            }
            for row in rows {
                lp.add_row(row, Rational::zero())?;
            }
        }
    }
    Ok(SaLp { lp, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_and_projection() {
        assert_eq!(combinations(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(&[1, 2], 3), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(&[4], 0), vec![Vec::<usize>::new()]);
        // (x0, x2) -> x2 over d = 2.
        assert_eq!(projection(&[0, 2], &[2], 2), vec![0, 1, 0, 1]);
        assert_eq!(projection(&[0, 2], &[0], 3), vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn rejects_bad_levels() {
        let inst = VcspInstance::new(2, 2);
        assert!(build_sa(&inst, 3, 2).is_err());
        assert!(build_sa(&inst, 0, 2).is_err());
    }
}
