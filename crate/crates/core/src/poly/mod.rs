//! Ternary operations, persistent majority triples and their constructions.
//!
//! Domain values are `1..=d` at the interface; tables store them 0-based.

mod combine;
mod construct;
pub mod io;
mod search;

use std::fmt;

use crate::error::{invalid, Result};
use crate::vcsp::CrispLanguage;

pub use combine::{clique_permutation, local_triples, shadow_combine, ComponentTriple};
pub use construct::{
    cohen_triple, distance2_coloring, extend_after_deletion, odd_cycle_majority, triple_from_track_layout,
};
pub use search::{search_triple, SearchOutcome};

/// Largest supported domain.
pub const MAX_DOMAIN: usize = 255;

/// A total map `D^3 -> D`, `D = 1..=d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    d: usize,
    table: Vec<u8>,
}

fn index(d: usize, a: usize, b: usize, c: usize) -> usize {
    ((a - 1) * d + (b - 1)) * d + (c - 1)
}

impl OperationTable {
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize, usize) -> usize) -> Result<Self> {
        if d > MAX_DOMAIN {
            return Err(invalid(format!("domain {d} exceeds {MAX_DOMAIN}")));
        }
        let mut table = Vec::with_capacity(d * d * d);
        for a in 1..=d {
            for b in 1..=d {
                for c in 1..=d {
                    let v = f(a, b, c);
                    if v == 0 || v > d {
                        return Err(invalid(format!("f({a}, {b}, {c}) = {v} outside 1..={d}")));
                    }
                    table.push((v - 1) as u8);
                }
            }
        }
        Ok(OperationTable { d, table })
    }

    pub fn domain_size(&self) -> usize {
        self.d
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        self.table[index(self.d, a, b, c)] as usize + 1
    }

    /// A witness `(a, b, args)` against `f(b,a,a) = f(a,b,a) = f(a,a,b) = a`.
    pub fn majority_violation(&self) -> Option<(usize, [usize; 3])> {
        for a in 1..=self.d {
            for b in 1..=self.d {
                for args in [[b, a, a], [a, b, a], [a, a, b]] {
                    if self.get(args[0], args[1], args[2]) != a {
                        return Some((a, args));
                    }
                }
            }
        }
        None
    }

    pub fn is_majority(&self) -> bool {
        self.majority_violation().is_none()
    }

    /// Whether `f` maps every three tuples of `rel` into `rel`, applied
    /// componentwise.
    pub fn preserves(&self, rel: &[(usize, usize)]) -> bool {
        rel.iter().all(|t1| {
            rel.iter().all(|t2| {
                rel.iter().all(|t3| {
                    let out = (self.get(t1.0, t2.0, t3.0), self.get(t1.1, t2.1, t3.1));
                    rel.binary_search(&out).is_ok()
                })
            })
        })
    }
}

impl fmt::Debug for OperationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperationTable(d={})", self.d)
    }
}

/// Three operations over a common domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    ops: [OperationTable; 3],
}

impl Triple {
    pub fn new(f1: OperationTable, f2: OperationTable, f3: OperationTable) -> Result<Self> {
        if f1.d != f2.d || f1.d != f3.d {
            return Err(invalid("operations over different domains"));
        }
        Ok(Triple { ops: [f1, f2, f3] })
    }

    /// Builds all three tables from `F(a, b, c)`.
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize, usize) -> [usize; 3]) -> Result<Self> {
        if d > MAX_DOMAIN {
            return Err(invalid(format!("domain {d} exceeds {MAX_DOMAIN}")));
        }
        let mut tables = [Vec::new(), Vec::new(), Vec::new()];
        for a in 1..=d {
            for b in 1..=d {
                for c in 1..=d {
                    let out = f(a, b, c);
                    for (t, &v) in tables.iter_mut().zip(&out) {
                        if v == 0 || v > d {
                            return Err(invalid(format!("F({a}, {b}, {c}) has entry {v} outside 1..={d}")));
                        }
                        t.push((v - 1) as u8);
                    }
                }
            }
        }
        let [t1, t2, t3] = tables;
        Ok(Triple {
            ops: [
                OperationTable { d, table: t1 },
                OperationTable { d, table: t2 },
                OperationTable { d, table: t3 },
            ],
        })
    }

    pub fn domain_size(&self) -> usize {
        self.ops[0].d
    }

    /// `f_i`, `i` in `1..=3`.
    pub fn op(&self, i: usize) -> &OperationTable {
        &self.ops[i - 1]
    }

    pub fn apply(&self, a: usize, b: usize, c: usize) -> [usize; 3] {
        let i = index(self.domain_size(), a, b, c);
        [0, 1, 2].map(|k| self.ops[k].table[i] as usize + 1)
    }
}

/// A bijection `σ` on three coordinates acting by
/// `π(a_1, a_2, a_3) = (a_σ(1), a_σ(2), a_σ(3))`. Stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoordinatePermutation {
    sigma: [usize; 3],
}

impl CoordinatePermutation {
    /// The six permutations, identity first.
    pub const ALL: [CoordinatePermutation; 6] = [
        CoordinatePermutation { sigma: [0, 1, 2] },
        CoordinatePermutation { sigma: [0, 2, 1] },
        CoordinatePermutation { sigma: [1, 0, 2] },
        CoordinatePermutation { sigma: [1, 2, 0] },
        CoordinatePermutation { sigma: [2, 0, 1] },
        CoordinatePermutation { sigma: [2, 1, 0] },
    ];

    pub const IDENTITY: CoordinatePermutation = Self::ALL[0];

    /// `sigma` 1-based, e.g. `[3, 2, 1]`.
    pub fn new(sigma: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &s in &sigma {
            if !(1..=3).contains(&s) || seen[s - 1] {
                return Err(invalid(format!("{sigma:?} is not a permutation of 1, 2, 3")));
            }
            seen[s - 1] = true;
        }
        Ok(CoordinatePermutation {
            sigma: sigma.map(|s| s - 1),
        })
    }

    /// `σ` 1-based.
    pub fn sigma(&self) -> [usize; 3] {
        self.sigma.map(|s| s + 1)
    }

    pub fn apply<T: Copy>(&self, t: [T; 3]) -> [T; 3] {
        self.sigma.map(|s| t[s])
    }
}

/// Why a triple fails to be a persistent majority triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f_1(args) != majority` where `args` repeats `value` twice.
    NotMajority { args: [usize; 3], value: usize },
    /// `F(args)` is not a rearrangement of `args`.
    NotPermutation { args: [usize; 3], output: [usize; 3] },
    /// `F(t_1, t_2, t_3)` is not a rearrangement of the three tuples.
    Relation {
        relation: String,
        tuples: [(usize, usize); 3],
        output: [(usize, usize); 3],
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotMajority { args, value } => {
                write!(f, "f1{args:?} should be {value}")
            }
            Violation::NotPermutation { args, output } => {
                write!(f, "F{args:?} = {output:?} is not a rearrangement")
            }
            Violation::Relation {
                relation,
                tuples,
                output,
            } => write!(f, "relation {relation}: F{tuples:?} = {output:?} is not a rearrangement"),
        }
    }
}

fn sorted<T: Ord + Copy>(mut t: [T; 3]) -> [T; 3] {
    t.sort_unstable();
    t
}

/// Checks the three conditions on `f` against `lang`, returning the first
/// violation found.
pub fn verify_persistent_triple(lang: &CrispLanguage, f: &Triple) -> Result<Option<Violation>> {
    let d = f.domain_size();
    if lang.domain_size() != d {
        return Err(invalid(format!(
            "language over {} values, triple over {d}",
            lang.domain_size()
        )));
    }
    if let Some((value, args)) = f.op(1).majority_violation() {
        return Ok(Some(Violation::NotMajority { args, value }));
    }
    for a in 1..=d {
        for b in 1..=d {
            for c in 1..=d {
                let output = f.apply(a, b, c);
                if sorted(output) != sorted([a, b, c]) {
                    return Ok(Some(Violation::NotPermutation { args: [a, b, c], output }));
                }
            }
        }
    }
    for rel in lang.relations() {
        let r = &rel.pairs;
        for &t1 in r {
            for &t2 in r {
                for &t3 in r {
                    let heads = f.apply(t1.0, t2.0, t3.0);
                    let tails = f.apply(t1.1, t2.1, t3.1);
                    let output = [0, 1, 2].map(|i| (heads[i], tails[i]));
                    if sorted(output) != sorted([t1, t2, t3]) {
                        return Ok(Some(Violation::Relation {
                            relation: rel.name.clone(),
                            tuples: [t1, t2, t3],
                            output,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_persistent_triple(lang: &CrispLanguage, f: &Triple) -> Result<bool> {
    Ok(verify_persistent_triple(lang, f)?.is_none())
}
