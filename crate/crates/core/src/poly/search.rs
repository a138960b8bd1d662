use std::collections::{HashMap, VecDeque};

use super::{verify_persistent_triple, CoordinatePermutation, Triple};
use crate::error::{invalid, Error, Result};
use crate::vcsp::CrispLanguage;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { triple: Triple, nodes: u64 },
    NoTriple { nodes: u64 },
}

impl SearchOutcome {
    pub fn triple(&self) -> Option<&Triple> {
        match self {
            SearchOutcome::Found { triple, .. } => Some(triple),
            SearchOutcome::NoTriple { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. } | SearchOutcome::NoTriple { nodes } => *nodes,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Bitmask over `CoordinatePermutation::ALL`: one permutation per distinct
/// rearrangement of `t`, and only those putting the majority value first
/// when `t` has a repeated entry.
fn initial_domain(t: [usize; 3]) -> u8 {
    let majority = if t[0] == t[1] || t[0] == t[2] {
        Some(t[0])
    } else if t[1] == t[2] {
        Some(t[1])
    } else {
        None
    };
    let mut seen: Vec<[usize; 3]> = Vec::new();
    let mut mask = 0u8;
    for (i, p) in CoordinatePermutation::ALL.iter().enumerate() {
        let out = p.apply(t);
        if seen.contains(&out) || majority.is_some_and(|m| out[0] != m) {
            continue;
        }
        seen.push(out);
        mask |= 1 << i;
    }
    mask
}

fn bits(mask: u8) -> impl Iterator<Item = usize> {
    (0..6).filter(move |i| mask & (1 << i) != 0)
}

struct Arc {
    from: usize,
    to: usize,
    /// `support[a]`: values of `to` compatible with value `a` of `from`.
    support: [u8; 6],
}

struct Network {
    arcs: Vec<Arc>,
    incoming: Vec<Vec<usize>>,
}

impl Network {
    /// Arc consistency from the arcs pointing at `changed`, or from all arcs.
    fn propagate(&self, dom: &mut [u8], changed: Option<usize>) -> bool {
        let mut queue: VecDeque<usize> = match changed {
            Some(x) => self.incoming[x].iter().copied().collect(),
            None => (0..self.arcs.len()).collect(),
        };
        let mut queued = vec![false; self.arcs.len()];
        for &a in &queue {
            queued[a] = true;
        }
        while let Some(a) = queue.pop_front() {
            queued[a] = false;
            let arc = &self.arcs[a];
            let target = dom[arc.to];
            let before = dom[arc.from];
            let after = bits(before)
                .filter(|&v| arc.support[v] & target != 0)
                .fold(0u8, |m, v| m | (1 << v));
            if after == before {
                continue;
            }
            if after == 0 {
                return false;
            }
            dom[arc.from] = after;
            for &b in &self.incoming[arc.from] {
                if !queued[b] && self.arcs[b].to != arc.to {
                    queued[b] = true;
                    queue.push_back(b);
                }
            }
        }
        true
    }
}

fn sorted<T: Ord + Copy>(mut t: [T; 3]) -> [T; 3] {
    t.sort_unstable();
    t
}

/// Searches for a persistent majority triple of `lang` by maintaining arc
/// consistency over one variable per non-constant argument triple, whose
/// value is the rearrangement `F(a, b, c)`. Variables are chosen by smallest
/// domain, lowest index first, and values in `CoordinatePermutation::ALL`
/// order. Fails with `Error::Budget` after `node_budget` assignments.
pub fn search_triple(lang: &CrispLanguage, node_budget: u64) -> Result<SearchOutcome> {
    let d = lang.domain_size();
    if d == 0 {
        return Err(invalid("empty domain"));
    }
    if d > super::MAX_DOMAIN {
        return Err(invalid(format!("domain {d} exceeds {}", super::MAX_DOMAIN)));
    }
    let index = |t: [usize; 3]| ((t[0] - 1) * d + t[1] - 1) * d + t[2] - 1;
    let mut var_of = vec![NONE; d * d * d];
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for a in 1..=d {
        for b in 1..=d {
            for c in 1..=d {
                if a == b && b == c {
                    continue;
                }
                var_of[index([a, b, c])] = triples.len() as u32;
                triples.push([a, b, c]);
            }
        }
    }
    let mut dom: Vec<u8> = triples.iter().map(|&t| initial_domain(t)).collect();

    let mut tables: HashMap<(usize, usize), [u8; 6]> = HashMap::new();
    for rel in lang.relations() {
        let r = &rel.pairs;
        for &t1 in r {
            for &t2 in r {
                for &t3 in r {
                    let h = [t1.0, t2.0, t3.0];
                    let tl = [t1.1, t2.1, t3.1];
                    let (x, y) = (var_of[index(h)], var_of[index(tl)]);
                    if x == NONE || y == NONE || x == y {
                        continue;
                    }
                    let (x, y) = (x as usize, y as usize);
                    let want = sorted([t1, t2, t3]);
                    let mut support = [0u8; 6];
                    for s in bits(dom[x]) {
                        let hs = CoordinatePermutation::ALL[s].apply(h);
                        for u in bits(dom[y]) {
                            let ts = CoordinatePermutation::ALL[u].apply(tl);
                            if sorted([0, 1, 2].map(|i| (hs[i], ts[i]))) == want {
                                support[s] |= 1 << u;
                            }
                        }
                    }
                    let (key, support) = if x < y { ((x, y), support) } else { ((y, x), transpose(&support)) };
                    let entry = tables.entry(key).or_insert([0x3f; 6]);
                    for i in 0..6 {
                        entry[i] &= support[i];
                    }
                }
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = tables.keys().copied().collect();
    keys.sort_unstable();
    let mut net = Network {
        arcs: Vec::with_capacity(2 * keys.len()),
        incoming: vec![Vec::new(); triples.len()],
    };
    for (x, y) in keys {
        let t = tables[&(x, y)];
        for (from, to, support) in [(x, y, t), (y, x, transpose(&t))] {
            net.incoming[to].push(net.arcs.len());
            net.arcs.push(Arc { from, to, support });
        }
    }
    let constrained: Vec<bool> = (0..triples.len())
        .map(|v| !net.incoming[v].is_empty())
        .collect();
    for (v, m) in dom.iter_mut().enumerate() {
        if !constrained[v] {
            *m &= m.wrapping_neg();
        }
    }

    let mut nodes = 0u64;
    let solved = net.propagate(&mut dom, None) && {
        struct Frame {
            var: usize,
            remaining: u8,
            saved: Vec<u8>,
        }
        let mut stack: Vec<Frame> = Vec::new();
        'outer: loop {
            let pick = (0..dom.len())
                .filter(|&v| dom[v].count_ones() > 1)
                .min_by_key(|&v| (dom[v].count_ones(), v));
            if let Some(var) = pick {
                stack.push(Frame {
                    var,
                    remaining: dom[var],
                    saved: dom.clone(),
                });
            } else {
                break true;
            }
            while let Some(top) = stack.last_mut() {
                if top.remaining == 0 {
                    stack.pop();
                    continue;
                }
                let v = top.remaining.trailing_zeros();
                top.remaining &= !(1 << v);
                nodes += 1;
                if nodes > node_budget {
                    return Err(Error::Budget {
                        what: "search nodes",
                        limit: node_budget,
                    });
                }
                dom.copy_from_slice(&top.saved);
                dom[top.var] = 1 << v;
                if net.propagate(&mut dom, Some(top.var)) {
                    continue 'outer;
                }
            }
            break false;
        }
    };
    if !solved {
        return Ok(SearchOutcome::NoTriple { nodes });
    }
    let f = Triple::from_fn(d, |a, b, c| match var_of[index([a, b, c])] {
        NONE => [a, b, c],
        v => {
            let p = dom[v as usize].trailing_zeros() as usize;
            CoordinatePermutation::ALL[p].apply([a, b, c])
        }
    })?;
    if let Some(v) = verify_persistent_triple(lang, &f)? {
        return Err(invalid(format!("search produced an invalid triple: {v}")));
    }
    Ok(SearchOutcome::Found { triple: f, nodes })
}

fn transpose(t: &[u8; 6]) -> [u8; 6] {
    let mut out = [0u8; 6];
    for (a, &row) in t.iter().enumerate() {
        for b in bits(row) {
            out[b] |= 1 << a;
        }
    }
    out
}
