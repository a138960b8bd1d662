//! Corpus generators and oracles shared by the integration tests. The
//! oracles are written against the raw tables, independently of the
//! library's own checkers.

#![allow(dead_code)]

use homlab_core::graph::generators::{cycle, path, random_bounded_degree, random_digraph, random_tree};
use homlab_core::graph::{Coloring, Graph, TrackLayout, Vertex};
use homlab_core::poly::Triple;
use homlab_core::vcsp::{CrispLanguage, ValHomInstance, VcspInstance};
use homlab_core::ExtRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Paths, cycles, random trees and random graphs of maximum degree three,
/// all on at most 12 vertices.
pub fn corpus(seed: u64) -> Vec<(String, Graph)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("path{n}"), path(n)));
    }
    for n in 3..=12 {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for i in 0..40 {
        let n = 2 + i % 11;
        out.push((format!("tree{i}_n{n}"), random_tree(n, &mut r)));
    }
    for i in 0..40 {
        let n = 4 + i % 9;
        out.push((format!("deg3_{i}_n{n}"), random_bounded_degree(n, 3, 0.5, &mut r)));
    }
    out
}

/// Breadth-first tracks in discovery order when they form a valid layout,
/// one track per vertex otherwise.
pub fn some_track_layout(g: &Graph) -> TrackLayout {
    let mut order = Vec::new();
    let mut colors = vec![0usize; g.n()];
    let mut seen = vec![false; g.n() + 1];
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([(root, 1usize)]);
        seen[root] = true;
        while let Some((v, depth)) = queue.pop_front() {
            order.push(v);
            colors[v - 1] = depth;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, depth + 1));
                }
            }
        }
    }
    Coloring::new(colors)
        .and_then(|c| TrackLayout::new(g, c, order))
        .unwrap_or_else(|_| TrackLayout::new(g, Coloring::identity(g.n()), g.vertices().collect()).unwrap())
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// Direct check of the three conditions, reading the tables through
/// `op(i).get` only.
pub fn naive_verify(lang: &CrispLanguage, f: &Triple) -> bool {
    let d = lang.domain_size();
    if f.domain_size() != d {
        return false;
    }
    let out = |a: usize, b: usize, c: usize| -> Vec<usize> { (1..=3).map(|i| f.op(i).get(a, b, c)).collect() };
    for a in 1..=d {
        for b in 1..=d {
            let f1 = f.op(1);
            if f1.get(a, a, b) != a || f1.get(a, b, a) != a || f1.get(b, a, a) != a {
                return false;
            }
            for c in 1..=d {
                if sorted(out(a, b, c)) != sorted(vec![a, b, c]) {
                    return false;
                }
            }
        }
    }
    for rel in lang.relations() {
        for &t1 in &rel.pairs {
            for &t2 in &rel.pairs {
                for &t3 in &rel.pairs {
                    let heads = out(t1.0, t2.0, t3.0);
                    let tails = out(t1.1, t2.1, t3.1);
                    let pairs: Vec<_> = heads.into_iter().zip(tails).collect();
                    if sorted(pairs) != sorted(vec![t1, t2, t3]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Exact VCSP optimum by depth-first search, pruning infinite prefixes.
pub fn vcsp_optimum(inst: &VcspInstance) -> ExtRational {
    let n = inst.num_vars();
    let d = inst.domain_size();
    let mut best = ExtRational::Infinite;
    let mut assignment = vec![0usize; n];
    fn rec(inst: &VcspInstance, x: usize, assignment: &mut Vec<usize>, best: &mut ExtRational) {
        let n = inst.num_vars();
        // Cost of the terms whose scope is already assigned.
        let partial: ExtRational = inst
            .terms()
            .iter()
            .filter(|t| t.scope.iter().all(|&y| y < x))
            .map(|t| {
                let vals: Vec<usize> = t.scope.iter().map(|&y| assignment[y]).collect();
                t.function.get(&vals).clone()
            })
            .sum();
        if partial.is_infinite() {
            return;
        }
        if x == n {
            if partial < *best {
                *best = partial;
            }
            return;
        }
        for a in 0..inst.domain_size() {
            assignment[x] = a;
            rec(inst, x + 1, assignment, best);
        }
    }
    if d > 0 || n == 0 {
        rec(inst, 0, &mut assignment, &mut best);
    }
    best
}

/// Exact ValHom optimum over all maps `V(G) -> V(H)`.
pub fn valhom_optimum(inst: &ValHomInstance) -> ExtRational {
    let (n, h) = (inst.g().n(), inst.h().n());
    let mut best = ExtRational::Infinite;
    let mut map = vec![1usize; n];
    if n > 0 && h == 0 {
        return best;
    }
    loop {
        let mut total = ExtRational::zero();
        for &(u, v) in inst.g_arcs() {
            match inst.eta((u, v), (map[u - 1], map[v - 1])) {
                Some(c) => total += c,
                None => total = ExtRational::Infinite,
            }
        }
        if total < best {
            best = total;
        }
        let mut i = 0;
        while i < n && map[i] == h {
            map[i] = 1;
            i += 1;
        }
        if i == n {
            return best;
        }
        map[i] += 1;
    }
}

/// A random ValHom instance: each cost is infinite with probability
/// `p_inf` and otherwise an integer in `0..=5`.
pub fn random_valhom(r: &mut ChaCha8Rng, n: usize, h: usize, p_arc: f64, p_inf: f64) -> ValHomInstance {
    let g = random_digraph(n, p_arc, true, r);
    let hh = random_digraph(h, p_arc, true, r);
    ValHomInstance::new(g, hh, |_, _| {
        if r.random_bool(p_inf) {
            ExtRational::Infinite
        } else {
            ExtRational::from_integer(r.random_range(0..=5))
        }
    })
}

pub fn is_hom(g: &Graph, h: &Graph, map: &[Vertex]) -> bool {
    g.edges().into_iter().all(|(u, v)| h.has_edge(map[u - 1], map[v - 1]))
}

/// Whether some map `g -> h` preserves edges, by plain backtracking.
pub fn hom_exists(g: &Graph, h: &Graph) -> bool {
    fn rec(g: &Graph, h: &Graph, v: Vertex, map: &mut Vec<Vertex>) -> bool {
        if v > g.n() {
            return true;
        }
        for x in 1..=h.n() {
            if g
                .neighbors(v)
                .iter()
                .all(|&u| u >= v || h.has_edge(map[u - 1], x))
            {
                map.push(x);
                if rec(g, h, v + 1, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    rec(g, h, 1, &mut Vec::new())
}
