//! Standard graph families and seeded random graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, Vertex};

/// Path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.ensure_edge(v, v + 1);
    }
    g
}

/// Cycle `1 - 2 - ... - n - 1`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = path(n);
    g.ensure_edge(n, 1);
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            g.ensure_edge(u, v);
        }
    }
    g
}

/// Star with centre `1` and leaves `2..=leaves + 1`.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for v in 2..=leaves + 1 {
        g.ensure_edge(1, v);
    }
    g
}

/// Copy of `g` with one new pendant vertex attached to each vertex of
/// `attach`, numbered `n + 1, n + 2, ...`.
pub fn with_pendants(g: &Graph, attach: &[Vertex]) -> Graph {
    let n = g.n();
    let mut h = Graph::new(n + attach.len());
    for (u, v) in g.edges() {
        h.ensure_edge(u, v);
    }
    for (i, &a) in attach.iter().enumerate() {
        h.ensure_edge(a, n + i + 1);
    }
    h
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut h = Graph::new(a.n() + b.n());
    for (u, v) in a.edges() {
        h.ensure_edge(u, v);
    }
    for (u, v) in b.edges() {
        h.ensure_edge(u + a.n(), v + a.n());
    }
    h
}

/// Uniform random labelled tree via a random attachment order.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 2..=n {
        let parent = rng.random_range(1..v);
        g.ensure_edge(parent, v);
    }
    g
}

/// Random graph with maximum degree at most `max_deg`: candidate edges are
/// visited in random order and each is kept with probability `p` if both
/// endpoints still have room.
pub fn random_bounded_degree<R: Rng>(n: usize, max_deg: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if g.degree(u) < max_deg && g.degree(v) < max_deg && rng.random_bool(p) {
            g.ensure_edge(u, v);
        }
    }
    g
}

/// Random digraph where each ordered pair (loops included when `loops`)
/// is an arc with probability `p`.
pub fn random_digraph<R: Rng>(n: usize, p: f64, loops: bool, rng: &mut R) -> super::DiGraph {
    let mut d = super::DiGraph::new(n);
    for u in 1..=n {
        for v in 1..=n {
            if (u != v || loops) && rng.random_bool(p) {
                d.add_arc(u, v).expect("fresh arc");
            }
        }
    }
    d
}
