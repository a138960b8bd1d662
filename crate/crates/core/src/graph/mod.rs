//! Simple graphs, digraphs, colorings and the structural objects built on
//! them. Vertices are the integers `1..=n` everywhere.

mod coloring;
pub mod generators;
pub mod io;
mod layering;
mod track;
mod treedec;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{invalid, Result};

pub use coloring::Coloring;
pub use layering::{bfs_layering, is_shadow_complete, shadows, Layering, Shadow, ShadowReport};
pub use track::TrackLayout;
pub use treedec::{make_rich_supergraph, optimal_tree_decomposition, TreeDecomposition};

pub type Vertex = usize;

/// An undirected simple graph on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(invalid(format!("vertex {v} out of range 1..={}", self.n)));
        }
        Ok(())
    }

    /// Adds `uv`, rejecting loops, duplicates and out-of-range endpoints.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(invalid(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(invalid(format!("duplicate edge {u} {v}")));
        }
        self.insert(u, v);
        Ok(())
    }

    /// Adds `uv` unless present. Returns whether the edge is new.
    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n);
        if self.has_edge(u, v) {
            return false;
        }
        self.insert(u, v);
        true
    }

    fn insert(&mut self, u: Vertex, v: Vertex) {
        let a = &mut self.adj[u - 1];
        let pos = a.binary_search(&v).unwrap_err();
        a.insert(pos, v);
        let b = &mut self.adj[v - 1];
        let pos = b.binary_search(&u).unwrap_err();
        b.insert(pos, u);
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m());
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Connected components of the subgraph induced by `within`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, within: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut inside = vec![false; self.n + 1];
        for &v in within {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut sorted: Vec<Vertex> = within.to_vec();
        sorted.sort_unstable();
        let mut comps = Vec::new();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let all: Vec<Vertex> = self.vertices().collect();
        self.components_within(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vs`; vertex `vs[i]` becomes `i + 1`.
    pub fn induced(&self, vs: &[Vertex]) -> Graph {
        let mut index = vec![0usize; self.n + 1];
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i + 1;
        }
        let mut h = Graph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j > i + 1 {
                    h.insert(i + 1, j);
                }
            }
        }
        h
    }

    /// Vertices at distance at most two from `v`, excluding `v`.
    pub fn ball2(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for &w in self.neighbors(v) {
            out.insert(w);
            out.extend(self.neighbors(w).iter().copied());
        }
        out.remove(&v);
        out
    }
}

/// A directed graph on `1..=n`; loops allowed, arcs distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiGraph {
    n: usize,
    arcs: BTreeSet<(Vertex, Vertex)>,
}

impl DiGraph {
    pub fn new(n: usize) -> Self {
        DiGraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = DiGraph::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(invalid(format!("vertex {x} out of range 1..={}", self.n)));
            }
        }
        if !self.arcs.insert((u, v)) {
            return Err(invalid(format!("duplicate arc {u} {v}")));
        }
        Ok(())
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Underlying simple graph: arcs lose their direction, loops are dropped.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for &(u, v) in &self.arcs {
            if u != v {
                g.ensure_edge(u, v);
            }
        }
        g
    }

    /// Vertices incident to no arc.
    pub fn isolated(&self) -> Vec<Vertex> {
        let mut touched = vec![false; self.n + 1];
        for &(u, v) in &self.arcs {
            touched[u] = true;
            touched[v] = true;
        }
        (1..=self.n).filter(|&v| !touched[v]).collect()
    }

    /// Each edge `uv` becomes the two arcs `(u, v)` and `(v, u)`.
    pub fn symmetric(g: &Graph) -> DiGraph {
        let mut d = DiGraph::new(g.n());
        for (u, v) in g.edges() {
            d.arcs.insert((u, v));
            d.arcs.insert((v, u));
        }
        d
    }
}
