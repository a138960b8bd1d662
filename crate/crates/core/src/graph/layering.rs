use std::collections::VecDeque;

use super::{Graph, Vertex};
use crate::error::{invalid, Result};

/// An ordered partition `(V_0, ..., V_t)` of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<Vec<Vertex>>,
    layer_of: Vec<usize>,
}

/// A component of `G_{>=i}` together with its neighbours in `V_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shadow {
    pub layer: usize,
    pub component: Vec<Vertex>,
    pub shadow: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowReport {
    pub complete: bool,
    /// First shadow, in layer then component order, that is not a clique.
    pub violation: Option<Shadow>,
    pub max_shadow: usize,
}

impl Layering {
    /// Checks that `layers` partitions `1..=g.n()` and that every edge joins
    /// equal or consecutive layers. Each layer is stored sorted.
    pub fn new(g: &Graph, layers: Vec<Vec<Vertex>>) -> Result<Self> {
        let l = Self::partition(g.n(), layers)?;
        if let Some((u, v)) = l.skipping_edge(g) {
            return Err(invalid(format!(
                "edge {u} {v} joins layers {} and {}",
                l.layer_of(u),
                l.layer_of(v)
            )));
        }
        Ok(l)
    }

    /// Checks only the partition property.
    pub fn partition(n: usize, mut layers: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut layer_of = vec![usize::MAX; n];
        for (i, layer) in layers.iter_mut().enumerate() {
            layer.sort_unstable();
            for &v in layer.iter() {
                if v == 0 || v > n {
                    return Err(invalid(format!("vertex {v} out of range 1..={n}")));
                }
                if layer_of[v - 1] != usize::MAX {
                    return Err(invalid(format!("vertex {v} in two layers")));
                }
                layer_of[v - 1] = i;
            }
        }
        if let Some(v) = layer_of.iter().position(|&i| i == usize::MAX) {
            return Err(invalid(format!("vertex {} in no layer", v + 1)));
        }
        Ok(Layering { layers, layer_of })
    }

    pub fn layers(&self) -> &[Vec<Vertex>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[Vertex] {
        &self.layers[i]
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer_of(&self, v: Vertex) -> usize {
        self.layer_of[v - 1]
    }

    /// An edge whose endpoints are more than one layer apart.
    pub fn skipping_edge(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        g.edges()
            .into_iter()
            .find(|&(u, v)| self.layer_of(u).abs_diff(self.layer_of(v)) > 1)
    }

    /// `V_{>=i}`.
    pub fn at_least(&self, i: usize) -> Vec<Vertex> {
        self.layers[i..].iter().flatten().copied().collect()
    }

    /// Neighbours of `set` in `V_{i-1}`, sorted. `i` must be positive.
    pub fn shadow_of(&self, g: &Graph, i: usize, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&w| self.layer_of(w) + 1 == i)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Every shadow of every component of every `G_{>=i}` with `i > 0`.
pub fn shadows(g: &Graph, l: &Layering) -> Vec<Shadow> {
    let mut out = Vec::new();
    for i in 1..l.len() {
        for comp in g.components_within(&l.at_least(i)) {
            let shadow = l.shadow_of(g, i, &comp);
            out.push(Shadow {
                layer: i,
                component: comp,
                shadow,
            });
        }
    }
    out
}

/// Decides whether every shadow induces a clique. Shadows of arbitrary
/// connected subgraphs are subsets of component shadows, so components
/// suffice.
pub fn is_shadow_complete(g: &Graph, l: &Layering) -> Result<ShadowReport> {
    if l.layer_of.len() != g.n() {
        return Err(invalid("layering does not match graph"));
    }
    if let Some((u, v)) = l.skipping_edge(g) {
        return Err(invalid(format!("not a layering: edge {u} {v} skips a layer")));
    }
    let mut report = ShadowReport {
        complete: true,
        violation: None,
        max_shadow: 0,
    };
    for s in shadows(g, l) {
        report.max_shadow = report.max_shadow.max(s.shadow.len());
        if report.complete && !g.is_clique(&s.shadow) {
            report.complete = false;
            report.violation = Some(s);
        }
    }
    Ok(report)
}

/// Breadth-first distance classes from `root`.
pub fn bfs_layering(g: &Graph, root: Vertex) -> Result<Layering> {
    if root == 0 || root > g.n() {
        return Err(invalid(format!("root {root} out of range")));
    }
    let mut dist = vec![usize::MAX; g.n() + 1];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut layers: Vec<Vec<Vertex>> = vec![vec![root]];
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if layers.len() <= dist[w] {
                    layers.push(Vec::new());
                }
                layers[dist[w]].push(w);
                queue.push_back(w);
            }
        }
    }
    if dist[1..].contains(&usize::MAX) {
        return Err(invalid("graph is disconnected"));
    }
    Layering::new(g, layers)
}
