use std::collections::BTreeMap;

use super::{Graph, Vertex};
use crate::error::{invalid, Result};

/// A map from vertices `1..=n` to colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    /// `colors[v - 1]` is the color of `v`. `k` is the largest color used.
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(invalid(format!("vertex {} has color 0", v + 1)));
        }
        let k = colors.iter().copied().max().unwrap_or(0);
        Ok(Coloring { colors, k })
    }

    /// Colors `1..=n` in vertex order.
    pub fn identity(n: usize) -> Self {
        Coloring {
            colors: (1..=n).collect(),
            k: n,
        }
    }

    pub fn constant(n: usize) -> Self {
        Coloring {
            colors: vec![1; n],
            k: usize::from(n > 0),
        }
    }

    /// Renumbers colors by first appearance in vertex order so that the
    /// result uses exactly `1..=k`.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut ids: BTreeMap<K, usize> = BTreeMap::new();
        let mut colors = Vec::with_capacity(keys.len());
        for key in keys {
            let next = ids.len() + 1;
            colors.push(*ids.entry(key.clone()).or_insert(next));
        }
        Coloring {
            k: ids.len(),
            colors,
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Largest color label.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of distinct colors actually used.
    pub fn num_used(&self) -> usize {
        let mut seen = vec![false; self.k + 1];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Vertices of each color `1..=k`.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &c) in self.colors.iter().enumerate() {
            out[c - 1].push(i + 1);
        }
        out
    }

    pub fn check_size(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(invalid(format!(
                "coloring covers {} vertices, graph has {}",
                self.colors.len(),
                g.n()
            )));
        }
        Ok(())
    }

    /// First monochromatic edge, if any.
    pub fn monochromatic_edge(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        g.edges()
            .into_iter()
            .find(|&(u, v)| self.color(u) == self.color(v))
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && self.monochromatic_edge(g).is_none()
    }

    /// Proper, and no two vertices at distance two share a color.
    pub fn is_distance2(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && g.vertices().all(|v| {
                g.ball2(v)
                    .into_iter()
                    .all(|w| self.color(w) != self.color(v))
            })
    }

    pub fn restrict(&self, vs: &[Vertex]) -> Coloring {
        let colors: Vec<usize> = vs.iter().map(|&v| self.color(v)).collect();
        Coloring {
            k: self.k,
            colors,
        }
    }
}
