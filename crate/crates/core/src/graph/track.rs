use super::{Coloring, Graph, Vertex};
use crate::error::{invalid, Result};

/// A proper coloring whose classes are tracks, plus a linear vertex order
/// under which edges between the same two tracks never cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackLayout {
    coloring: Coloring,
    order: Vec<Vertex>,
    rank: Vec<usize>,
}

impl TrackLayout {
    /// `order` lists every vertex once, smallest first.
    pub fn new(g: &Graph, coloring: Coloring, order: Vec<Vertex>) -> Result<Self> {
        let layout = Self::unchecked(g.n(), coloring, order)?;
        coloring_check(g, &layout.coloring)?;
        if let Some((e, f)) = layout.crossing_pair(g) {
            return Err(invalid(format!(
                "edges {}-{} and {}-{} cross",
                e.0, e.1, f.0, f.1
            )));
        }
        Ok(layout)
    }

    /// Checks only that `order` is a permutation of `1..=n`.
    pub fn unchecked(n: usize, coloring: Coloring, order: Vec<Vertex>) -> Result<Self> {
        if order.len() != n || coloring.n() != n {
            return Err(invalid("order and coloring must cover every vertex"));
        }
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || v > n || rank[v - 1] != usize::MAX {
                return Err(invalid(format!("order is not a permutation at {v}")));
            }
            rank[v - 1] = i;
        }
        Ok(TrackLayout {
            coloring,
            order,
            rank,
        })
    }

    /// Each vertex on its own track, in vertex order.
    pub fn trivial(n: usize) -> Self {
        Self::unchecked(n, Coloring::identity(n), (1..=n).collect()).expect("identity order")
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Position of `v` in the order.
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v - 1]
    }

    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.rank(u) < self.rank(v)
    }

    /// The first pair of crossing edges between a common pair of tracks,
    /// found by the pairwise check over all edges.
    pub fn crossing_pair(&self, g: &Graph) -> Option<((Vertex, Vertex), (Vertex, Vertex))> {
        let edges = g.edges();
        let c = |v| self.coloring.color(v);
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(x, y) in &edges[i + 1..] {
                for (c1, d1) in [(x, y), (y, x)] {
                    if c(a) != c(c1) || c(b) != c(d1) {
                        continue;
                    }
                    let cross = (self.precedes(a, c1) && self.precedes(d1, b))
                        || (self.precedes(c1, a) && self.precedes(b, d1));
                    if cross {
                        return Some(((a, b), (x, y)));
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.coloring.is_proper(g) && self.crossing_pair(g).is_none()
    }
}

fn coloring_check(g: &Graph, c: &Coloring) -> Result<()> {
    c.check_size(g)?;
    if let Some((u, v)) = c.monochromatic_edge(g) {
        return Err(invalid(format!("edge {u} {v} is monochromatic")));
    }
    Ok(())
}
