use std::collections::VecDeque;

use super::{Graph, Vertex};
use crate::error::{invalid, Result};

/// A tree on nodes `1..=b` with a bag of graph vertices at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Checks only that the tree edges form a tree on the bag nodes.
    pub fn new(mut bags: Vec<Vec<Vertex>>, tree_edges: Vec<(usize, usize)>) -> Result<Self> {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        let b = bags.len();
        if b == 0 {
            if tree_edges.is_empty() {
                return Ok(TreeDecomposition { bags, tree_edges });
            }
            return Err(invalid("tree edges without bags"));
        }
        if tree_edges.len() != b - 1 {
            return Err(invalid(format!(
                "{} tree edges for {b} nodes; a tree needs {}",
                tree_edges.len(),
                b - 1
            )));
        }
        let mut adj = vec![Vec::new(); b + 1];
        for &(x, y) in &tree_edges {
            if x == 0 || y == 0 || x > b || y > b || x == y {
                return Err(invalid(format!("bad tree edge {x} {y}")));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; b + 1];
        seen[1] = true;
        let mut queue = VecDeque::from([1]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        if count != b {
            return Err(invalid("tree edges do not form a tree"));
        }
        Ok(TreeDecomposition { bags, tree_edges })
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn bag(&self, x: usize) -> &[Vertex] {
        &self.bags[x - 1]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// `β(x) ∩ β(y)` for every tree edge `xy`.
    pub fn adhesions(&self) -> Vec<((usize, usize), Vec<Vertex>)> {
        self.tree_edges
            .iter()
            .map(|&(x, y)| {
                let a = self.bag(x);
                let shared = self.bag(y).iter().copied().filter(|v| a.binary_search(v).is_ok());
                ((x, y), shared.collect())
            })
            .collect()
    }

    pub fn max_adhesion(&self) -> usize {
        self.adhesions().iter().map(|(_, a)| a.len()).max().unwrap_or(0)
    }

    /// Checks edge coverage and that each vertex occupies a non-empty
    /// connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut holders = vec![Vec::new(); n + 1];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v == 0 || v > n {
                    return Err(invalid(format!("bag {} holds unknown vertex {v}", i + 1)));
                }
                holders[v].push(i + 1);
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
                return Err(invalid(format!("edge {u} {v} lies in no bag")));
            }
        }
        let mut adj = vec![Vec::new(); self.bags.len() + 1];
        for &(x, y) in &self.tree_edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        for (v, nodes) in holders.iter().enumerate().take(n + 1).skip(1) {
            let Some(&start) = nodes.first() else {
                return Err(invalid(format!("vertex {v} lies in no bag")));
            };
            let inside = |x: usize| self.bag(x).binary_search(&v).is_ok();
            let mut seen = vec![false; self.bags.len() + 1];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut count = 1;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] && inside(y) {
                        seen[y] = true;
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
            if count != nodes.len() {
                return Err(invalid(format!("bags holding vertex {v} are not connected")));
            }
        }
        Ok(())
    }

    /// Every adhesion induces a clique of size at most `k`.
    pub fn is_rich(&self, g: &Graph, k: usize) -> bool {
        self.adhesions()
            .iter()
            .all(|(_, a)| a.len() <= k && g.is_clique(a))
    }
}

/// Adds every edge inside every adhesion. The decomposition is returned
/// unchanged and is `k`-rich for the supergraph, `k` the largest adhesion.
pub fn make_rich_supergraph(g: &Graph, td: &TreeDecomposition) -> Result<(Graph, TreeDecomposition)> {
    td.validate(g)?;
    let mut h = g.clone();
    for (_, shared) in td.adhesions() {
        for (i, &u) in shared.iter().enumerate() {
            for &v in &shared[i + 1..] {
                h.ensure_edge(u, v);
            }
        }
    }
    Ok((h, td.clone()))
}

/// Largest graph accepted by [`optimal_tree_decomposition`].
pub const OPTIMAL_TD_MAX_N: usize = 16;

/// A minimum-width tree decomposition found by dynamic programming over
/// vertex subsets of elimination orderings. Exponential; tiny graphs only.
pub fn optimal_tree_decomposition(g: &Graph) -> Result<TreeDecomposition> {
    let n = g.n();
    if n > OPTIMAL_TD_MAX_N {
        return Err(invalid(format!("exact tree decomposition limited to {OPTIMAL_TD_MAX_N} vertices")));
    }
    if n == 0 {
        return TreeDecomposition::new(Vec::new(), Vec::new());
    }
    let nbr: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i + 1).iter().fold(0u32, |m, &w| m | 1 << (w - 1)))
        .collect();
    // Vertices outside `s | v` reachable from `v` through `s`.
    let q = |s: u32, v: usize| -> u32 {
        let mut reach = 0u32;
        let mut frontier = 1u32 << v;
        let mut visited = frontier;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let out = nbr[i] & !visited;
            visited |= out;
            reach |= out & !s;
            frontier |= out & s;
        }
        reach & !(1 << v)
    };
    let full = (1u32 << n) - 1;
    let mut best = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = best[prev as usize].max(q(prev, v).count_ones());
            if cost < best[s as usize] {
                best[s as usize] = cost;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    let mut eliminated = 0u32;
    for (i, &v) in order.iter().enumerate() {
        let higher = q(eliminated, v);
        let mut bag = vec![v + 1];
        let mut parent: Option<usize> = None;
        let mut rest = higher;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            bag.push(w + 1);
            if parent.is_none_or(|p| pos[w] < pos[p]) {
                parent = Some(w);
            }
        }
        bags.push(bag);
        match parent {
            Some(p) => edges.push((i + 1, pos[p] + 1)),
            None => roots.push(i + 1),
        }
        eliminated |= 1 << v;
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    TreeDecomposition::new(bags, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, path};

    #[test]
    fn rich_supergraph_examples() {
        let p = path(4);
        let td = TreeDecomposition::new(vec![vec![1, 2], vec![2, 3], vec![3, 4]], vec![(1, 2), (2, 3)]).unwrap();
        let (h, _) = make_rich_supergraph(&p, &td).unwrap();
        assert_eq!(h, p);

        let td = TreeDecomposition::new(vec![vec![1, 2, 3], vec![2, 3, 4]], vec![(1, 2)]).unwrap();
        let (h, _) = make_rich_supergraph(&p, &td).unwrap();
        assert_eq!(h, p);

        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let (h, td2) = make_rich_supergraph(&g, &td).unwrap();
        assert_eq!(h.edges(), vec![(1, 2), (2, 3), (3, 4)]);
        assert!(td2.is_rich(&h, 2));
        assert!(!td2.is_rich(&g, 2));
    }

    #[test]
    fn validation_failures() {
        let p = path(3);
        let missing = TreeDecomposition::new(vec![vec![1, 2], vec![3]], vec![(1, 2)]).unwrap();
        assert!(missing.validate(&p).is_err());
        let split = TreeDecomposition::new(
            vec![vec![1, 2], vec![3], vec![2, 3]],
            vec![(1, 2), (2, 3)],
        )
        .unwrap();
        assert!(split.validate(&p).is_err());
        assert!(TreeDecomposition::new(vec![vec![1], vec![2]], vec![]).is_err());
    }

    #[test]
    fn optimal_widths() {
        for (g, w) in [(path(6), 1), (cycle(7), 2), (complete(5), 4)] {
            let td = optimal_tree_decomposition(&g).unwrap();
            td.validate(&g).unwrap();
            assert_eq!(td.width(), w);
        }
        let two = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let td = optimal_tree_decomposition(&two).unwrap();
        td.validate(&two).unwrap();
        assert_eq!(td.width(), 1);
    }
}
