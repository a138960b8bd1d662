use crate::error::{Error, Result};
use crate::graph::{DiGraph, Graph, Vertex};
use crate::rational::ExtRational;
use crate::vcsp::ValHomInstance;

fn check_space(h: usize, n: usize, budget: u64) -> Result<()> {
    let space = (h as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > budget as u128 {
        return Err(Error::Budget {
            what: "brute-force assignment",
            limit: budget,
        });
    }
    Ok(())
}

/// Depth-first search over maps `1..=n -> 1..=h` in lexicographic order.
/// `ok(map, v)` checks the constraints between `v` and earlier vertices;
/// `leaf` sees every complete map that passes and returns `true` to stop.
fn search(
    n: usize,
    h: usize,
    mut ok: impl FnMut(&[Vertex], Vertex) -> bool,
    mut leaf: impl FnMut(&[Vertex]) -> bool,
) {
    if n == 0 {
        leaf(&[]);
        return;
    }
    if h == 0 {
        return;
    }
    let mut map = vec![0usize; n];
    let mut depth = 0usize;
    loop {
        map[depth] += 1;
        if map[depth] > h {
            map[depth] = 0;
            if depth == 0 {
                return;
            }
            depth -= 1;
            continue;
        }
        if !ok(&map, depth + 1) {
            continue;
        }
        if depth + 1 == n {
            if leaf(&map) {
                return;
            }
        } else {
            depth += 1;
        }
    }
}

/// The lexicographically first homomorphism `g -> h`, if any.
pub fn brute_force_hom(g: &Graph, h: &Graph, budget: u64) -> Result<Option<Vec<Vertex>>> {
    check_space(h.n(), g.n(), budget)?;
    let mut found = None;
    search(
        g.n(),
        h.n(),
        |map, v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| u <= v)
                .all(|&u| h.has_edge(map[u - 1], map[v - 1]))
        },
        |map| {
            found = Some(map.to_vec());
            true
        },
    );
    Ok(found)
}

/// The lexicographically first homomorphism of digraphs `g -> h`, if any.
pub fn brute_force_digraph_hom(g: &DiGraph, h: &DiGraph, budget: u64) -> Result<Option<Vec<Vertex>>> {
    check_space(h.n(), g.n(), budget)?;
    let mut back: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); g.n() + 1];
    for (u, v) in g.arcs() {
        back[u.max(v)].push((u, v));
    }
    let mut found = None;
    search(
        g.n(),
        h.n(),
        |map, v| back[v].iter().all(|&(a, b)| h.has_arc(map[a - 1], map[b - 1])),
        |map| {
            found = Some(map.to_vec());
            true
        },
    );
    Ok(found)
}

/// Minimum of `inst.cost` over all maps, with the lexicographically first
/// minimiser; `(inf, None)` when no homomorphism exists.
pub fn brute_force_valhom(inst: &ValHomInstance, budget: u64) -> Result<(ExtRational, Option<Vec<Vertex>>)> {
    let (g, h) = (inst.g(), inst.h());
    check_space(h.n(), g.n(), budget)?;
    let mut back: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); g.n() + 1];
    for &(u, v) in inst.g_arcs() {
        back[u.max(v)].push((u, v));
    }
    let mut best: Option<(ExtRational, Vec<Vertex>)> = None;
    search(
        g.n(),
        h.n(),
        |map, v| back[v].iter().all(|&(a, b)| h.has_arc(map[a - 1], map[b - 1])),
        |map| {
            let c = inst.cost(map);
            if c.is_finite() && best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, map.to_vec()));
            }
            false
        },
    );
    Ok(match best {
        Some((c, w)) => (c, Some(w)),
        None => (ExtRational::Infinite, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::cycle;

    #[test]
    fn cycles() {
        assert!(brute_force_hom(&cycle(5), &cycle(3), 1000).unwrap().is_some());
        assert!(brute_force_hom(&cycle(3), &cycle(5), 1000).unwrap().is_none());
        let g = cycle(4);
        assert!(brute_force_hom(&g, &g, 1000).unwrap().is_some());
        assert!(brute_force_hom(&cycle(9), &cycle(3), 10).is_err());
    }

    #[test]
    fn directed() {
        let c3 = DiGraph::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let p2 = DiGraph::from_arcs(2, &[(1, 2)]).unwrap();
        assert!(brute_force_digraph_hom(&c3, &p2, 1000).unwrap().is_none());
        assert_eq!(brute_force_digraph_hom(&p2, &c3, 1000).unwrap(), Some(vec![1, 2]));
    }

    #[test]
    fn valhom_costs() {
        let c9: Vec<_> = (1..=9).map(|i| (i, i % 9 + 1)).collect();
        let g = DiGraph::from_arcs(9, &c9).unwrap();
        let h = DiGraph::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let inst = ValHomInstance::new(g, h, |_, _| ExtRational::from_integer(1));
        let (v, w) = brute_force_valhom(&inst, 100_000).unwrap();
        assert_eq!(v, ExtRational::from_integer(9));
        assert_eq!(inst.cost(&w.unwrap()), v);
    }
}
