use super::Triple;
use super::OperationTable;
use crate::error::{invalid, Result};
use crate::graph::{Coloring, Graph, TrackLayout, Vertex};

/// `(median, min, max)` with respect to the layout order.
pub fn triple_from_track_layout(g: &Graph, t: &TrackLayout) -> Result<Triple> {
    t.coloring().check_size(g)?;
    if let Some((u, v)) = t.coloring().monochromatic_edge(g) {
        return Err(invalid(format!("track coloring is not proper: edge {u} {v}")));
    }
    if let Some((e, f)) = t.crossing_pair(g) {
        return Err(invalid(format!("edges {}-{} and {}-{} cross", e.0, e.1, f.0, f.1)));
    }
    Triple::from_fn(g.n(), |a, b, c| {
        let mut s = [a, b, c];
        s.sort_by_key(|&v| t.rank(v));
        [s[1], s[0], s[2]]
    })
}

/// Greedy distance-2 coloring in vertex order: each vertex takes the
/// smallest color absent from its ball of radius two. Uses at most
/// `Δ^2 + 1` colors.
pub fn distance2_coloring(g: &Graph) -> Coloring {
    let mut colors = vec![0usize; g.n()];
    for v in g.vertices() {
        let mut used: Vec<usize> = g
            .ball2(v)
            .into_iter()
            .map(|w| colors[w - 1])
            .filter(|&c| c != 0)
            .collect();
        used.sort_unstable();
        used.dedup();
        colors[v - 1] = (1..).find(|c| used.binary_search(c).is_err()).unwrap();
    }
    Coloring::new(colors).expect("colors start at 1")
}

/// The triple `f_1 = u unless v = w`, `f_2 = v unless u = w`,
/// `f_3 = minority` on the vertices of `g`; `gamma` must be a distance-2
/// coloring for the triple to fit `Γ_{g,γ}`.
pub fn cohen_triple(g: &Graph, gamma: &Coloring) -> Result<Triple> {
    gamma.check_size(g)?;
    if !gamma.is_distance2(g) {
        return Err(invalid("coloring is not a distance-2 coloring"));
    }
    Triple::from_fn(g.n(), |u, v, w| {
        let f1 = if v != w { u } else { w };
        let f2 = if u != w { v } else { w };
        let f3 = if u == v && v != w {
            w
        } else if u == w && v != w {
            v
        } else if v == w && u != v {
            u
        } else {
            w
        };
        [f1, f2, f3]
    })
}

/// Extends a coloring and triple of `h` to `g`, where `h` is the subgraph
/// of `g` induced by `embedding` (`embedding[i]` is the vertex of `g` that
/// plays vertex `i + 1` of `h`). Every other vertex of `g` gets a fresh
/// color, numbered after the existing ones in vertex order.
pub fn extend_after_deletion(
    h: &Graph,
    coloring: &Coloring,
    triple: &Triple,
    g: &Graph,
    embedding: &[Vertex],
) -> Result<(Coloring, Triple)> {
    if embedding.len() != h.n() || coloring.n() != h.n() || triple.domain_size() != h.n() {
        return Err(invalid("embedding, coloring and triple must match h"));
    }
    let n = g.n();
    let mut inside = vec![0usize; n + 1];
    for (i, &v) in embedding.iter().enumerate() {
        if v == 0 || v > n || inside[v] != 0 {
            return Err(invalid(format!("embedding is not injective into 1..={n} at {v}")));
        }
        inside[v] = i + 1;
    }
    if g.induced(embedding) != *h {
        return Err(invalid("h is not the subgraph of g induced by the embedding"));
    }
    let mut next = coloring.k();
    let colors: Vec<usize> = (1..=n)
        .map(|v| match inside[v] {
            0 => {
                next += 1;
                next
            }
            x => coloring.color(x),
        })
        .collect();
    let f = Triple::from_fn(n, |u, v, w| {
        if inside[u] != 0 && inside[v] != 0 && inside[w] != 0 {
            triple
                .apply(inside[u], inside[v], inside[w])
                .map(|x| embedding[x - 1])
        } else if v != w {
            [u, v, w]
        } else {
            [w, v, u]
        }
    })?;
    Ok((Coloring::new(colors)?, f))
}

/// The symmetric majority operation over `1..=2k+1` that preserves the
/// odd-cycle list language: the median when all three arguments share a
/// parity, otherwise `2k + 3 - c` clamped into `[b, a]`, where `c` is the
/// argument of the odd parity out and `a >= b` the other two.
pub fn odd_cycle_majority(k: usize) -> Result<OperationTable> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    OperationTable::from_fn(2 * k + 1, |x, y, z| {
        if x == y || x == z {
            return x;
        }
        if y == z {
            return y;
        }
        let mut s = [x, y, z];
        s.sort_unstable();
        let parity = s.map(|v| v % 2);
        if parity[0] == parity[1] && parity[1] == parity[2] {
            return s[1];
        }
        let odd_out = (0..3).find(|&i| parity[i] != parity[(i + 1) % 3] && parity[i] != parity[(i + 2) % 3]).unwrap();
        let c = s[odd_out];
        let mut rest = s.iter().enumerate().filter(|&(i, _)| i != odd_out).map(|(_, &v)| v);
        let (b, a) = (rest.next().unwrap(), rest.next().unwrap());
        (2 * k + 3).saturating_sub(c).clamp(b, a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path, star};
    use crate::poly::verify_persistent_triple;
    use crate::vcsp::{crisp_language_of_coloring, odd_cycle_language};

    fn verified(g: &Graph, c: &Coloring, f: &Triple) -> bool {
        let lang = crisp_language_of_coloring(g, c).unwrap();
        verify_persistent_triple(&lang, f).unwrap().is_none()
    }

    #[test]
    fn track_examples() {
        let g = path(3);
        let c = Coloring::new(vec![1, 2, 1]).unwrap();
        let t = TrackLayout::new(&g, c.clone(), vec![1, 2, 3]).unwrap();
        let f = triple_from_track_layout(&g, &t).unwrap();
        assert_eq!(f.apply(1, 3, 3), [3, 1, 3]);
        assert!(verified(&g, &c, &f));

        let one = Graph::new(1);
        let f = triple_from_track_layout(&one, &TrackLayout::trivial(1)).unwrap();
        assert_eq!(f.apply(1, 1, 1), [1, 1, 1]);

        let c4 = cycle(4);
        let t = TrackLayout::unchecked(4, Coloring::new(vec![1, 2, 1, 2]).unwrap(), vec![1, 2, 3, 4]).unwrap();
        assert!(triple_from_track_layout(&c4, &t).is_err());
    }

    #[test]
    fn distance2_examples() {
        let c = distance2_coloring(&cycle(5));
        assert_eq!(c.num_used(), 5);
        assert_eq!(distance2_coloring(&Graph::new(4)).num_used(), 1);
        let s = star(3);
        let c = distance2_coloring(&s);
        assert!(c.num_used() <= 10 && c.is_distance2(&s));
    }

    #[test]
    fn cohen_examples() {
        let g = cycle(5);
        let c = distance2_coloring(&g);
        let f = cohen_triple(&g, &c).unwrap();
        assert_eq!(f.apply(1, 1, 2)[2], 2);
        assert_eq!(f.apply(2, 1, 1)[2], 2);
        assert_eq!(f.apply(1, 2, 3), [1, 2, 3]);
        assert!(verified(&g, &c, &f));
        assert!(cohen_triple(&path(3), &Coloring::new(vec![1, 2, 1]).unwrap()).is_err());
    }

    #[test]
    fn deletion_examples() {
        let h = path(3);
        let c = Coloring::new(vec![1, 2, 1]).unwrap();
        let t = TrackLayout::new(&h, c.clone(), vec![1, 2, 3]).unwrap();
        let f = triple_from_track_layout(&h, &t).unwrap();

        let (c0, f0) = extend_after_deletion(&h, &c, &f, &h, &[1, 2, 3]).unwrap();
        assert_eq!((c0, f0), (c.clone(), f.clone()));

        let mut g = path(3);
        g = crate::graph::generators::disjoint_union(&g, &Graph::new(1));
        let (c1, f1) = extend_after_deletion(&h, &c, &f, &g, &[1, 2, 3]).unwrap();
        assert_eq!(c1.num_used(), 3);
        assert!(verified(&g, &c1, &f1));

        let apex = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let (c2, f2) = extend_after_deletion(&h, &c, &f, &apex, &[1, 2, 3]).unwrap();
        assert_eq!(c2.color(4), 3);
        assert!(verified(&apex, &c2, &f2));

        let k3 = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(extend_after_deletion(&h, &c, &f, &k3, &[1, 2, 3]).is_err());
    }

    #[test]
    fn odd_cycle_majority_examples() {
        let f = odd_cycle_majority(4).unwrap();
        assert_eq!(f.get(3, 5, 7), 5);
        assert_eq!(f.get(5, 3, 2), 5);
        assert!(f.is_majority());
        for k in 1..=3 {
            let f = odd_cycle_majority(k).unwrap();
            let (lang, _) = odd_cycle_language(k);
            for r in lang.relations() {
                assert!(f.preserves(&r.pairs), "k={k} {}", r.name);
            }
        }
    }
}
