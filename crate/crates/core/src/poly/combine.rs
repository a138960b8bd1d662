use std::collections::HashMap;

use super::{CoordinatePermutation, Triple};
use crate::error::{invalid, Result};
use crate::graph::{is_shadow_complete, Coloring, Graph, Layering, Vertex};
use crate::poly::verify_persistent_triple;
use crate::vcsp::crisp_language_of_coloring;

/// A coloring and triple for one component `X` of a layer, over the local
/// domain `1..=|X|` where local vertex `i` is `vertices[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTriple {
    pub vertices: Vec<Vertex>,
    pub coloring: Coloring,
    pub triple: Triple,
}

/// Runs `f` on the induced subgraph of every component of every layer,
/// layer by layer.
pub fn local_triples(
    g: &Graph,
    l: &Layering,
    mut f: impl FnMut(&Graph) -> Result<(Coloring, Triple)>,
) -> Result<Vec<ComponentTriple>> {
    let mut out = Vec::new();
    for layer in l.layers() {
        for vertices in g.components_within(layer) {
            let (coloring, triple) = f(&g.induced(&vertices))?;
            out.push(ComponentTriple {
                vertices,
                coloring,
                triple,
            });
        }
    }
    Ok(out)
}

fn monochromatic(gamma: &Coloring, t: [Vertex; 3]) -> bool {
    let c = gamma.color(t[0]);
    gamma.color(t[1]) == c && gamma.color(t[2]) == c
}

/// All coordinate permutations that agree with `f` on every
/// `γ`-monochromatic triple of `k1 × k2 × k3`, identity first.
fn consistent_permutations(
    gamma: &Coloring,
    mut f: impl FnMut([Vertex; 3]) -> [Vertex; 3],
    sets: [&[Vertex]; 3],
) -> Vec<CoordinatePermutation> {
    let mut ok = [true; 6];
    for &a in sets[0] {
        for &b in sets[1] {
            for &c in sets[2] {
                let t = [a, b, c];
                if !monochromatic(gamma, t) {
                    continue;
                }
                let out = f(t);
                for (flag, p) in ok.iter_mut().zip(CoordinatePermutation::ALL) {
                    *flag &= p.apply(t) == out;
                }
            }
        }
    }
    CoordinatePermutation::ALL
        .into_iter()
        .zip(ok)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect()
}

/// The first coordinate permutation `π` with `F(t) = π(t)` for every
/// `γ`-monochromatic `t` in `k1 × k2 × k3`.
pub fn clique_permutation(
    g: &Graph,
    gamma: &Coloring,
    f: &Triple,
    sets: [&[Vertex]; 3],
) -> Result<CoordinatePermutation> {
    gamma.check_size(g)?;
    if f.domain_size() != g.n() {
        return Err(invalid("triple does not match graph"));
    }
    if sets.iter().flat_map(|s| s.iter()).any(|&v| v == 0 || v > g.n()) {
        return Err(invalid("vertex out of range"));
    }
    if let Some(s) = sets.iter().find(|s| !g.is_clique(s)) {
        return Err(invalid(format!("{s:?} is not a clique")));
    }
    consistent_permutations(gamma, |[a, b, c]| f.apply(a, b, c), sets)
        .first()
        .copied()
        .ok_or_else(|| invalid("no coordinate permutation agrees with the triple on these sets"))
}

fn majority_ok(t: [Vertex; 3], out: [Vertex; 3]) -> bool {
    let m = if t[0] == t[1] || t[0] == t[2] {
        t[0]
    } else if t[1] == t[2] {
        t[1]
    } else {
        return true;
    };
    out[0] == m
}

/// Glues per-component triples along a shadow-complete layering of a
/// connected graph into a coloring and persistent majority triple for `g`.
///
/// `components` must hold one entry per component of every layer. If each
/// local coloring uses at most `c` colors and shadows have at most `s`
/// vertices, the result uses at most `3 (c + 1)^(s + 1)` colors.
pub fn shadow_combine(
    g: &Graph,
    l: &Layering,
    components: &[ComponentTriple],
) -> Result<(Coloring, Triple)> {
    let n = g.n();
    let report = is_shadow_complete(g, l)?;
    if let Some(s) = report.violation {
        return Err(invalid(format!(
            "layering is not shadow-complete: shadow {:?} of layer {} is not a clique",
            s.shadow, s.layer
        )));
    }
    if n == 0 || !g.is_connected() {
        return Err(invalid("graph must be connected and non-empty"));
    }
    if l.is_empty() || l.layer(0).is_empty() {
        return Err(invalid("first layer is empty"));
    }

    // comp_of[v - 1] = (component index, local index)
    let mut comp_of = vec![(usize::MAX, 0usize); n];
    for (ci, ct) in components.iter().enumerate() {
        let k = ct.vertices.len();
        if ct.coloring.n() != k || ct.triple.domain_size() != k {
            return Err(invalid(format!("component {ci}: coloring or triple has wrong size")));
        }
        for (i, &v) in ct.vertices.iter().enumerate() {
            if v == 0 || v > n || comp_of[v - 1].0 != usize::MAX {
                return Err(invalid(format!("component {ci}: vertex {v} out of range or repeated")));
            }
            comp_of[v - 1] = (ci, i + 1);
        }
    }
    for (i, layer) in l.layers().iter().enumerate() {
        for comp in g.components_within(layer) {
            let ci = comp_of[comp[0] - 1].0;
            if ci == usize::MAX || components[ci].vertices.len() != comp.len() || comp.iter().any(|&v| comp_of[v - 1].0 != ci) {
                return Err(invalid(format!("layer {i}: no data for component {comp:?}")));
            }
            if !components[ci].coloring.is_proper(&g.induced(&components[ci].vertices)) {
                return Err(invalid(format!("layer {i}: local coloring of {comp:?} is not proper")));
            }
        }
    }

    // κ(v): the shadow of v's layer component, as an interned id.
    let mut kappa_ids: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut kappas: Vec<Vec<Vertex>> = Vec::new();
    let mut kappa = vec![0usize; n];
    for ct in components {
        let i = l.layer_of(ct.vertices[0]);
        let shadow = if i == 0 { Vec::new() } else { l.shadow_of(g, i, &ct.vertices) };
        let next = kappas.len();
        let id = *kappa_ids.entry(shadow.clone()).or_insert(next);
        if id == next {
            kappas.push(shadow);
        }
        for &v in &ct.vertices {
            kappa[v - 1] = id;
        }
    }
    let local_color = |v: Vertex| {
        let (ci, li) = comp_of[v - 1];
        components[ci].coloring.color(li)
    };
    let keys: Vec<(usize, usize, Vec<usize>)> = (1..=n)
        .map(|v| {
            let mut sig: Vec<usize> = kappas[kappa[v - 1]].iter().map(|&w| local_color(w)).collect();
            sig.sort_unstable();
            sig.dedup();
            (local_color(v), l.layer_of(v) % 3, sig)
        })
        .collect();
    let gamma = Coloring::from_keys(&keys);

    const UNSET: u8 = u8::MAX;
    let idx = |t: [Vertex; 3]| ((t[0] - 1) * n + t[1] - 1) * n + t[2] - 1;
    let mut perm = vec![UNSET; n * n * n];
    let swap13 = 5u8;
    for u in 1..=n {
        for v in 1..=n {
            for w in 1..=n {
                let t = [u, v, w];
                if !monochromatic(&gamma, t) {
                    perm[idx(t)] = if v != w { 0 } else { swap13 };
                }
            }
        }
    }

    let mut mono: Vec<(usize, [Vertex; 3])> = Vec::new();
    for class in gamma.classes() {
        for &u in &class {
            for &v in &class {
                for &w in &class {
                    let layer = l.layer_of(u).max(l.layer_of(v)).max(l.layer_of(w));
                    mono.push((layer, [u, v, w]));
                }
            }
        }
    }
    mono.sort_unstable();

    let mut cache: HashMap<[usize; 3], Vec<CoordinatePermutation>> = HashMap::new();
    for (_, t) in mono {
        let ks = t.map(|v| kappa[v - 1]);
        let cs = t.map(|v| comp_of[v - 1]);
        let p = if ks[0] != ks[1] || ks[1] != ks[2] {
            let candidates = cache.entry(ks).or_insert_with(|| {
                consistent_permutations(
                    &gamma,
                    |s| {
                        let p = perm[idx(s)];
                        debug_assert!(p != UNSET);
                        CoordinatePermutation::ALL[p as usize].apply(s)
                    },
                    ks.map(|k| kappas[k].as_slice()),
                )
            });
            let chosen = candidates.iter().position(|p| majority_ok(t, p.apply(t)));
            let Some(j) = chosen else {
                return Err(invalid(format!("no coordinate permutation fits the shadows of {t:?}")));
            };
            let p = candidates[j];
            CoordinatePermutation::ALL.iter().position(|&q| q == p).unwrap()
        } else if cs[0].0 == cs[1].0 && cs[1].0 == cs[2].0 {
            let ct = &components[cs[0].0];
            let out = ct.triple.apply(cs[0].1, cs[1].1, cs[2].1).map(|x| ct.vertices[x - 1]);
            match CoordinatePermutation::ALL.iter().position(|p| p.apply(t) == out) {
                Some(j) => j,
                None => return Err(invalid(format!("local triple of component {} is not a rearrangement", cs[0].0))),
            }
        } else if cs[1].0 == cs[2].0 && cs[0].0 != cs[1].0 {
            swap13 as usize
        } else {
            0
        };
        perm[idx(t)] = p as u8;
    }

    let f = Triple::from_fn(n, |a, b, c| {
        let t = [a, b, c];
        CoordinatePermutation::ALL[perm[idx(t)] as usize].apply(t)
    })?;
    let lang = crisp_language_of_coloring(g, &gamma)?;
    if let Some(v) = verify_persistent_triple(&lang, &f)? {
        return Err(invalid(format!("combined triple fails verification: {v}")));
    }
    Ok((gamma, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path, with_pendants};
    use crate::graph::{bfs_layering, TrackLayout};
    use crate::poly::triple_from_track_layout;

    fn path_triples(g: &Graph, l: &Layering) -> Vec<ComponentTriple> {
        local_triples(g, l, |h| {
            let t = TrackLayout::trivial(h.n());
            let t = if h.m() == 0 {
                t
            } else {
                let order: Vec<Vertex> = h.vertices().collect();
                let c = Coloring::new(order.iter().map(|&v| 1 + (v % 2)).collect())?;
                TrackLayout::new(h, c, order)?
            };
            Ok((t.coloring().clone(), triple_from_track_layout(h, &t)?))
        })
        .unwrap()
    }

    #[test]
    fn tree_layers() {
        let g = with_pendants(&path(5), &[1, 3, 5]);
        let l = bfs_layering(&g, 3).unwrap();
        let parts = path_triples(&g, &l);
        let (gamma, f) = shadow_combine(&g, &l, &parts).unwrap();
        assert!(gamma.is_proper(&g));
        let lang = crisp_language_of_coloring(&g, &gamma).unwrap();
        assert!(verify_persistent_triple(&lang, &f).unwrap().is_none());
    }

    #[test]
    fn odd_cycle_layers() {
        let mut g = cycle(7);
        g.add_edge(2, 7).unwrap();
        g.add_edge(3, 6).unwrap();
        let l = bfs_layering(&g, 1).unwrap();
        assert!(is_shadow_complete(&g, &l).unwrap().complete);
        let parts = path_triples(&g, &l);
        let (gamma, _) = shadow_combine(&g, &l, &parts).unwrap();
        assert!(gamma.k() <= 3 * 3usize.pow(2));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = cycle(4);
        let l = bfs_layering(&g, 1).unwrap();
        let parts = path_triples(&g, &l);
        assert!(shadow_combine(&g, &l, &parts).is_err());

        let g = path(3);
        let l = bfs_layering(&g, 1).unwrap();
        let mut parts = path_triples(&g, &l);
        parts.pop();
        assert!(shadow_combine(&g, &l, &parts).is_err());
    }

    #[test]
    fn clique_permutation_on_identity() {
        let g = path(3);
        let gamma = Coloring::new(vec![1, 2, 1]).unwrap();
        let f = Triple::from_fn(3, |a, b, c| [a, b, c]).unwrap();
        let p = clique_permutation(&g, &gamma, &f, [&[1], &[3], &[3]]).unwrap();
        assert_eq!(p, CoordinatePermutation::IDENTITY);
        let f = Triple::from_fn(3, |a, b, c| [a, c, b]).unwrap();
        let p = clique_permutation(&g, &gamma, &f, [&[1], &[3], &[1]]).unwrap();
        assert_eq!(p.sigma(), [1, 3, 2]);
    }
}
