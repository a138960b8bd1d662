use super::{CostFunction, VcspInstance};
use crate::error::{invalid, Result};
use crate::graph::{Coloring, DiGraph, Vertex};
use crate::rational::ExtRational;

/// Minimum-cost homomorphism from `G` to `H` with arc-pair costs
/// `η((u, v), (a, b))`, stored densely over `A(G) × A(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValHomInstance {
    g: DiGraph,
    h: DiGraph,
    g_arcs: Vec<(Vertex, Vertex)>,
    h_arcs: Vec<(Vertex, Vertex)>,
    eta: Vec<ExtRational>,
}

impl ValHomInstance {
    pub fn new(
        g: DiGraph,
        h: DiGraph,
        mut eta: impl FnMut((Vertex, Vertex), (Vertex, Vertex)) -> ExtRational,
    ) -> Self {
        let g_arcs: Vec<_> = g.arcs().collect();
        let h_arcs: Vec<_> = h.arcs().collect();
        let mut table = Vec::with_capacity(g_arcs.len() * h_arcs.len());
        for &ga in &g_arcs {
            for &ha in &h_arcs {
                table.push(eta(ga, ha));
            }
        }
        ValHomInstance {
            g,
            h,
            g_arcs,
            h_arcs,
            eta: table,
        }
    }

    pub fn g(&self) -> &DiGraph {
        &self.g
    }

    pub fn h(&self) -> &DiGraph {
        &self.h
    }

    pub fn g_arcs(&self) -> &[(Vertex, Vertex)] {
        &self.g_arcs
    }

    pub fn h_arcs(&self) -> &[(Vertex, Vertex)] {
        &self.h_arcs
    }

    /// `|η|`, the number of table entries.
    pub fn table_size(&self) -> usize {
        self.eta.len()
    }

    /// `η(ga, ha)`, or `None` if either is not an arc.
    pub fn eta(&self, ga: (Vertex, Vertex), ha: (Vertex, Vertex)) -> Option<&ExtRational> {
        let i = self.g_arcs.binary_search(&ga).ok()?;
        let j = self.h_arcs.binary_search(&ha).ok()?;
        Some(&self.eta[i * self.h_arcs.len() + j])
    }

    pub fn set_eta(&mut self, ga: (Vertex, Vertex), ha: (Vertex, Vertex), value: ExtRational) -> Result<()> {
        let i = self
            .g_arcs
            .binary_search(&ga)
            .map_err(|_| invalid(format!("({}, {}) is not an arc of G", ga.0, ga.1)))?;
        let j = self
            .h_arcs
            .binary_search(&ha)
            .map_err(|_| invalid(format!("({}, {}) is not an arc of H", ha.0, ha.1)))?;
        self.eta[i * self.h_arcs.len() + j] = value;
        Ok(())
    }

    /// `cost(g)`; infinite when `map` is not a homomorphism. `map[v - 1]` is
    /// the image of `v`.
    pub fn cost(&self, map: &[Vertex]) -> ExtRational {
        let mut total = ExtRational::zero();
        for (i, &(u, v)) in self.g_arcs.iter().enumerate() {
            match self.h_arcs.binary_search(&(map[u - 1], map[v - 1])) {
                Ok(j) => total += &self.eta[i * self.h_arcs.len() + j],
                Err(_) => return ExtRational::Infinite,
            }
            if total.is_infinite() {
                break;
            }
        }
        total
    }
}

/// Drops the vertices of `G` incident to no arc. Returns the reduced
/// instance and the original name of each kept vertex.
pub fn strip_isolated(inst: &ValHomInstance) -> (ValHomInstance, Vec<Vertex>) {
    let isolated = inst.g.isolated();
    let kept: Vec<Vertex> = (1..=inst.g.n()).filter(|v| isolated.binary_search(v).is_err()).collect();
    let mut index = vec![0; inst.g.n() + 1];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i + 1;
    }
    let mut g = DiGraph::new(kept.len());
    for (u, v) in inst.g.arcs() {
        g.add_arc(index[u], index[v]).expect("renumbered arc");
    }
    // Renumbering is monotone, so arc order and the table layout survive.
    let reduced = ValHomInstance {
        g,
        h: inst.h.clone(),
        g_arcs: inst.g_arcs.iter().map(|&(u, v)| (index[u], index[v])).collect(),
        h_arcs: inst.h_arcs.clone(),
        eta: inst.eta.clone(),
    };
    (reduced, kept)
}

/// The VCSP whose feasible assignments are the finite-cost homomorphisms
/// compliant with `(gamma_g, gamma_h)`: variable `v - 1` per vertex `v` of
/// `G`, value `u - 1` per vertex `u` of `H`, one binary term per arc.
pub fn valhom_to_vcsp(inst: &ValHomInstance, gamma_g: &[usize], gamma_h: &Coloring) -> Result<VcspInstance> {
    let (n, h) = (inst.g.n(), inst.h.n());
    if gamma_g.len() != n {
        return Err(invalid("gamma_G must color every vertex of G"));
    }
    let hu = inst.h.underlying();
    gamma_h.check_size(&hu)?;
    if let Some((u, v)) = gamma_h.monochromatic_edge(&hu) {
        return Err(invalid(format!("gamma_H is not proper: edge {u} {v}")));
    }
    if let Some(&v) = inst.g.isolated().first() {
        return Err(invalid(format!("vertex {v} of G is isolated")));
    }
    let mut out = VcspInstance::new(h, n);
    let width = inst.h_arcs.len();
    for (i, &(vi, vj)) in inst.g_arcs.iter().enumerate() {
        let want = (gamma_g[vi - 1], gamma_g[vj - 1]);
        let mut table = vec![ExtRational::Infinite; h * h];
        for (j, &(u, w)) in inst.h_arcs.iter().enumerate() {
            if (gamma_h.color(u), gamma_h.color(w)) == want {
                table[(u - 1) * h + (w - 1)] = inst.eta[i * width + j].clone();
            }
        }
        out.add_term(vec![vi - 1, vj - 1], CostFunction::new(h, 2, table)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vcsp::brute_force_opt;

    fn arc() -> DiGraph {
        DiGraph::from_arcs(2, &[(1, 2)]).unwrap()
    }

    #[test]
    fn single_arc_examples() {
        let inst = ValHomInstance::new(arc(), arc(), |_, _| ExtRational::from_integer(3));
        let gh = Coloring::new(vec![1, 2]).unwrap();
        let v = valhom_to_vcsp(&inst, &[1, 2], &gh).unwrap();
        let (opt, arg) = brute_force_opt(&v, 100).unwrap();
        assert_eq!(opt, ExtRational::from_integer(3));
        assert_eq!(arg, vec![0, 1]);
        let feasible = (0..4).filter(|i| v.cost(&[i / 2, i % 2]).is_finite()).count();
        assert_eq!(feasible, 1);

        let v = valhom_to_vcsp(&inst, &[1, 1], &gh).unwrap();
        assert_eq!(brute_force_opt(&v, 100).unwrap().0, ExtRational::Infinite);
        assert!(valhom_to_vcsp(&inst, &[1, 2], &Coloring::constant(2)).is_err());
    }

    #[test]
    fn directed_triangle_pullback() {
        let c3 = DiGraph::from_arcs(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let inst = ValHomInstance::new(c3.clone(), c3, |_, _| ExtRational::zero());
        let gh = Coloring::new(vec![1, 2, 3]).unwrap();
        let v = valhom_to_vcsp(&inst, &[1, 2, 3], &gh).unwrap();
        assert_eq!(brute_force_opt(&v, 100).unwrap().0, ExtRational::zero());
    }

    #[test]
    fn stripping() {
        let g = DiGraph::from_arcs(4, &[(2, 4)]).unwrap();
        let inst = ValHomInstance::new(g, arc(), |_, _| ExtRational::from_integer(5));
        let (r, kept) = strip_isolated(&inst);
        assert_eq!(kept, vec![2, 4]);
        assert_eq!(r.g_arcs(), &[(1, 2)]);
        assert_eq!(r.eta((1, 2), (1, 2)), Some(&ExtRational::from_integer(5)));
        assert!(valhom_to_vcsp(&inst, &[1; 4], &Coloring::new(vec![1, 2]).unwrap()).is_err());
    }
}
