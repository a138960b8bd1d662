use crate::error::{invalid, Result};
use crate::graph::{generators, Coloring, Graph};

/// A named binary relation over the domain `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    /// Sorted, without duplicates.
    pub pairs: Vec<(usize, usize)>,
}

/// A finite set of binary relations over `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispLanguage {
    d: usize,
    relations: Vec<Relation>,
}

impl CrispLanguage {
    pub fn new(d: usize) -> Self {
        CrispLanguage {
            d,
            relations: Vec::new(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.d
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn add_relation(&mut self, name: impl Into<String>, mut pairs: Vec<(usize, usize)>) -> Result<()> {
        let name = name.into();
        if self.relation(&name).is_some() {
            return Err(invalid(format!("relation `{name}` defined twice")));
        }
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|&&(a, b)| a == 0 || b == 0 || a > self.d || b > self.d)
        {
            return Err(invalid(format!("pair ({a}, {b}) outside domain 1..={}", self.d)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        self.relations.push(Relation { name, pairs });
        Ok(())
    }

    /// Whether every relation of `self` is contained in some relation of
    /// `other`.
    pub fn is_below(&self, other: &CrispLanguage) -> bool {
        self.relations.iter().all(|r| {
            other
                .relations
                .iter()
                .any(|s| r.pairs.iter().all(|p| s.pairs.binary_search(p).is_ok()))
        })
    }
}

/// `R_ij = {(u, v) : γ(u) = i, γ(v) = j, uv ∈ E(G)}` for all `i, j` in
/// `1..=k`, empty relations included. Relation names are `R_i_j`.
pub fn crisp_language_of_coloring(g: &Graph, gamma: &Coloring) -> Result<CrispLanguage> {
    gamma.check_size(g)?;
    if let Some((u, v)) = gamma.monochromatic_edge(g) {
        return Err(invalid(format!("coloring is not proper: edge {u} {v}")));
    }
    let k = gamma.k();
    let mut buckets = vec![Vec::new(); k * k];
    for (u, v) in g.edges() {
        let (cu, cv) = (gamma.color(u), gamma.color(v));
        buckets[(cu - 1) * k + cv - 1].push((u, v));
        buckets[(cv - 1) * k + cu - 1].push((v, u));
    }
    let mut lang = CrispLanguage::new(g.n());
    for (idx, pairs) in buckets.into_iter().enumerate() {
        lang.add_relation(format!("R_{}_{}", idx / k + 1, idx % k + 1), pairs)?;
    }
    Ok(lang)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OddSet {
    /// All vertices above 1.
    S,
    /// Odd vertices.
    A,
    /// Even vertices and 1.
    B,
}

impl OddSet {
    pub const ALL: [OddSet; 3] = [OddSet::S, OddSet::A, OddSet::B];

    pub fn label(self) -> &'static str {
        match self {
            OddSet::S => "S",
            OddSet::A => "A",
            OddSet::B => "B",
        }
    }
}

/// The list family `{S_k, S_k^A, S_k^B}` over the cycle `C_{2k+1}` on
/// `1..=2k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddCycleFamily {
    k: usize,
}

impl OddCycleFamily {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        OddCycleFamily { k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cycle length `2k + 1`.
    pub fn len(&self) -> usize {
        2 * self.k + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cycle(&self) -> Graph {
        generators::cycle(self.len())
    }

    pub fn contains(&self, set: OddSet, v: usize) -> bool {
        match set {
            OddSet::S => v > 1,
            OddSet::A => !v.is_multiple_of(2),
            OddSet::B => v.is_multiple_of(2) || v == 1,
        }
    }

    pub fn members(&self, set: OddSet) -> Vec<usize> {
        (1..=self.len()).filter(|&v| self.contains(set, v)).collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let n = self.len();
        u.abs_diff(v) == 1 || (u.min(v) == 1 && u.max(v) == n)
    }

    /// The six relations `R_{U1 U2}` for unordered pairs of sets.
    /// The three remaining ordered pairs give inverse relations.
    pub fn relation_pairs() -> [(OddSet, OddSet); 6] {
        use OddSet::*;
        [(S, S), (S, A), (S, B), (A, A), (A, B), (B, B)]
    }

    pub fn relation(&self, u1: OddSet, u2: OddSet) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 1..=n {
            for v in 1..=n {
                if self.contains(u1, u) && self.contains(u2, v) && self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// The crisp language of the odd-cycle family, relations named `R_U1_U2`.
pub fn odd_cycle_language(k: usize) -> (CrispLanguage, OddCycleFamily) {
    let fam = OddCycleFamily::new(k);
    let mut lang = CrispLanguage::new(fam.len());
    for (a, b) in OddCycleFamily::relation_pairs() {
        lang.add_relation(format!("R_{}_{}", a.label(), b.label()), fam.relation(a, b))
            .expect("pairs are in range");
    }
    (lang, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::path;

    #[test]
    fn coloring_language_examples() {
        let g = path(2);
        let lang = crisp_language_of_coloring(&g, &Coloring::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(lang.relation("R_1_2").unwrap().pairs, vec![(1, 2)]);
        assert_eq!(lang.relation("R_2_1").unwrap().pairs, vec![(2, 1)]);
        assert!(lang.relation("R_1_1").unwrap().pairs.is_empty());
        assert!(lang.relation("R_2_2").unwrap().pairs.is_empty());

        let p3 = path(3);
        let lang = crisp_language_of_coloring(&p3, &Coloring::new(vec![1, 2, 1]).unwrap()).unwrap();
        assert_eq!(lang.relation("R_1_2").unwrap().pairs, vec![(1, 2), (3, 2)]);
        assert_eq!(lang.relation("R_2_1").unwrap().pairs, vec![(2, 1), (2, 3)]);

        assert!(crisp_language_of_coloring(&p3, &Coloring::constant(3)).is_err());
    }

    #[test]
    fn family_sets() {
        let f = OddCycleFamily::new(4);
        assert_eq!(f.members(OddSet::S), (2..=9).collect::<Vec<_>>());
        assert_eq!(f.members(OddSet::A), vec![1, 3, 5, 7, 9]);
        assert_eq!(f.members(OddSet::B), vec![1, 2, 4, 6, 8]);
        let f = OddCycleFamily::new(1);
        assert_eq!(f.members(OddSet::S), vec![2, 3]);
        assert_eq!(f.members(OddSet::A), vec![1, 3]);
        assert_eq!(f.members(OddSet::B), vec![1, 2]);
        let (lang, _) = odd_cycle_language(1);
        let aa = &lang.relation("R_A_A").unwrap().pairs;
        assert!(aa.contains(&(1, 3)) && aa.contains(&(3, 1)));
        assert_eq!(lang.relations().len(), 6);
    }

    #[test]
    fn bad_triples_match_characterisation() {
        for k in 1..=8 {
            let f = OddCycleFamily::new(k);
            let n = f.len();
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        let t = [a, b, c];
                        let bad = !OddSet::ALL
                            .iter()
                            .any(|&s| t.iter().all(|&v| f.contains(s, v)));
                        let mut rest: Vec<usize> = t.iter().copied().filter(|&v| v > 1).collect();
                        rest.sort_unstable();
                        rest.dedup();
                        let shape = t.contains(&1)
                            && rest.len() == 2
                            && rest.iter().filter(|&&v| v % 2 == 0).count() == 1;
                        assert_eq!(bad, shape, "k={k} {t:?}");
                    }
                }
            }
        }
    }
}
