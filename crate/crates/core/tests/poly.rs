mod common;

use common::{corpus, naive_verify, rng, some_track_layout};
use homlab_core::graph::Coloring;
use homlab_core::poly::{
    cohen_triple, distance2_coloring, is_persistent_triple, search_triple, triple_from_track_layout, SearchOutcome,
    Triple,
};
use homlab_core::vcsp::{crisp_language_of_coloring, CrispLanguage};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_language(r: &mut ChaCha8Rng, d: usize) -> CrispLanguage {
    let mut lang = CrispLanguage::new(d);
    for i in 0..r.random_range(1..=3) {
        let pairs: Vec<(usize, usize)> = (1..=d)
            .flat_map(|a| (1..=d).map(move |b| (a, b)))
            .filter(|_| r.random_bool(0.35))
            .collect();
        lang.add_relation(format!("R{i}"), pairs).unwrap();
    }
    lang
}

/// Every triple over `{1, 2}` with `f_1` majority and each `F(a, b, c)` a
/// rearrangement: constant arguments are forced, and each of the six
/// others has two admissible outputs, giving 64 candidates.
fn all_two_element_candidates() -> Vec<Triple> {
    let free: Vec<[usize; 3]> = (1..=2)
        .flat_map(|a| (1..=2).flat_map(move |b| (1..=2).map(move |c| [a, b, c])))
        .filter(|t| !(t[0] == t[1] && t[1] == t[2]))
        .collect();
    (0..1u32 << free.len())
        .map(|mask| {
            Triple::from_fn(2, |a, b, c| {
                let t = [a, b, c];
                let Some(i) = free.iter().position(|&f| f == t) else {
                    return t;
                };
                let maj = if a == b || a == c { a } else { b };
                let other = 3 - maj;
                if mask & (1 << i) == 0 {
                    [maj, maj, other]
                } else {
                    [maj, other, maj]
                }
            })
            .unwrap()
        })
        .collect()
}

#[test]
fn search_agrees_with_raw_enumeration_on_two_values() {
    let candidates = all_two_element_candidates();
    assert_eq!(candidates.len(), 64);
    let mut r = rng(31);
    let mut found = 0;
    for _ in 0..200 {
        let lang = random_language(&mut r, 2);
        let exists = candidates.iter().any(|f| naive_verify(&lang, f));
        let out = search_triple(&lang, 1_000_000).unwrap();
        match out {
            SearchOutcome::Found { triple, .. } => {
                assert!(exists);
                assert!(naive_verify(&lang, &triple));
                found += 1;
            }
            SearchOutcome::NoTriple { .. } => assert!(!exists, "{lang:?}"),
        }
    }
    assert!(found > 0 && found < 200);
}

fn random_triple(r: &mut ChaCha8Rng, d: usize, structured: bool) -> Triple {
    Triple::from_fn(d, |a, b, c| {
        if !structured {
            return [0; 3].map(|_| r.random_range(1..=d));
        }
        let mut t = [a, b, c];
        t.shuffle(r);
        if a == b || a == c {
            t = if t[0] == a { t } else { [a, b + c - a, a] };
        } else if b == c {
            t = if t[0] == b { t } else { [b, a, b] };
        }
        t
    })
    .unwrap()
}

#[test]
fn verifier_agrees_with_naive_check() {
    let mut r = rng(32);
    let (mut valid, mut invalid) = (0, 0);
    for i in 0..400 {
        let d = r.random_range(1..=5);
        let lang = random_language(&mut r, d);
        let f = if i % 4 == 0 {
            let order: Vec<usize> = (1..=d).collect();
            Triple::from_fn(d, |a, b, c| {
                let mut s = [a, b, c];
                s.sort_by_key(|v| order[v - 1]);
                [s[1], s[0], s[2]]
            })
            .unwrap()
        } else {
            random_triple(&mut r, d, i % 4 != 1)
        };
        let lib = is_persistent_triple(&lang, &f).unwrap();
        assert_eq!(lib, naive_verify(&lang, &f), "case {i}");
        if lib {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid > 0 && invalid > 0);
}

#[test]
fn search_finds_triples_for_track_layouts() {
    for (name, g) in corpus(33).into_iter().filter(|(_, g)| g.n() <= 8) {
        let t = some_track_layout(&g);
        let lang = crisp_language_of_coloring(&g, t.coloring()).unwrap();
        let out = search_triple(&lang, 10_000_000).unwrap();
        let f = out.triple().unwrap_or_else(|| panic!("{name}: none found"));
        assert!(naive_verify(&lang, f), "{name}");
    }
}

/// A triple verified for a colored graph stays verified after deleting
/// edges, and also respects the equality relation.
#[test]
fn verified_triples_survive_subgraphs_and_equality() {
    let mut r = rng(34);
    for (name, g) in corpus(34) {
        let gamma = distance2_coloring(&g);
        let f = cohen_triple(&g, &gamma).unwrap();
        let edges = g.edges();
        let kept: Vec<_> = edges.into_iter().filter(|_| r.random_bool(0.6)).collect();
        let h = homlab_core::graph::Graph::from_edges(g.n(), &kept).unwrap();
        let lang = crisp_language_of_coloring(&h, &gamma).unwrap();
        assert!(naive_verify(&lang, &f), "{name}");

        let t = some_track_layout(&g);
        let f = triple_from_track_layout(&g, &t).unwrap();
        let mut lang = crisp_language_of_coloring(&g, t.coloring()).unwrap();
        lang.add_relation("EQ", g.vertices().map(|v| (v, v)).collect()).unwrap();
        assert!(naive_verify(&lang, &f), "{name}");
    }
}

#[test]
fn proper_two_coloring_of_even_cycle_fails_verification() {
    let g = homlab_core::graph::generators::cycle(4);
    let gamma = Coloring::new(vec![1, 2, 1, 2]).unwrap();
    let lang = crisp_language_of_coloring(&g, &gamma).unwrap();
    assert!(search_triple(&lang, 1_000_000).unwrap().triple().is_none());
}
