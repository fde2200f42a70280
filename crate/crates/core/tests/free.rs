//! Free multicategories over the identity monad are path categories.

use std::collections::BTreeMap;

use multicat::free::{free_cod, free_dom, free_enumerate, free_multicat, graft, ident};
use multicat::{Element, FiniteMap, FiniteSet, Monad, MonadPlugin, TSpan};
use proptest::prelude::*;

/// A directed graph on `n` vertices from an edge list.
fn digraph(n: usize, edges: &[(usize, usize)]) -> TSpan {
    let v = |i: usize| Element::atom(format!("v{i}"));
    let objects = FiniteSet::new((0..n).map(v));
    let names: Vec<Element> = (0..edges.len()).map(|i| Element::atom(format!("e{i}"))).collect();
    let dom: BTreeMap<Element, Element> = names.iter().zip(edges).map(|(e, &(s, _))| (e.clone(), v(s))).collect();
    let apex = FiniteSet::new(names.iter().cloned());
    let cod = FiniteMap::from_pairs(apex, objects.clone(), names.iter().zip(edges).map(|(e, &(_, t))| (e.clone(), v(t)))).unwrap();
    TSpan::new(Monad::Identity, objects, dom, cod).unwrap()
}

/// Paths of length at most `k`, counted by powers of the adjacency matrix.
fn paths(n: usize, edges: &[(usize, usize)], k: usize) -> usize {
    let mut walk = vec![vec![0usize; n]; n];
    for (i, row) in walk.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut total = n;
    for _ in 0..k {
        let mut next = vec![vec![0usize; n]; n];
        for (i, row) in walk.iter().enumerate() {
            for &(s, t) in edges {
                next[i][t] += row[s];
            }
        }
        total += next.iter().flatten().sum::<usize>();
        walk = next;
    }
    total
}

fn graphs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=3usize).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_arrows_are_paths((n, edges) in graphs(), k in 0..=3usize) {
        let g = digraph(n, &edges);
        prop_assert_eq!(free_enumerate(&g, k, None).unwrap().len(), paths(n, &edges, k));
    }

    #[test]
    fn fragments_satisfy_the_axioms((n, edges) in graphs()) {
        let m = free_multicat(&digraph(n, &edges), 2, None).unwrap();
        prop_assert!(m.check_axioms().unwrap().passed());
    }
}

#[test]
fn empty_graph_has_only_identities() {
    let g = digraph(3, &[]);
    let arrows = free_enumerate(&g, 4, None).unwrap();
    assert_eq!(arrows, g.source.iter().map(|s| ident(s.clone())).collect::<Vec<_>>());
}

#[test]
fn grafting_identities_changes_nothing() {
    let g = digraph(2, &[(0, 1), (1, 1)]);
    for t in free_enumerate(&g, 3, None).unwrap() {
        let dom = free_dom(&g, &t).unwrap();
        let ids = g.plugin.relabel(&dom, &mut |s| Ok(ident(s.clone()))).unwrap();
        assert_eq!(graft(&g, &t, &ids).unwrap(), t);
        let cod = free_cod(&g, &t).unwrap();
        assert_eq!(graft(&g, &ident(cod), &g.plugin.unit(&t)).unwrap(), t);
    }
}
