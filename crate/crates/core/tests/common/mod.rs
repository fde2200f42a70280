//! Fixtures and independent oracles shared by the integration tests. Nothing
//! here calls into the crate's checkers: each oracle recomputes its answer
//! from plain tables.
#![allow(dead_code)]

use std::collections::BTreeMap;

use multicat::multicat::standard::FiniteCategory;
use multicat::{Element, FiniteMap, FiniteSet, Monad, MonadPlugin, TSpan};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Categories as bare tables

/// Objects `0..n`, arrows by index with `(dom, cod)`, `comp[(g, f)] = g∘f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCat {
    pub objects: usize,
    pub arrows: Vec<(usize, usize)>,
    pub ids: Vec<usize>,
    pub comp: BTreeMap<(usize, usize), usize>,
}

impl RawCat {
    pub fn to_finite(&self) -> multicat::Result<FiniteCategory> {
        let o = |i: usize| Element::atom(format!("o{i}"));
        let a = |i: usize| Element::atom(format!("a{i}"));
        FiniteCategory::new(
            FiniteSet::new((0..self.objects).map(o)),
            self.arrows.iter().enumerate().map(|(i, &(d, c))| (a(i), (o(d), o(c)))).collect(),
            self.ids.iter().enumerate().map(|(s, &i)| (o(s), a(i))).collect(),
            self.comp.iter().map(|(&(g, f), &h)| ((a(g), a(f)), a(h))).collect(),
        )
    }
}

/// The category axioms, checked straight from the tables.
pub fn is_category(c: &RawCat) -> bool {
    let n = c.arrows.len();
    if c.ids.len() != c.objects || c.arrows.iter().any(|&(d, k)| d >= c.objects || k >= c.objects) {
        return false;
    }
    if c.ids.iter().enumerate().any(|(s, &i)| i >= n || c.arrows[i] != (s, s)) {
        return false;
    }
    let composable = |g: usize, f: usize| c.arrows[f].1 == c.arrows[g].0;
    let expected = (0..n).flat_map(|g| (0..n).map(move |f| (g, f))).filter(|&(g, f)| composable(g, f)).count();
    if expected != c.comp.len() {
        return false;
    }
    for (&(g, f), &h) in &c.comp {
        if !composable(g, f) || h >= n || c.arrows[h] != (c.arrows[f].0, c.arrows[g].1) {
            return false;
        }
    }
    for f in 0..n {
        let (d, k) = c.arrows[f];
        if c.comp[&(f, c.ids[d])] != f || c.comp[&(c.ids[k], f)] != f {
            return false;
        }
    }
    for h in 0..n {
        for g in 0..n {
            for f in 0..n {
                if composable(h, g) && composable(g, f) && c.comp[&(h, c.comp[&(g, f)])] != c.comp[&(c.comp[&(h, g)], f)] {
                    return false;
                }
            }
        }
    }
    true
}

/// A preorder as a thin category.
fn thin(n: usize, le: &[(usize, usize)]) -> RawCat {
    let arrows: Vec<(usize, usize)> = le.to_vec();
    let index = |p: (usize, usize)| arrows.iter().position(|&q| q == p).unwrap();
    let ids = (0..n).map(|s| index((s, s))).collect();
    let mut comp = BTreeMap::new();
    for (g, &(b, c)) in arrows.iter().enumerate() {
        for (f, &(a, b2)) in arrows.iter().enumerate() {
            if b == b2 {
                comp.insert((g, f), index((a, c)));
            }
        }
    }
    RawCat { objects: n, arrows, ids, comp }
}

/// Every associative table on `0..n` with `0` as two-sided unit.
pub fn monoid_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect()).collect();
        let mut c = code;
        for &(a, b) in &free {
            t[a][b] = c % n;
            c /= n;
        }
        if (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[t[a][b]][d] == t[a][t[b][d]]))) {
            out.push(t);
        }
    }
    out
}

fn one_object(t: &[Vec<usize>]) -> RawCat {
    let n = t.len();
    let mut comp = BTreeMap::new();
    for g in 0..n {
        for f in 0..n {
            comp.insert((g, f), t[g][f]);
        }
    }
    RawCat { objects: 1, arrows: vec![(0, 0); n], ids: vec![0], comp }
}

/// Valid categories with at most 3 objects and 5 arrows: every preorder in
/// range, every monoid of order at most 3 with unit 0, and two hand-built
/// non-thin categories.
pub fn category_corpus() -> Vec<RawCat> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
        for mask in 0u32..(1 << off.len()) {
            let mut le: Vec<(usize, usize)> = (0..n).map(|s| (s, s)).collect();
            le.extend(off.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p));
            let transitive = le.iter().all(|&(a, b)| le.iter().filter(|&&(b2, _)| b2 == b).all(|&(_, c)| le.contains(&(a, c))));
            if transitive && le.len() <= 5 {
                out.push(thin(n, &le));
            }
        }
    }
    for n in 1..=3 {
        out.extend(monoid_tables(n).iter().map(|t| one_object(t)));
    }
    // two parallel arrows 0 -> 1
    let mut comp = BTreeMap::new();
    for (g, f, h) in [(0, 0, 0), (1, 1, 1), (2, 0, 2), (3, 0, 3), (1, 2, 2), (1, 3, 3)] {
        comp.insert((g, f), h);
    }
    out.push(RawCat { objects: 2, arrows: vec![(0, 0), (1, 1), (0, 1), (0, 1)], ids: vec![0, 1], comp });
    // an involution s on 0 and f: 0 -> 1, with f∘s = h and h∘s = f
    let (id0, s, id1, f, h) = (0, 1, 2, 3, 4);
    let mut comp = BTreeMap::new();
    for (g, k, r) in [
        (id0, id0, id0), (id0, s, s), (s, id0, s), (s, s, id0), (id1, id1, id1),
        (f, id0, f), (f, s, h), (h, id0, h), (h, s, f), (id1, f, f), (id1, h, h),
    ] {
        comp.insert((g, k), r);
    }
    out.push(RawCat { objects: 2, arrows: vec![(0, 0), (0, 0), (1, 1), (0, 1), (0, 1)], ids: vec![id0, id1], comp });
    out
}

/// A random small corruption of `c`: a composite, an identity, or a
/// dropped table entry.
pub fn mutate(c: &RawCat, rng: &mut ChaCha8Rng) -> RawCat {
    let mut m = c.clone();
    let n = m.arrows.len();
    match rng.gen_range(0..3) {
        0 if !m.comp.is_empty() => {
            let key = **m.comp.keys().collect::<Vec<_>>().choose(rng).unwrap();
            m.comp.insert(key, rng.gen_range(0..n));
        }
        1 => {
            let s = rng.gen_range(0..m.objects);
            m.ids[s] = rng.gen_range(0..n);
        }
        _ => {
            if let Some(key) = m.comp.keys().copied().collect::<Vec<_>>().choose(rng) {
                m.comp.remove(key);
            }
        }
    }
    m
}

/// Functors `c -> FinSet` whose values partition `{0..n}`: counted by brute
/// force over every choice of fibers and every table of arrow actions.
pub fn functor_count(c: &RawCat, n: usize) -> usize {
    let mut total = 0;
    for code in 0..c.objects.pow(n as u32) {
        let p: Vec<usize> = (0..n).map(|i| code / c.objects.pow(i as u32) % c.objects).collect();
        let fiber = |s: usize| -> Vec<usize> { (0..n).filter(|&i| p[i] == s).collect() };
        // every function fiber(dom) -> fiber(cod), for each arrow
        let choices: Vec<Vec<BTreeMap<usize, usize>>> = c.arrows.iter().map(|&(d, k)| functions(&fiber(d), &fiber(k))).collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; c.arrows.len()];
        'outer: loop {
            let act = |f: usize| &choices[f][pick[f]];
            let ok = c.ids.iter().all(|&i| act(i).iter().all(|(x, y)| x == y))
                && c.comp.iter().all(|(&(g, f), &h)| act(f).iter().all(|(x, y)| act(g)[y] == act(h)[x]));
            total += usize::from(ok);
            for k in 0..pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    continue 'outer;
                }
                pick[k] = 0;
            }
            break;
        }
    }
    total
}

fn functions(from: &[usize], to: &[usize]) -> Vec<BTreeMap<usize, usize>> {
    let mut out = vec![BTreeMap::new()];
    for &x in from {
        out = out.into_iter().flat_map(|m| to.iter().map(move |&y| {
            let mut m = m.clone();
            m.insert(x, y);
            m
        })).collect();
    }
    out
}

/// Labelled monoid structures on `{0..n}`: every binary table, checked for
/// associativity and for having a two-sided unit.
pub fn labelled_monoids(n: usize) -> usize {
    let cells = n * n;
    let mut count = 0;
    for code in 0..n.pow(cells as u32) {
        let t: Vec<usize> = (0..cells).map(|i| code / n.pow(i as u32) % n).collect();
        let m = |a: usize, b: usize| t[a * n + b];
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
        let unit = (0..n).any(|e| (0..n).all(|a| m(e, a) == a && m(a, e) == a));
        count += usize::from(assoc && unit);
    }
    count
}

// ---------------------------------------------------------------------------
// Counting oracles

/// Catalan numbers by the convolution recurrence.
pub fn catalan(n: usize) -> usize {
    let mut c = vec![1usize];
    for k in 1..=n {
        c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
    }
    c[n]
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Order-preserving maps `[m] -> [n]`: `C(m+n-1, m)`, with the empty cases.
pub fn monotone_maps(m: usize, n: usize) -> usize {
    match (m, n) {
        (0, _) => 1,
        (_, 0) => 0,
        _ => binomial(m + n - 1, m),
    }
}

/// Planar trees with leaves, a node with `k` inputs weighing `1 + k`, the
/// bare edge weighing nothing: how many weigh at most `bound`.
pub fn planar_trees(bound: usize) -> usize {
    // exact[w]: trees of weight exactly w
    let mut exact = vec![0usize; bound + 1];
    exact[0] = 1;
    for w in 1..=bound {
        // a root with k inputs, k + 1 <= w, its k subtrees weighing w - 1 - k
        for k in 0..w {
            exact[w] += forests(&exact, k, w - 1 - k);
        }
    }
    exact.iter().sum()
}

/// Ordered `k`-tuples of trees with total weight `w`.
fn forests(exact: &[usize], k: usize, w: usize) -> usize {
    if k == 0 {
        return usize::from(w == 0);
    }
    (0..=w).map(|first| exact[first] * forests(exact, k - 1, w - first)).sum()
}

// ---------------------------------------------------------------------------
// Random spans

pub fn plugins() -> Vec<Monad> {
    vec![
        Monad::Identity,
        Monad::FreeMonoid,
        Monad::exceptions(FiniteSet::atoms(["e"])),
        Monad::writer(multicat::monads::FiniteMonoid::cyclic(2)),
        Monad::Tree,
    ]
}

/// A span `s -> s` with at most `max_apex` arrows whose domains have size
/// at most 2.
pub fn random_span(p: &Monad, s: &FiniteSet, max_apex: usize, tag: &str, rng: &mut ChaCha8Rng) -> TSpan {
    let doms = p.enumerate_telements(s, 2).unwrap();
    let k = rng.gen_range(1..=max_apex);
    let names: Vec<Element> = (0..k).map(|i| Element::atom(format!("{tag}{i}"))).collect();
    let dom = names.iter().map(|a| (a.clone(), doms.choose(rng).unwrap().clone())).collect();
    let apex = FiniteSet::new(names.iter().cloned());
    let cod = FiniteMap::new(apex, s.clone(), |_| s.elements().choose(rng).unwrap().clone()).unwrap();
    TSpan::new(p.clone(), s.clone(), dom, cod).unwrap()
}

pub fn base_set(n: usize) -> FiniteSet {
    FiniteSet::new((0..n).map(|i| Element::atom(format!("s{i}"))))
}
