//! The acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed; exits non-zero if any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use multicat::algebras::endo::{algebra_operad_correspondence, arity_of, endomorphism_arrows, endomorphism_operad};
use multicat::algebras::slice::{algebras_over, slice_multicat, slicing_agreement};
use multicat::algebras::{enumerate_algebras, standard_carrier, Algebra, SliceObject};
use multicat::error::DEFAULT_CAP;
use multicat::free::opetope::enumerate_opetopes;
use multicat::free::{free_dom, free_enumerate, free_multicat, generator, graft, ident, universal_extension, GraphMap};
use multicat::monads::{check_cartesian, check_monad_laws, FiniteMonoid};
use multicat::multicat::enumerate_maps;
use multicat::multicat::standard::{encode_standard, standard_multicat, FiniteCategory, SetFunctor, StandardData};
use multicat::spans::{associator, horizontal_compose, left_unitor, right_unitor};
use multicat::transport::characterization::{monad_data, recover_multicat};
use multicat::transport::structured::{faithful_not_full, free_structured};
use multicat::transport::{operad_from_regular_theory, CartesianNatTrans};
use multicat::{
    check_map, compose_spans, identity_span, terminal_multicat, Element, FiniteMap, FiniteSet, Monad, MonadPlugin,
    Multicategory, SpanTwoCell, TSpan,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: multicat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("cartesianness battery", c1_cartesian),
        ("span coherence", c2_spans),
        ("category oracle", c3_categories),
        ("algebra oracle", c4_algebras),
        ("End(X) correspondence", c5_endomorphisms),
        ("opetope counts", c6_opetopes),
        ("free multicategory laws", c7_free),
        ("Δ reconstruction", c8_delta),
        ("monad-data round trip", c9_monad_data),
        ("slicing coherence", c10_slicing),
        ("CLI determinism", c11_cli),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|e| {
                        Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
                    });
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(results).enumerate() {
        match r {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

// 1 -------------------------------------------------------------------------

fn c1_cartesian() -> Outcome {
    let monads = [
        Monad::Identity,
        Monad::FreeMonoid,
        Monad::exceptions(FiniteSet::atoms(["e"])),
        Monad::exceptions(FiniteSet::atoms(["e", "f"])),
        Monad::writer(FiniteMonoid::cyclic(2)),
        Monad::Tree,
    ];
    let mut runs = 0;
    for t in &monads {
        for n in 0..=3 {
            let z = FiniteSet::range(n);
            let laws = ok(check_monad_laws(t, &z, 4))?;
            ensure!(laws.passed(), "{} laws at |Z| = {n}: {:?}", t.name(), laws.first_failure());
            let cart = ok(check_cartesian(t, &z, 4))?;
            ensure!(cart.passed(), "{} not cartesian at |Z| = {n}: {}", t.name(), cart.to_json());
            runs += 1;
        }
    }
    let fcm = ok(check_cartesian(&Monad::FreeCommutativeMonoid, &FiniteSet::range(2), 4))?;
    ensure!(!fcm.passed(), "the free commutative monoid passed at 2 -> 1");
    let w = fcm.witnesses.first().ok_or("no witness")?;
    Ok(format!("{runs} cartesian runs; commutative monoid fails the {} square at 2 -> 1", w.square_name))
}

// 2 -------------------------------------------------------------------------

/// `a` with its first arrow duplicated, and the 2-cell collapsing the copy.
fn collapse(a: &TSpan) -> SpanTwoCell {
    let first = a.apex.elements()[0].clone();
    let copy = Element::atom("copy");
    let mut dom = a.dom.clone();
    dom.insert(copy.clone(), a.dom[&first].clone());
    let apex = FiniteSet::new(dom.keys().cloned());
    let cod = FiniteMap::new(apex.clone(), a.target.clone(), |x| {
        a.cod.apply(if *x == copy { &first } else { x }).unwrap().clone()
    })
    .unwrap();
    let big = TSpan::new(a.plugin.clone(), a.source.clone(), dom, cod).unwrap();
    let map = FiniteMap::new(apex, a.apex.clone(), |x| if *x == copy { first.clone() } else { x.clone() }).unwrap();
    SpanTwoCell::new(big, a.clone(), map).unwrap()
}

/// A copy of `a` with renamed arrows, and the renaming.
fn rename(a: &TSpan, prefix: &str) -> SpanTwoCell {
    let to = |x: &Element| Element::tag(prefix, x.clone());
    let dom = a.dom.iter().map(|(x, d)| (to(x), d.clone())).collect();
    let apex = FiniteSet::new(a.apex.iter().map(to));
    let cod = FiniteMap::new(apex.clone(), a.target.clone(), |x| a.cod.apply(x.as_tag().unwrap().1).unwrap().clone()).unwrap();
    let b = TSpan::new(a.plugin.clone(), a.source.clone(), dom, cod).unwrap();
    let map = FiniteMap::new(a.apex.clone(), apex, to).unwrap();
    SpanTwoCell::new(a.clone(), b, map).unwrap()
}

fn c2_spans() -> Outcome {
    let mut checked = 0;
    for seed in 0..120u64 {
        let mut r = rng(seed);
        let p = &plugins()[seed as usize % 5];
        let s = base_set(1 + (seed as usize / 5) % 2);
        let [a, b, c, d] = ["a", "b", "c", "d"].map(|t| random_span(p, &s, 3, t, &mut r));
        // pentagon
        let one = ok((|| {
            let first = associator(&compose_spans(&d, &c)?, &b, &a)?;
            associator(&d, &c, &compose_spans(&b, &a)?)?.vertical(&first)
        })())?;
        let two = ok((|| {
            let w1 = horizontal_compose(&SpanTwoCell::identity(&a), &associator(&d, &c, &b)?)?;
            let mid = associator(&d, &compose_spans(&c, &b)?, &a)?;
            let w2 = horizontal_compose(&associator(&c, &b, &a)?, &SpanTwoCell::identity(&d))?;
            w2.vertical(&mid.vertical(&w1)?)
        })())?;
        ensure!(one.map == two.map, "pentagon fails for seed {seed} over {}", p.name());
        // triangle
        let id = identity_span(p, &s);
        let lhs = ok((|| {
            horizontal_compose(&left_unitor(&a)?, &SpanTwoCell::identity(&b))?.vertical(&associator(&b, &id, &a)?)
        })())?;
        let rhs = ok(right_unitor(&b).and_then(|rb| horizontal_compose(&SpanTwoCell::identity(&a), &rb)))?;
        ensure!(lhs.map == rhs.map, "triangle fails for seed {seed} over {}", p.name());
        // interchange, with one non-invertible cell on each side
        let (alpha, alpha2) = (collapse(&a), rename(&a, "r"));
        let (beta, beta2) = (collapse(&b), rename(&b, "r"));
        let lhs = ok((|| horizontal_compose(&alpha2.vertical(&alpha)?, &beta2.vertical(&beta)?))())?;
        let rhs = ok((|| horizontal_compose(&alpha2, &beta2)?.vertical(&horizontal_compose(&alpha, &beta)?))())?;
        ensure!(lhs.map == rhs.map, "interchange fails for seed {seed} over {}", p.name());
        checked += 1;
    }
    Ok(format!("{checked} seeded instances over 5 monads"))
}

// 3 -------------------------------------------------------------------------

fn crate_verdict(c: &RawCat) -> (bool, bool) {
    match c.to_finite() {
        Err(_) => (false, false),
        Ok(f) => {
            let passed = encode_standard(&StandardData::Category(f)).and_then(|m| m.check_axioms()).map_or(false, |r| r.passed());
            (passed, true)
        }
    }
}

fn c3_categories() -> Outcome {
    let corpus = category_corpus();
    for (i, c) in corpus.iter().enumerate() {
        ensure!(is_category(c), "fixture {i} is not a category");
        ensure!(crate_verdict(c).0, "fixture {i} was rejected");
    }
    let mut r = rng(3);
    let (mut negatives, mut reached_axioms, mut tries) = (0, 0, 0);
    while (negatives < 40 || reached_axioms < 20) && tries < 10_000 {
        tries += 1;
        let c = &corpus[tries % corpus.len()];
        let m = mutate(c, &mut r);
        let expected = is_category(&m);
        let (got, typed) = crate_verdict(&m);
        ensure!(got == expected, "verdicts disagree on a mutation of fixture {}: oracle {expected}", tries % corpus.len());
        if !expected {
            negatives += 1;
            reached_axioms += usize::from(typed);
        }
    }
    ensure!(negatives >= 40 && reached_axioms >= 20, "only {negatives} negatives");
    Ok(format!("{} positives, {negatives} negatives ({reached_axioms} past typing), {tries} mutations", corpus.len()))
}

// 4 -------------------------------------------------------------------------

fn by_carrier(all: &[Algebra], n: usize) -> usize {
    all.iter().filter(|a| a.carrier.carrier.len() == n).count()
}

fn c4_algebras() -> Outcome {
    let corpus = category_corpus();
    let mut compared = 0;
    for (i, c) in corpus.iter().enumerate() {
        let m = ok(c.to_finite().and_then(|f| standard_multicat(&StandardData::Category(f))))?;
        let all = ok(enumerate_algebras(&m, 2))?;
        for n in 0..=2 {
            let want = functor_count(c, n);
            ensure!(by_carrier(&all, n) == want, "fixture {i}, |X| = {n}: {} algebras, {want} functors", by_carrier(&all, n));
            compared += 1;
        }
    }
    let t = ok(terminal_multicat(&Monad::FreeMonoid, 3))?;
    let all = ok(enumerate_algebras(&t, 2))?;
    let counts: Vec<usize> = (0..=2).map(|n| by_carrier(&all, n)).collect();
    let want: Vec<usize> = (0..=2).map(labelled_monoids).collect();
    ensure!(counts == want, "terminal operad: {counts:?} algebras, {want:?} monoids");
    Ok(format!("{compared} functor counts; monoids on 0, 1, 2 points: {want:?}"))
}

// 5 -------------------------------------------------------------------------

fn binary_graph() -> TSpan {
    let dom = [(Element::atom("b"), Element::seq(vec![Element::star(); 2]))].into_iter().collect();
    TSpan::new(Monad::FreeMonoid, FiniteSet::terminal(), dom, FiniteMap::to_terminal(&FiniteSet::atoms(["b"]))).unwrap()
}

fn c5_endomorphisms() -> Outcome {
    let x = standard_carrier(2);
    let mut per_arity = BTreeMap::new();
    for f in ok(endomorphism_arrows(&x, 3))?.iter().flatten() {
        *per_arity.entry(ok(arity_of(f))?).or_insert(0usize) += 1;
    }
    for n in 0..=3u32 {
        let want = 2usize.pow(2u32.pow(n));
        ensure!(per_arity.get(&(n as usize)) == Some(&want), "End(X) has {:?} arity-{n} arrows", per_arity.get(&(n as usize)));
    }
    let terminal = ok(terminal_multicat(&Monad::FreeMonoid, 3))?;
    let free = ok(free_multicat(&binary_graph(), 2, Some(3)))?;
    let mut sizes = Vec::new();
    for (name, a) in [("terminal", &terminal), ("free binary", &free)] {
        let c = ok(algebra_operad_correspondence(a, &x, 3))?;
        ensure!(c.bijective && c.algebras.len() == c.maps.len(), "{name}: not a bijection");
        sizes.push(c.maps.len());
    }
    // monoids on two labelled points; binary operations on two points
    ensure!(sizes == vec![labelled_monoids(2), 2usize.pow(4)], "correspondence sizes {sizes:?}");
    Ok(format!("arity counts {per_arity:?}; bijections of sizes {sizes:?}"))
}

// 6 -------------------------------------------------------------------------

/// One `k`-ary generator on one object for each `k <= max_arity`.
fn corolla_graph(max_arity: usize) -> TSpan {
    let dom: BTreeMap<Element, Element> =
        (0..=max_arity).map(|k| (Element::atom(format!("g{k}")), Element::seq(vec![Element::star(); k]))).collect();
    let apex = FiniteSet::new(dom.keys().cloned());
    TSpan::new(Monad::FreeMonoid, FiniteSet::terminal(), dom, FiniteMap::to_terminal(&apex)).unwrap()
}

/// A free arrow on the corolla graph, read as a planar tree: the arities of
/// its nodes in preorder.
fn node_arities(g: &TSpan, t: &Element) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![t.clone()];
    while let Some(t) = stack.pop() {
        if let Some((a, w)) = t.as_node() {
            out.push(g.dom_of(a).unwrap().as_seq().unwrap().len());
            // children pushed in reverse keep the preorder
            stack.extend(w[0].as_seq().unwrap().iter().rev().cloned());
        }
    }
    out
}

/// 4-opetopes of size at most `bound`, from two nested free constructions.
/// 3-opetopes are free arrows on the corolla graph, and the size of one is
/// the sum of `1 + k` over its `k`-ary nodes. They become the generators of
/// a second graph whose objects are colours `c{k}` (the 2-opetope with `k`
/// inputs): a generator's inputs are the colours of its nodes in preorder,
/// and its output is the colour of its arity. Free arrows on that graph are
/// 4-opetopes, where a node labelled `L` costs one plus the size of `L` and
/// an identity on colour `k` costs `k`.
fn four_opetopes(bound: usize) -> Result<usize, String> {
    let corolla = corolla_graph(bound.saturating_sub(2));
    let colour = |k: usize| Element::atom(format!("c{k}"));
    let mut dom = BTreeMap::new();
    let mut cods = Vec::new();
    let mut sizes = BTreeMap::new();
    for t in ok(free_enumerate(&corolla, bound.saturating_sub(1), None))? {
        let nodes = node_arities(&corolla, &t);
        let size: usize = nodes.iter().map(|k| 1 + k).sum();
        if size + 1 > bound {
            continue;
        }
        let arity = ok(free_dom(&corolla, &t))?.as_seq().unwrap().len();
        dom.insert(t.clone(), Element::seq(nodes.into_iter().map(colour).collect()));
        cods.push((t.clone(), colour(arity)));
        sizes.insert(t, size);
    }
    let colours = FiniteSet::new((0..=bound).map(colour));
    let apex = FiniteSet::new(dom.keys().cloned());
    let cod = ok(FiniteMap::from_pairs(apex, colours.clone(), cods))?;
    let g = ok(TSpan::new(Monad::FreeMonoid, colours, dom, cod))?;
    fn size(t: &Element, sizes: &BTreeMap<Element, usize>) -> usize {
        match (t.as_tag(), t.as_node()) {
            (Some((_, c)), _) => c.as_atom().unwrap()[1..].parse().unwrap(),
            (_, Some((l, w))) => 1 + sizes[l] + w[0].as_seq().unwrap().iter().map(|c| size(c, sizes)).sum::<usize>(),
            _ => unreachable!("free arrows are identities or nodes"),
        }
    }
    Ok(ok(free_enumerate(&g, bound, None))?.iter().filter(|t| size(t, &sizes) <= bound).count())
}

fn c6_opetopes() -> Outcome {
    let count = |d, b| ok(enumerate_opetopes(d, b)).map(|v| v.len());
    ensure!(count(0, 4)? == 1 && count(1, 4)? == 1, "low dimensions");
    for k in 0..=6 {
        ensure!(count(2, k)? == k + 1, "dim 2, size <= {k}: {}", count(2, k)?);
    }
    for b in [4, 5] {
        ensure!(count(3, b)? == planar_trees(b), "dim 3, size <= {b}: {} vs {}", count(3, b)?, planar_trees(b));
    }
    let four = count(4, 3)?;
    let oracle = four_opetopes(3)?;
    ensure!(four == oracle, "dim 4, size <= 3: {four} vs {oracle}");
    Ok(format!("dim 3 at size <= 4: {}; dim 4 at size <= 3: {four}", planar_trees(4)))
}

// 7 -------------------------------------------------------------------------

fn graph(p: Monad, objects: &[&str], arrows: &[(&str, Element, &str)]) -> TSpan {
    let s = FiniteSet::atoms(objects.iter().copied());
    let dom = arrows.iter().map(|(n, d, _)| (Element::atom(n), d.clone())).collect();
    let apex = FiniteSet::atoms(arrows.iter().map(|(n, _, _)| *n));
    let cod = FiniteMap::from_pairs(apex, s.clone(), arrows.iter().map(|(n, _, c)| (Element::atom(n), Element::atom(c)))).unwrap();
    TSpan::new(p, s, dom, cod).unwrap()
}

fn small_graphs() -> Vec<TSpan> {
    let e = |s: &str| Element::atom(s);
    let seq = |xs: &[&str]| Element::seq(xs.iter().map(|x| e(x)).collect());
    let leaf = |x: &str| multicat::monads::leaf(e(x));
    vec![
        binary_graph(),
        graph(Monad::FreeMonoid, &["x", "y"], &[("f", seq(&["x", "y"]), "x"), ("c", seq(&[]), "y"), ("u", seq(&["x"]), "y")]),
        graph(Monad::Identity, &["0", "1"], &[("f", e("0"), "1"), ("g", e("1"), "1")]),
        graph(Monad::Tree, &["*"], &[("a", leaf("*"), "*"), ("b", multicat::monads::tree_node(vec![leaf("*"), leaf("*")]), "*")]),
    ]
}

/// Codomains of free arrows, as a map to feed fiber enumeration.
fn cod_map(g: &TSpan, arrows: &[Element]) -> FiniteMap {
    let set = FiniteSet::new(arrows.iter().cloned());
    FiniteMap::try_new(set, g.source.clone(), |t| multicat::free::free_cod(g, t)).unwrap()
}

fn graft_associativity(g: &TSpan) -> Result<usize, String> {
    let p = &g.plugin;
    let blocks = ok(free_enumerate(g, 1, None))?;
    let cod = cod_map(g, &blocks);
    let mut triples = 0;
    for a in &blocks {
        for u in ok(p.enumerate_fiber(&cod, &ok(free_dom(g, a))?))? {
            let au = ok(graft(g, a, &u))?;
            let ids = ok(p.relabel(&ok(free_dom(g, &au))?, &mut |s| Ok(ident(s.clone()))))?;
            ensure!(ok(graft(g, &au, &ids))? == au, "right unit fails at {au}");
            for v in ok(p.enumerate_fiber(&cod, &ok(free_dom(g, &au))?))? {
                let left = ok(graft(g, &au, &v))?;
                // split v along the domains of u, graft each piece, then graft onto a
                let inner = ok((|| {
                    let split = p.unflatten(&p.relabel(&u, &mut |c| free_dom(g, c))?, &v)?;
                    let pairs = p.zip(&split, &u)?;
                    p.relabel(&pairs, &mut |pair| {
                        let (piece, c) = pair.as_pair().unwrap();
                        graft(g, c, piece)
                    })
                })())?;
                let right = ok(graft(g, a, &inner))?;
                ensure!(left == right, "graft is not associative at {a}, {u}, {v}");
                triples += 1;
            }
        }
    }
    Ok(triples)
}

/// Every map `free -> m` that restricts to `j` on generators and objects.
fn extensions(free: &Multicategory, g: &TSpan, m: &Multicategory, j: &GraphMap) -> Result<usize, String> {
    let mut n = 0;
    for f in ok(enumerate_maps(free, m, DEFAULT_CAP))? {
        let agrees = f.on_objects == j.on_objects
            && g.apex.iter().all(|a| f.on_arrows.apply(&generator(g, a).unwrap()).ok() == j.on_arrows.apply(a).ok());
        n += usize::from(agrees);
    }
    Ok(n)
}

fn universal_instances() -> Result<Vec<(TSpan, Multicategory, GraphMap)>, String> {
    let mut out = Vec::new();
    let binary = binary_graph();
    let unary = graph(Monad::FreeMonoid, &["*"], &[("u", Element::seq(vec![Element::star()]), "*")]);
    let terminal = ok(terminal_multicat(&Monad::FreeMonoid, 3))?;
    for g in [&binary, &unary] {
        let j = GraphMap {
            on_arrows: FiniteMap::new(g.apex.clone(), terminal.arrows.clone(), |a| g.dom_of(a).unwrap().clone()).unwrap(),
            on_objects: FiniteMap::to_terminal(&g.source),
        };
        out.push((g.clone(), terminal.clone(), j));
    }
    let end2 = ok(endomorphism_operad(&standard_carrier(2), 2))?;
    for op in end2.arrows.iter().filter(|f| arity_of(f).unwrap() == 1) {
        let j = GraphMap {
            on_arrows: FiniteMap::new(unary.apex.clone(), end2.arrows.clone(), |_| op.clone()).unwrap(),
            on_objects: FiniteMap::to_terminal(&unary.source),
        };
        out.push((unary.clone(), end2.clone(), j));
    }
    // the binary generator into slices of the terminal operad: an idempotent
    // element x of the monoid gives the arrow (<x, x>, m) from x to x
    let t = terminal;
    let m2 = Element::seq(vec![Element::star(); 2]);
    for alg in ok(enumerate_algebras(&t, 2))?.iter().filter(|a| a.carrier.carrier.len() == 2) {
        let slice = ok(slice_multicat(&t, alg))?;
        for x in &alg.carrier.carrier {
            let arrow = Element::pair(Element::seq(vec![x.clone(), x.clone()]), m2.clone());
            if alg.h.apply(&arrow).ok() == Some(x) {
                let j = GraphMap {
                    on_arrows: FiniteMap::new(binary.apex.clone(), slice.arrows.clone(), |_| arrow.clone()).unwrap(),
                    on_objects: FiniteMap::new(binary.source.clone(), slice.objects.clone(), |_| x.clone()).unwrap(),
                };
                out.push((binary.clone(), slice.clone(), j));
            }
        }
    }
    // a free category on a loop and an arrow, into a category with an involution
    let e = |s: &str| Element::atom(s);
    let loops = graph(Monad::Identity, &["0", "1"], &[("f", e("0"), "1"), ("g", e("1"), "1")]);
    let c = involution_category();
    let m = ok(standard_multicat(&StandardData::Category(c)))?;
    for (f, g) in [("f", "s"), ("h", "s"), ("f", "id1"), ("h", "id1")] {
        let j = GraphMap {
            on_arrows: FiniteMap::from_pairs(loops.apex.clone(), m.arrows.clone(), [(e("f"), e(f)), (e("g"), e(g))]).unwrap(),
            on_objects: FiniteMap::identity(&loops.source),
        };
        out.push((loops.clone(), m.clone(), j));
    }
    Ok(out)
}

/// Objects 0, 1; `s` an involution of 1; `f, h: 0 -> 1` swapped by `s`.
fn involution_category() -> FiniteCategory {
    let e = |s: &str| Element::atom(s);
    let arrows = [("id0", "0", "0"), ("id1", "1", "1"), ("s", "1", "1"), ("f", "0", "1"), ("h", "0", "1")]
        .iter()
        .map(|(n, d, c)| (e(n), (e(d), e(c))))
        .collect();
    let ids = [("0", "id0"), ("1", "id1")].iter().map(|(s, i)| (e(s), e(i))).collect();
    let comp = [
        ("id0", "id0", "id0"), ("id1", "id1", "id1"), ("id1", "s", "s"), ("s", "id1", "s"), ("s", "s", "id1"),
        ("f", "id0", "f"), ("h", "id0", "h"), ("id1", "f", "f"), ("id1", "h", "h"), ("s", "f", "h"), ("s", "h", "f"),
    ]
    .iter()
    .map(|(g, f, c)| ((e(g), e(f)), e(c)))
    .collect();
    FiniteCategory::new(FiniteSet::atoms(["0", "1"]), arrows, ids, comp).unwrap()
}

fn c7_free() -> Outcome {
    let g = binary_graph();
    let arrows = ok(free_enumerate(&g, 5, Some(6)))?;
    for n in 1..=6 {
        let k = arrows.iter().filter(|t| g.plugin.labels(&free_dom(&g, t).unwrap()).unwrap().len() == n).count();
        ensure!(k == catalan(n - 1), "arity {n}: {k} free arrows, Catalan gives {}", catalan(n - 1));
    }
    let mut triples = 0;
    for g in small_graphs() {
        triples += graft_associativity(&g)?;
    }
    let instances = universal_instances()?;
    for (i, (g, m, j)) in instances.iter().enumerate() {
        let depth = if g.plugin == Monad::Identity { 2 } else { 3 };
        let free = ok(free_multicat(g, depth, Some(3)))?;
        let ext = ok(universal_extension(&free, g, m, j))?;
        ensure!(ok(check_map(&ext, &free, m))?.passed(), "instance {i}: the extension is not a map");
        let n = extensions(&free, g, m, j)?;
        ensure!(n == 1, "instance {i}: {n} maps extend the graph map");
    }
    Ok(format!("Catalan to 42; {triples} graft triples at depth <= 3; {} unique extensions", instances.len()))
}

// 8 -------------------------------------------------------------------------

fn c8_delta() -> Outcome {
    let d = ok(terminal_multicat(&Monad::FreeMonoid, 5).and_then(|t| free_structured(&t, 5)))?;
    let word = |n| Element::seq(vec![Element::star(); n]);
    for m in 0..=5 {
        for n in 0..=5 {
            let got = d.hom_count(&word(m), &word(n));
            ensure!(got == monotone_maps(m, n), "hom({m}, {n}) = {got}, expected {}", monotone_maps(m, n));
        }
    }
    let w = ok(faithful_not_full(2))?;
    ensure!(w.map_report.passed(), "the multicategory map fails its laws");
    ensure!(w.lifts == 0, "{} structured lifts found", w.lifts);
    Ok(format!("36 hom counts; witness with {} structured maps and no lift", w.structured_maps))
}

// 9 -------------------------------------------------------------------------

/// `F(0) = {a}`, `F(1) = {b, c}`; `s` swaps `b` and `c`.
fn involution_functor() -> SetFunctor {
    let e = |s: &str| Element::atom(s);
    let table: [(&str, &[&str]); 2] = [("0", &["a"]), ("1", &["b", "c"])];
    let values = table
        .iter()
        .map(|(s, v)| (e(s), FiniteSet::atoms(v.iter().copied())))
        .collect();
    let action = [
        ("id0", "a", "a"), ("id1", "b", "b"), ("id1", "c", "c"), ("s", "b", "c"), ("s", "c", "b"), ("f", "a", "b"), ("h", "a", "c"),
    ]
    .iter()
    .map(|(f, y, z)| ((e(f), e(y)), e(z)))
    .collect();
    SetFunctor { values, action }
}

fn standard_corpus() -> Vec<StandardData> {
    let c = involution_category();
    let e = |s: &str| Element::atom(s);
    let labels = [("id0", "0"), ("id1", "0"), ("s", "1"), ("f", "0"), ("h", "1")].iter().map(|(a, l)| (e(a), e(l))).collect();
    vec![
        StandardData::Category(FiniteCategory::arrow_category()),
        StandardData::Category(c.clone()),
        StandardData::Category(FiniteCategory::of_monoid(&FiniteMonoid::cyclic(3))),
        StandardData::WithSetFunctors { category: c.clone(), functors: [(e("e"), involution_functor())].into_iter().collect() },
        StandardData::OverMonoid { category: c, monoid: FiniteMonoid::cyclic(2), labels },
    ]
}

fn c9_monad_data() -> Outcome {
    let mut corpus: Vec<(String, Multicategory)> = Vec::new();
    for (i, d) in standard_corpus().iter().enumerate() {
        corpus.push((format!("standard {i}"), ok(standard_multicat(d))?));
    }
    for p in plugins() {
        corpus.push((format!("terminal over {}", p.name()), ok(terminal_multicat(&p, 2))?));
    }
    corpus.push(("End(2)".into(), ok(endomorphism_operad(&standard_carrier(2), 2))?));
    corpus.push(("free fragment".into(), ok(free_multicat(&binary_graph(), 2, Some(3)))?));
    let t = ok(terminal_multicat(&Monad::FreeMonoid, 2))?;
    let alg = ok(enumerate_algebras(&t, 2))?.into_iter().rev().find(|a| a.carrier.carrier.len() == 2).ok_or("no algebra")?;
    corpus.push(("slice".into(), ok(slice_multicat(&t, &alg))?));
    corpus.push(("regular theory".into(), ok(operad_from_regular_theory(&CartesianNatTrans::leaves(), 2))?));
    for (name, m) in &corpus {
        let extra: Vec<SliceObject> = m
            .objects
            .elements()
            .first()
            .map(|s| SliceObject::new(FiniteMap::new(FiniteSet::range(2), m.objects.clone(), |_| s.clone()).unwrap()))
            .into_iter()
            .collect();
        let pkg = ok(monad_data(m, &extra))?;
        let laws = ok(multicat::transport::characterization::check_package(&pkg))?;
        ensure!(laws.passed(), "{name}: package laws fail: {:?}", laws.first_failure());
        ensure!(&ok(recover_multicat(&pkg))? == m, "{name}: the recovered multicategory differs");
    }
    Ok(format!("{} multicategories recovered exactly", corpus.len()))
}

// 10 ------------------------------------------------------------------------

/// The category of elements of a functor given as an algebra over the
/// identity monad, built directly: arrows `(x, f)` out of `x`.
fn elements_category(c: &FiniteCategory, alg: &Algebra) -> FiniteCategory {
    let p = &alg.carrier.p;
    let mut arrows = BTreeMap::new();
    for x in &alg.carrier.carrier {
        for (f, (d, _)) in &c.arrows {
            if d == p.apply(x).unwrap() {
                let a = Element::pair(x.clone(), f.clone());
                let y = alg.h.apply(&a).unwrap().clone();
                arrows.insert(a, (x.clone(), y));
            }
        }
    }
    let ids = alg.carrier.carrier.iter().map(|x| (x.clone(), Element::pair(x.clone(), c.identities[p.apply(x).unwrap()].clone()))).collect();
    let mut comp = BTreeMap::new();
    for (g, (dg, _)) in &arrows {
        for (f, (df, cf)) in &arrows {
            if cf == dg {
                let gf = c.compose(g.as_pair().unwrap().1, f.as_pair().unwrap().1).unwrap();
                comp.insert((g.clone(), f.clone()), Element::pair(df.clone(), gf.clone()));
            }
        }
    }
    FiniteCategory::new(alg.carrier.carrier.clone(), arrows, ids, comp).unwrap()
}

fn c10_slicing() -> Outcome {
    let mut identity_cases = 0;
    for c in [FiniteCategory::arrow_category(), involution_category(), FiniteCategory::of_monoid(&FiniteMonoid::cyclic(2))] {
        let m = ok(standard_multicat(&StandardData::Category(c.clone())))?;
        for alg in ok(enumerate_algebras(&m, 2))?.iter().filter(|a| !a.carrier.carrier.is_empty()) {
            let direct = ok(standard_multicat(&StandardData::Category(elements_category(&c, alg))))?;
            ensure!(direct == ok(slice_multicat(&m, alg))?, "slice differs from the category of elements");
            identity_cases += 1;
        }
    }
    ensure!(identity_cases >= 5, "only {identity_cases} category-of-elements instances");
    let mut cases = vec![
        ok(terminal_multicat(&Monad::FreeMonoid, 2))?,
        ok(terminal_multicat(&Monad::exceptions(FiniteSet::atoms(["e"])), 2))?,
        ok(standard_multicat(&StandardData::Category(FiniteCategory::arrow_category())))?,
    ];
    cases.push(ok(endomorphism_operad(&standard_carrier(1), 2))?);
    let (mut algebras, mut maps) = (0, 0);
    for m in &cases {
        for alg in ok(enumerate_algebras(m, 2))? {
            let s = ok(slice_multicat(m, &alg))?;
            ensure!(ok(s.check_axioms())?.passed(), "a slice fails the axioms");
            let here = ok(enumerate_algebras(&s, 2))?.len();
            let over = ok(algebras_over(m, &alg, 2))?.len();
            ensure!(here == over, "{here} algebras of the slice, {over} algebras over h");
            for n in 0..=2 {
                for q in FiniteMap::all_maps(&FiniteSet::range(n), &alg.carrier.carrier) {
                    let r = ok(slicing_agreement(m, &alg, &q))?;
                    ensure!(r.passed(), "agreement fails: {:?}", r.first_failure());
                    maps += 1;
                }
            }
            algebras += 1;
        }
    }
    Ok(format!("{identity_cases} categories of elements; {algebras} algebras, {maps} agreement maps"))
}

// 11 ------------------------------------------------------------------------

/// One golden case per line of `golden/cases.txt`:
/// `name <TAB> arguments <TAB> stdin file or "-"`. The frozen output of a
/// case is `golden/expected/<name>.out`, headed by its exit status.
fn golden_cases() -> Result<Vec<(String, Vec<String>, String)>, String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let list = std::fs::read_to_string(dir.join("cases.txt")).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for line in list.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let cols: Vec<&str> = line.split('\t').collect();
        ensure!(cols.len() == 3, "bad case line: {line}");
        let args = cols[1].split_whitespace().map(|a| a.replace("@golden", &dir.display().to_string())).collect();
        let stdin = match cols[2] {
            "-" => String::new(),
            f => std::fs::read_to_string(dir.join("inputs").join(f)).map_err(|e| format!("{f}: {e}"))?,
        };
        out.push((cols[0].to_string(), args, stdin));
    }
    Ok(out)
}

fn invoke(args: &[String], stdin: &str) -> String {
    let out = multicat::cli::run(std::iter::once("multicat".to_string()).chain(args.iter().cloned()), &mut stdin.as_bytes());
    format!("exit {}\n{}", out.code, out.stdout)
}

fn c11_cli() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/expected");
    let cases = golden_cases()?;
    let mut codes = BTreeMap::new();
    for (name, args, stdin) in &cases {
        let first = invoke(args, stdin);
        ensure!(first == invoke(args, stdin), "{name}: two runs differ");
        let path = dir.join(format!("{name}.out"));
        if std::env::var_os("MULTICAT_BLESS").is_some() {
            std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        }
        let frozen = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
        ensure!(first == frozen, "{name}: output differs from the frozen expectation");
        *codes.entry(first.lines().next().unwrap_or_default().to_string()).or_insert(0usize) += 1;
    }
    for code in ["exit 0", "exit 1", "exit 2", "exit 3"] {
        ensure!(codes.contains_key(code), "no golden case ends with {code}");
    }
    Ok(format!("{} golden cases, byte-identical across runs ({codes:?})", cases.len()))
}
