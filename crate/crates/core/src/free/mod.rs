//! Free multicategories on `T`-graphs, as formal pasting terms.
//!
//! An arrow of the free multicategory is either `id:s` for an object `s`, or
//! `a[w]` for a generator `a` and a `T`-element `w` of arrows with
//! `T(cod)(w) = dom(a)`. Composition grafts at the `id` leaves, so the unit
//! laws hold on the nose.

pub mod opetope;

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{guard, Error, Result, DEFAULT_CAP};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::MonadPlugin;
use crate::multicat::{Multicategory, MulticategoryMap};
use crate::spans::TSpan;

const ID: &str = "id";

pub fn ident(s: Element) -> Element {
    Element::tag(ID, s)
}

pub fn node(a: Element, w: Element) -> Element {
    Element::node(a, vec![w])
}

fn view(t: &Element) -> Result<FreeView<'_>> {
    match t {
        Element::Tag(l, s) if &**l == ID => Ok(FreeView::Ident(s)),
        Element::Node(a, w) if w.len() == 1 => Ok(FreeView::Node(a, &w[0])),
        _ => Err(Error::malformed(t, "not a free arrow")),
    }
}

enum FreeView<'a> {
    Ident(&'a Element),
    Node(&'a Element, &'a Element),
}

/// A `T`-graph: a span with the same set at both ends.
fn require_graph(g: &TSpan) -> Result<()> {
    if g.source != g.target {
        return Err(Error::Mismatch("a graph needs the same objects at both ends".into()));
    }
    Ok(())
}

pub fn free_cod(g: &TSpan, t: &Element) -> Result<Element> {
    match view(t)? {
        FreeView::Ident(s) => Ok(s.clone()),
        FreeView::Node(a, _) => g.cod.apply(a).cloned(),
    }
}

pub fn free_dom(g: &TSpan, t: &Element) -> Result<Element> {
    let p = &g.plugin;
    match view(t)? {
        FreeView::Ident(s) => Ok(p.unit(s)),
        FreeView::Node(_, w) => {
            let tt = p.relabel(w, &mut |c| free_dom(g, c))?;
            p.mult(&tt)
        }
    }
}

pub fn depth(g: &TSpan, t: &Element) -> Result<usize> {
    match view(t)? {
        FreeView::Ident(_) => Ok(0),
        FreeView::Node(_, w) => {
            let children = g.plugin.labels(w)?;
            Ok(1 + children.iter().map(|c| depth(g, c)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0))
        }
    }
}

fn arity(g: &TSpan, t: &Element) -> Result<usize> {
    Ok(g.plugin.labels(&free_dom(g, t)?)?.len())
}

/// The generator `a` as a free arrow: `a` applied to identities.
pub fn generator(g: &TSpan, a: &Element) -> Result<Element> {
    let w = g.plugin.relabel(g.dom_of(a)?, &mut |s| Ok(ident(s.clone())))?;
    Ok(node(a.clone(), w))
}

/// Every free arrow of depth at most `depth_bound` (and, if given, with at
/// most `arity_bound` input positions), in canonical order.
pub fn free_enumerate(g: &TSpan, depth_bound: usize, arity_bound: Option<usize>) -> Result<Vec<Element>> {
    require_graph(g)?;
    let p = &g.plugin;
    let idents: Vec<Element> = g.source.iter().map(|s| ident(s.clone())).collect();
    let mut level = FiniteSet::new(idents.clone());
    for _ in 0..depth_bound {
        let cod = FiniteMap::try_new(level.clone(), g.source.clone(), |t| free_cod(g, t))?;
        let mut next = idents.clone();
        for a in &g.apex {
            for w in p.enumerate_fiber(&cod, g.dom_of(a)?)? {
                let t = node(a.clone(), w);
                if arity_bound.map_or(true, |b| arity(g, &t).map_or(false, |n| n <= b)) {
                    next.push(t);
                }
            }
            guard("free arrows", next.len(), DEFAULT_CAP)?;
        }
        let next = FiniteSet::new(next);
        if next == level {
            break;
        }
        level = next;
    }
    Ok(level.elements().to_vec())
}

/// The composite of `children` (a `T`-element of free arrows whose codomains
/// match the domain of `outer`) with `outer`: graft them at its leaves.
pub fn graft(g: &TSpan, outer: &Element, children: &Element) -> Result<Element> {
    let p = &g.plugin;
    let got = p.relabel(children, &mut |c| free_cod(g, c))?;
    if got != free_dom(g, outer)? {
        return Err(Error::Mismatch(format!("cannot graft {children} onto {outer}")));
    }
    graft_unchecked(g, outer, children)
}

fn graft_unchecked(g: &TSpan, outer: &Element, children: &Element) -> Result<Element> {
    let p = &g.plugin;
    match view(outer)? {
        FreeView::Ident(_) => match p.labels(children)?.as_slice() {
            [c] => Ok(c.clone()),
            _ => Err(Error::malformed(children, "an identity takes one child")),
        },
        FreeView::Node(a, w) => {
            let blocks = p.relabel(w, &mut |c| free_dom(g, c))?;
            let split = p.unflatten(&blocks, children)?;
            let pairs = p.zip(&split, w)?;
            let w2 = p.relabel(&pairs, &mut |pair| {
                let (block, c) = pair.as_pair().expect("zip yields pairs");
                graft_unchecked(g, c, block)
            })?;
            Ok(node(a.clone(), w2))
        }
    }
}

/// The free multicategory on `g`, truncated to the arrows enumerated by
/// [`free_enumerate`]; composites leaving that fragment are omitted.
pub fn free_multicat(g: &TSpan, depth_bound: usize, arity_bound: Option<usize>) -> Result<Multicategory> {
    let p = &g.plugin;
    let arrows = FiniteSet::new(free_enumerate(g, depth_bound, arity_bound)?);
    let dom: BTreeMap<Element, Element> = arrows.iter().map(|t| Ok((t.clone(), free_dom(g, t)?))).collect::<Result<_>>()?;
    let cod = FiniteMap::try_new(arrows.clone(), g.source.clone(), |t| free_cod(g, t))?;
    let ids = FiniteMap::new(g.source.clone(), arrows.clone(), |s| ident(s.clone()))?;
    let mut comp = BTreeMap::new();
    for a in &arrows {
        for u in p.enumerate_fiber(&cod, &dom[a])? {
            let c = graft_unchecked(g, a, &u)?;
            if arrows.contains(&c) {
                comp.insert(Element::pair(u, a.clone()), c);
            }
        }
        guard("free composites", comp.len(), DEFAULT_CAP)?;
    }
    Multicategory::new(p.clone(), dom, cod, ids, comp, Some(depth_bound))
}

/// A map of graphs from `g` to the underlying graph of a multicategory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    pub on_arrows: FiniteMap,
    pub on_objects: FiniteMap,
}

pub fn check_graph_map(g: &TSpan, m: &Multicategory, j: &GraphMap) -> Result<()> {
    for a in &g.apex {
        let ja = j.on_arrows.apply(a)?;
        if &g.plugin.apply_map(&j.on_objects, g.dom_of(a)?)? != m.dom_of(ja)?
            || j.on_objects.apply(g.cod.apply(a)?)? != m.cod_of(ja)?
        {
            return Err(Error::Law(format!("{a} is sent to {ja}, whose legs do not match")));
        }
    }
    Ok(())
}

/// The unique extension of `j` to the (truncated) free multicategory:
/// `id:s ↦ ids(j(s))`, `a[w] ↦ comp(T(ext)(w), j(a))`.
pub fn universal_extension(free: &Multicategory, g: &TSpan, m: &Multicategory, j: &GraphMap) -> Result<MulticategoryMap> {
    check_graph_map(g, m, j)?;
    fn ext(g: &TSpan, m: &Multicategory, j: &GraphMap, t: &Element) -> Result<Element> {
        match view(t)? {
            FreeView::Ident(s) => Ok(m.id_of(j.on_objects.apply(s)?)?.clone()),
            FreeView::Node(a, w) => {
                let u = g.plugin.relabel(w, &mut |c| ext(g, m, j, c))?;
                m.compose(&u, j.on_arrows.apply(a)?)?
                    .ok_or_else(|| Error::Invalid(format!("the composite needed for {t} is out of bound")))
            }
        }
    }
    let on_arrows = FiniteMap::try_new(free.arrows.clone(), m.arrows.clone(), |t| ext(g, m, j, t))?;
    Ok(MulticategoryMap { on_arrows, on_objects: j.on_objects.clone() })
}
