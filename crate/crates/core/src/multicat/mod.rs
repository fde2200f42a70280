//! `(S,T)`-multicategories: monads on a set `S` in the bicategory of
//! `T`-spans, stored extensionally.

pub mod standard;

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::{Monad, MonadPlugin};
use crate::report::CheckReport;
use crate::spans::TSpan;

/// A multicategory with objects `S` and arrows `A`. A composable pair is
/// `(u, a)` with `u` a `T`-element over `A` and `T(cod)(u) = dom(a)`; `comp`
/// is keyed by these pairs.
///
/// With `truncation` set, `comp` may omit composable pairs (the composites
/// that fall outside a size bound); checks then skip every instance that
/// needs a missing composite and count the skips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multicategory {
    pub plugin: Monad,
    pub objects: FiniteSet,
    pub arrows: FiniteSet,
    pub dom: BTreeMap<Element, Element>,
    pub cod: FiniteMap,
    pub ids: FiniteMap,
    pub comp: BTreeMap<Element, Element>,
    pub truncation: Option<usize>,
}

/// A pair of maps on arrows and objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticategoryMap {
    pub on_arrows: FiniteMap,
    pub on_objects: FiniteMap,
}

impl Multicategory {
    /// Checks typing only: the legs land in the right sets and every key of
    /// `comp` is a composable pair. The axioms are left to
    /// [`Multicategory::check_axioms`].
    pub fn new(
        plugin: Monad,
        dom: BTreeMap<Element, Element>,
        cod: FiniteMap,
        ids: FiniteMap,
        comp: BTreeMap<Element, Element>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        let objects = cod.target().clone();
        let arrows = cod.source().clone();
        if ids.source() != &objects || ids.target() != &arrows {
            return Err(Error::Mismatch("ids must map objects to arrows".into()));
        }
        if dom.len() != arrows.len() || !arrows.iter().all(|a| dom.contains_key(a)) {
            return Err(Error::Mismatch("dom must be defined on exactly the arrows".into()));
        }
        for t in dom.values() {
            plugin.validate(t, &objects)?;
        }
        let m = Multicategory { plugin, objects, arrows, dom, cod, ids, comp, truncation };
        for (key, value) in &m.comp {
            let (u, a) = key.as_pair().ok_or_else(|| Error::malformed(key, "comp key must be (u, a)"))?;
            m.arrows.require(value)?;
            m.arrows.require(a)?;
            m.plugin.validate(u, &m.arrows)?;
            if &m.plugin.apply_map(&m.cod, u)? != m.dom_of(a)? {
                return Err(Error::malformed(key, "comp key is not a composable pair"));
            }
        }
        Ok(m)
    }

    pub fn dom_of(&self, a: &Element) -> Result<&Element> {
        self.dom.get(a).ok_or_else(|| Error::not_member(a, "arrows"))
    }

    pub fn cod_of(&self, a: &Element) -> Result<&Element> {
        self.cod.apply(a)
    }

    pub fn id_of(&self, s: &Element) -> Result<&Element> {
        self.ids.apply(s)
    }

    pub fn graph(&self) -> TSpan {
        TSpan {
            plugin: self.plugin.clone(),
            source: self.objects.clone(),
            target: self.objects.clone(),
            apex: self.arrows.clone(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
        }
    }

    /// The composite of `(u, a)`, or `None` if it is absent from a truncated
    /// table. Errors if the pair is not composable or an untruncated table
    /// lacks it.
    pub fn compose(&self, u: &Element, a: &Element) -> Result<Option<Element>> {
        let key = Element::pair(u.clone(), a.clone());
        match self.comp.get(&key) {
            Some(c) => Ok(Some(c.clone())),
            None if self.truncation.is_some() => Ok(None),
            None => Err(Error::malformed(&key, "no composite for this pair")),
        }
    }

    fn lookup(&self, u: &Element, a: &Element) -> Option<Element> {
        self.comp.get(&Element::pair(u.clone(), a.clone())).cloned()
    }

    /// `dom` of the composite of `(u, a)`: `μ(T(dom)(u))`.
    pub fn composite_dom(&self, u: &Element) -> Result<Element> {
        let tt = self.plugin.relabel(u, &mut |b| self.dom_of(b).cloned())?;
        self.plugin.mult(&tt)
    }

    /// Every `(u, a)` with `T(cod)(u) = dom(a)`, in canonical order.
    pub fn composable_pairs(&self) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for a in &self.arrows {
            for u in self.plugin.enumerate_fiber(&self.cod, self.dom_of(a)?)? {
                out.push(Element::pair(u, a.clone()));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Identity legs, composite legs, totality (unless truncated), both unit
    /// laws, and associativity over every element of `(A∘A)∘A`.
    pub fn check_axioms(&self) -> Result<CheckReport> {
        let p = &self.plugin;
        let mut report = CheckReport::with_bound(self.truncation);
        // composites with wrong legs are reported once and kept out of the
        // unit and associativity checks, which presuppose them
        let mut bad_legs = std::collections::BTreeSet::new();
        for s in &self.objects {
            let i = self.id_of(s)?;
            report.check(
                "identity legs",
                self.dom_of(i)? == &p.unit(s) && self.cod_of(i)? == s,
                || s.clone(),
                || format!("ids({s}) = {i} has dom {} and cod {}", self.dom[i], self.cod.get(i).unwrap()),
            );
        }
        for key in self.composable_pairs()? {
            let (u, a) = key.as_pair().expect("pair");
            let Some(c) = self.comp.get(&key) else {
                if self.truncation.is_some() {
                    report.skip("composite legs");
                } else {
                    report.check("totality", false, || key.clone(), || "composite missing".into());
                }
                continue;
            };
            let want_dom = self.composite_dom(u)?;
            let ok = self.dom_of(c)? == &want_dom && self.cod_of(c)? == self.cod_of(a)?;
            if !ok {
                bad_legs.insert(key.clone());
            }
            report.check(
                "composite legs",
                ok,
                || key.clone(),
                || format!("composite {c} has the wrong dom or cod (expected dom {want_dom})"),
            );
        }
        for a in &self.arrows {
            let u = p.apply_map(&self.ids, self.dom_of(a)?)?;
            match self.lookup(&u, a) {
                Some(c) => report.check("left unit", &c == a, || Element::pair(u.clone(), a.clone()), || format!("composite is {c}")),
                None => report.skip("left unit"),
            }
            let u = p.unit(a);
            let i = self.id_of(self.cod_of(a)?)?;
            match self.lookup(&u, i) {
                Some(c) => report.check("right unit", &c == a, || Element::pair(u.clone(), i.clone()), || format!("composite is {c}")),
                None => report.skip("right unit"),
            }
        }
        for a in &self.arrows {
            for v in p.enumerate_fiber(&self.cod, self.dom_of(a)?)? {
                let Some(b) = self.lookup(&v, a) else {
                    report.skip("associativity");
                    continue;
                };
                if bad_legs.contains(&Element::pair(v.clone(), a.clone())) {
                    continue;
                }
                for u in p.enumerate_fiber(&self.cod, self.dom_of(&b)?)? {
                    let witness = || Element::pair(u.clone(), Element::pair(v.clone(), a.clone()));
                    let Some(lhs) = self.lookup(&u, &b) else {
                        report.skip("associativity");
                        continue;
                    };
                    match self.associate(&u, &v, a, &bad_legs)? {
                        Some(rhs) => report.check("associativity", lhs == rhs, witness, || format!("{lhs} vs {rhs}")),
                        None => report.skip("associativity"),
                    }
                }
            }
        }
        Ok(report)
    }

    /// The other bracketing of `(u, (v, a))`: compose each block of `u` with
    /// the matching label of `v` first.
    fn associate(
        &self,
        u: &Element,
        v: &Element,
        a: &Element,
        bad_legs: &std::collections::BTreeSet<Element>,
    ) -> Result<Option<Element>> {
        let p = &self.plugin;
        let blocks = p.relabel(v, &mut |b| self.dom_of(b).cloned())?;
        let w = p.zip(&p.unflatten(&blocks, u)?, v)?;
        let mut missing = false;
        let v2 = p.relabel(&w, &mut |pair| {
            let (ui, vi) = pair.as_pair().expect("zip yields pairs");
            if bad_legs.contains(pair) {
                missing = true;
                return Ok(vi.clone());
            }
            Ok(self.lookup(ui, vi).unwrap_or_else(|| {
                missing = true;
                vi.clone()
            }))
        })?;
        if missing {
            return Ok(None);
        }
        Ok(self.lookup(&v2, a))
    }
}

impl MulticategoryMap {
    pub fn identity(m: &Multicategory) -> Self {
        MulticategoryMap { on_arrows: FiniteMap::identity(&m.arrows), on_objects: FiniteMap::identity(&m.objects) }
    }

    pub fn then(&self, next: &MulticategoryMap) -> Result<MulticategoryMap> {
        Ok(MulticategoryMap {
            on_arrows: crate::finset::compose(&next.on_arrows, &self.on_arrows)?,
            on_objects: crate::finset::compose(&next.on_objects, &self.on_objects)?,
        })
    }
}

/// Checks that `f` commutes with the graphs, preserves identities, and
/// preserves composites. Composites missing from a truncated target are
/// skipped.
pub fn check_map(f: &MulticategoryMap, m: &Multicategory, n: &Multicategory) -> Result<CheckReport> {
    if m.plugin != n.plugin {
        return Err(Error::Mismatch("multicategories over different monads".into()));
    }
    if f.on_arrows.source() != &m.arrows
        || f.on_arrows.target() != &n.arrows
        || f.on_objects.source() != &m.objects
        || f.on_objects.target() != &n.objects
    {
        return Err(Error::Mismatch("map endpoints do not match the multicategories".into()));
    }
    let p = &m.plugin;
    let mut report = CheckReport::with_bound(n.truncation);
    for a in &m.arrows {
        let fa = f.on_arrows.apply(a)?;
        let moved = p.apply_map(&f.on_objects, m.dom_of(a)?)?;
        report.check(
            "graph map",
            &moved == n.dom_of(fa)? && f.on_objects.apply(m.cod_of(a)?)? == n.cod_of(fa)?,
            || a.clone(),
            || format!("{a} goes to {fa}, whose legs do not match"),
        );
    }
    for s in &m.objects {
        let lhs = f.on_arrows.apply(m.id_of(s)?)?;
        let rhs = n.id_of(f.on_objects.apply(s)?)?;
        report.check("identities", lhs == rhs, || s.clone(), || format!("{lhs} vs {rhs}"));
    }
    if !report.passed() {
        return Ok(report);
    }
    for (key, c) in &m.comp {
        let (u, a) = key.as_pair().expect("pair");
        let fu = p.apply_map(&f.on_arrows, u)?;
        match n.compose(&fu, f.on_arrows.apply(a)?)? {
            Some(rhs) => {
                let lhs = f.on_arrows.apply(c)?;
                report.check("composites", lhs == &rhs, || key.clone(), || format!("{lhs} vs {rhs}"))
            }
            None => report.skip("composites"),
        }
    }
    Ok(report)
}

/// The terminal multicategory: one object, one arrow per shape in `T(1)`
/// of size at most `bound`, composites given by `μ` where they stay in bound.
pub fn terminal_multicat(plugin: &Monad, bound: usize) -> Result<Multicategory> {
    let one = FiniteSet::terminal();
    let arrows = FiniteSet::new(plugin.shapes(bound));
    let dom: BTreeMap<Element, Element> = arrows.iter().map(|a| (a.clone(), a.clone())).collect();
    let cod = FiniteMap::to_terminal(&arrows);
    let ids = FiniteMap::new(one.clone(), arrows.clone(), |x| plugin.unit(x))?;
    let mut comp = BTreeMap::new();
    let mut truncated = false;
    for a in &arrows {
        for u in plugin.enumerate_fiber(&cod, a)? {
            let c = plugin.mult(&u)?;
            if arrows.contains(&c) {
                comp.insert(Element::pair(u, a.clone()), c);
            } else {
                truncated = true;
            }
        }
    }
    let finite = matches!(plugin, Monad::Identity | Monad::Exceptions(_) | Monad::Writer(_));
    let truncation = (truncated || !finite).then_some(bound);
    Multicategory::new(plugin.clone(), dom, cod, ids, comp, truncation)
}

/// The unique map into the terminal multicategory, sending each arrow to the
/// shape of its domain.
pub fn map_to_terminal(m: &Multicategory, terminal: &Multicategory) -> Result<MulticategoryMap> {
    let on_arrows = FiniteMap::try_new(m.arrows.clone(), terminal.arrows.clone(), |a| m.plugin.shape(m.dom_of(a)?))?;
    Ok(MulticategoryMap { on_arrows, on_objects: FiniteMap::to_terminal(&m.objects) })
}

/// Every map `m -> n`, found by backtracking. Object images are chosen
/// first, then arrow images in order of increasing arity.
pub fn enumerate_maps(m: &Multicategory, n: &Multicategory, cap: usize) -> Result<Vec<MulticategoryMap>> {
    if m.plugin != n.plugin {
        return Err(Error::Mismatch("multicategories over different monads".into()));
    }
    let p = &m.plugin;
    let mut order: Vec<&Element> = m.arrows.iter().collect();
    let arity = |a: &Element| p.labels(&m.dom[a]).map(|l| l.len()).unwrap_or(0);
    order.sort_by_key(|a| arity(a));
    let no = m.objects.len();
    let obj_var: BTreeMap<&Element, usize> = m.objects.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let arr_var: BTreeMap<&Element, usize> = order.iter().enumerate().map(|(i, a)| (*a, no + i)).collect();
    let mut domains = vec![n.objects.elements().to_vec(); no];
    domains.extend(std::iter::repeat(n.arrows.elements().to_vec()).take(order.len()));
    let mut search = crate::search::Search::new(domains).with_cap(cap);

    let obj_var = &obj_var;
    let arr_var = &arr_var;
    let on_objects = move |part: &crate::search::Partial<'_>| -> FiniteMap {
        FiniteMap::new(m.objects.clone(), n.objects.clone(), |s| part.value(obj_var[s]).clone()).expect("total")
    };
    for a in &m.arrows {
        let va = arr_var[a];
        search.require(&[va], move |part| {
            let fa = part.value(va);
            let g = on_objects(part);
            p.apply_map(&g, &m.dom[a]).ok().as_ref() == n.dom.get(fa)
                && g.apply(m.cod_of(a).expect("total")).ok() == n.cod_of(fa).ok()
        });
    }
    for s in &m.objects {
        let (vs, vi) = (obj_var[s], arr_var[m.id_of(s)?]);
        search.require(&[vs, vi], move |part| n.id_of(part.value(vs)).ok() == Some(part.value(vi)));
    }
    for (key, c) in &m.comp {
        let (u, a) = key.as_pair().expect("pair");
        let labels = p.labels(u)?;
        let mut vars: Vec<usize> = labels.iter().map(|b| arr_var[b]).collect();
        vars.extend([arr_var[a], arr_var[c]]);
        let (va, vc) = (arr_var[a], arr_var[c]);
        search.require(&vars, move |part| {
            let Ok(fu) = p.relabel(u, &mut |b| Ok(part.value(arr_var[b]).clone())) else {
                return false;
            };
            match n.compose(&fu, part.value(va)) {
                Ok(Some(r)) => &r == part.value(vc),
                Ok(None) => true,
                Err(_) => false,
            }
        });
    }
    let mut out = Vec::new();
    search.solve(&mut |values| {
        let on_objects = FiniteMap::from_images(m.objects.clone(), n.objects.clone(), values[..no].to_vec())?;
        let on_arrows = FiniteMap::from_pairs(
            m.arrows.clone(),
            n.arrows.clone(),
            order.iter().zip(&values[no..]).map(|(a, v)| ((*a).clone(), v.clone())),
        )?;
        out.push(MulticategoryMap { on_arrows, on_objects });
        Ok(true)
    })?;
    Ok(out)
}
