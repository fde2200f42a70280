//! Structured categories (category objects in `T`-algebras) and the free /
//! underlying pair `F ⊣ U` relating them to multicategories.
//!
//! The tensors `T(R) -> R` and `T(B) -> B` are stored as bounded tables: an
//! entry for every `T`-element whose labels have weights summing to at most
//! the bound, where a label weighs the larger of 1 and the sizes of its
//! endpoints. Laws are checked wherever all the entries they mention exist.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::{Monad, MonadPlugin};
use crate::multicat::{Multicategory, MulticategoryMap};
use crate::report::CheckReport;
use crate::search::{Search, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredCategory {
    pub plugin: Monad,
    pub objects: FiniteSet,
    pub arrows: FiniteSet,
    pub source: FiniteMap,
    pub target: FiniteMap,
    pub ids: FiniteMap,
    /// `(g, f) ↦ g∘f` for `source(g) = target(f)`; may omit pairs whose
    /// composite is out of bound.
    pub comp: BTreeMap<Element, Element>,
    pub tensor_objects: BTreeMap<Element, Element>,
    pub tensor_arrows: BTreeMap<Element, Element>,
    pub bound: usize,
}

fn weight(p: &Monad, e: &Element) -> Result<usize> {
    Ok(p.size(e)?.max(1))
}

/// The bounded table of `⊗` on `T(X)` for weighted labels, keeping entries
/// whose value lands in `keep`.
fn tensor_table(
    p: &Monad,
    labels: &[(Element, usize)],
    bound: usize,
    tensor: impl Fn(&Element) -> Result<Option<Element>>,
) -> Result<BTreeMap<Element, Element>> {
    let mut out = BTreeMap::new();
    for (rho, _) in p.enumerate_weighted(labels, bound)? {
        if let Some(v) = tensor(&rho)? {
            out.insert(rho, v);
        }
    }
    Ok(out)
}

impl StructuredCategory {
    pub fn hom(&self, from: &Element, to: &Element) -> Vec<&Element> {
        self.arrows
            .iter()
            .zip(self.source.images().iter().zip(self.target.images()))
            .filter(|(_, (q, p))| *q == from && *p == to)
            .map(|(b, _)| b)
            .collect()
    }

    pub fn hom_count(&self, from: &Element, to: &Element) -> usize {
        self.hom(from, to).len()
    }

    pub fn compose(&self, g: &Element, f: &Element) -> Option<&Element> {
        self.comp.get(&Element::pair(g.clone(), f.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "monad": self.plugin.to_json(),
            "bound": self.bound,
            "objects": self.objects.iter().map(Element::to_json).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().zip(self.source.images().iter().zip(self.target.images()))
                .map(|(b, (q, p))| json!({ "name": b.to_json(), "source": q.to_json(), "target": p.to_json() }))
                .collect::<Vec<_>>(),
            "composites": self.comp.len(),
            "tensor_objects": self.tensor_objects.len(),
            "tensor_arrows": self.tensor_arrows.len(),
        })
    }
}

/// `F(M)`: objects are `T`-elements over the objects, arrows are
/// `T`-elements `u` over the arrows, from `μ(T(dom)(u))` to `T(cod)(u)`,
/// both of size at most `bound`. Composition is componentwise in `M` and the
/// tensors are `μ`.
pub fn free_structured(m: &Multicategory, bound: usize) -> Result<StructuredCategory> {
    let p = &m.plugin;
    let objects = FiniteSet::new(p.enumerate_telements(&m.objects, bound)?);
    let source_of = |u: &Element| -> Result<Element> { p.mult(&p.relabel(u, &mut |a| Ok(m.dom_of(a)?.clone()))?) };
    let mut arrows = Vec::new();
    for u in p.enumerate_telements(&m.arrows, bound)? {
        if objects.contains(&source_of(&u)?) && objects.contains(&p.apply_map(&m.cod, &u)?) {
            arrows.push(u);
        }
    }
    let arrows = FiniteSet::new(arrows);
    let source = FiniteMap::try_new(arrows.clone(), objects.clone(), source_of)?;
    let target = FiniteMap::try_new(arrows.clone(), objects.clone(), |u| p.apply_map(&m.cod, u))?;
    let ids = FiniteMap::try_new(objects.clone(), arrows.clone(), |r| p.apply_map(&m.ids, r))?;

    let mut by_source: BTreeMap<&Element, Vec<&Element>> = BTreeMap::new();
    for (g, q) in arrows.iter().zip(source.images()) {
        by_source.entry(q).or_default().push(g);
    }
    let mut comp = BTreeMap::new();
    for (f, pf) in arrows.iter().zip(target.images()) {
        for g in by_source.get(pf).into_iter().flatten() {
            if let Some(c) = componentwise(m, g, f)? {
                if arrows.contains(&c) {
                    comp.insert(Element::pair((*g).clone(), f.clone()), c);
                }
            }
        }
    }

    let weighted = |set: &FiniteSet, ends: &dyn Fn(&Element) -> Result<usize>| -> Result<Vec<(Element, usize)>> {
        set.iter().map(|e| Ok((e.clone(), ends(e)?))).collect()
    };
    let obj_w = weighted(&objects, &|r| weight(p, r))?;
    let arr_w = weighted(&arrows, &|b| {
        Ok(weight(p, source.apply(b)?)?.max(weight(p, target.apply(b)?)?))
    })?;
    let tensor_objects = tensor_table(p, &obj_w, bound, |rho| {
        let r = p.mult(rho)?;
        Ok(objects.contains(&r).then_some(r))
    })?;
    let tensor_arrows = tensor_table(p, &arr_w, bound, |rho| {
        let b = p.mult(rho)?;
        Ok(arrows.contains(&b).then_some(b))
    })?;
    Ok(StructuredCategory { plugin: p.clone(), objects, arrows, source, target, ids, comp, tensor_objects, tensor_arrows, bound })
}

/// `g∘f` in `F(M)`: split `f` into the blocks feeding each label of `g` and
/// compose each block with its label in `M`.
fn componentwise(m: &Multicategory, g: &Element, f: &Element) -> Result<Option<Element>> {
    let p = &m.plugin;
    let blocks = p.relabel(g, &mut |a| Ok(m.dom_of(a)?.clone()))?;
    let split = p.unflatten(&blocks, f)?;
    let pairs = p.zip(&split, g)?;
    let mut missing = false;
    let out = p.relabel(&pairs, &mut |pair| {
        let (u, a) = pair.as_pair().expect("zip yields pairs");
        Ok(m.compose(u, a)?.unwrap_or_else(|| {
            missing = true;
            a.clone()
        }))
    })?;
    Ok((!missing).then_some(out))
}

/// The terminal structured category: one object, one arrow.
pub fn terminal_structured(plugin: &Monad, bound: usize) -> Result<StructuredCategory> {
    let one = FiniteSet::terminal();
    let star = Element::star();
    let all = |_: &Element| Ok(Some(star.clone()));
    let w = [(star.clone(), 1)];
    Ok(StructuredCategory {
        plugin: plugin.clone(),
        objects: one.clone(),
        arrows: one.clone(),
        source: FiniteMap::identity(&one),
        target: FiniteMap::identity(&one),
        ids: FiniteMap::identity(&one),
        comp: [(Element::pair(star.clone(), star.clone()), star.clone())].into(),
        tensor_objects: tensor_table(plugin, &w, bound, all)?,
        tensor_arrows: tensor_table(plugin, &w, bound, all)?,
        bound,
    })
}

/// `U(B)`: objects `R`; an arrow `(t, b)` for each tensor entry `t ↦ ⊗t`
/// and arrow `b` out of `⊗t`, with `dom = t` and `cod = target(b)`.
pub fn underlying_multicat(b: &StructuredCategory) -> Result<Multicategory> {
    let p = &b.plugin;
    let mut dom = BTreeMap::new();
    for (t, r) in &b.tensor_objects {
        for (x, q) in b.arrows.iter().zip(b.source.images()) {
            if q == r {
                dom.insert(Element::pair(t.clone(), x.clone()), t.clone());
            }
        }
    }
    let arrows = FiniteSet::new(dom.keys().cloned());
    let second = |x: &Element| x.as_pair().expect("arrow pair").1.clone();
    let cod = FiniteMap::try_new(arrows.clone(), b.objects.clone(), |x| b.target.apply(&second(x)).cloned())?;
    let ids = FiniteMap::try_new(b.objects.clone(), arrows.clone(), |r| {
        Ok(Element::pair(p.unit(r), b.ids.apply(r)?.clone()))
    })
    .map_err(|_| Error::Invalid("the tensor table lacks unit entries".into()))?;
    let project = FiniteMap::new(arrows.clone(), b.arrows.clone(), second)?;
    let mut comp = BTreeMap::new();
    for x in &arrows {
        let (t, last) = x.as_pair().expect("arrow pair");
        for u in p.enumerate_fiber(&cod, t)? {
            let new_t = p.mult(&p.relabel(&u, &mut |y| Ok(dom[y].clone()))?)?;
            let Some(inner) = b.tensor_arrows.get(&p.apply_map(&project, &u)?) else { continue };
            let Some(c) = b.compose(last, inner) else { continue };
            let c = Element::pair(new_t, c.clone());
            if arrows.contains(&c) {
                comp.insert(Element::pair(u, x.clone()), c);
            }
        }
    }
    Multicategory::new(p.clone(), dom, cod, ids, comp, Some(b.bound))
}

/// Category axioms, tensor laws, and that source, target, identities and
/// composition preserve the tensor. Instances built from tensor entries use
/// only entries of weight at most `law_bound`.
pub fn check_structured(b: &StructuredCategory, law_bound: usize) -> Result<CheckReport> {
    let p = &b.plugin;
    let mut r = CheckReport::with_bound(Some(b.bound));
    for (o, i) in b.objects.iter().zip(b.ids.images()) {
        let ok = b.source.apply(i)? == o && b.target.apply(i)? == o;
        r.check("identity legs", ok, || o.clone(), || format!("{i} is not an endomorphism of {o}"));
    }
    for (f, (q, t)) in b.arrows.iter().zip(b.source.images().iter().zip(b.target.images())) {
        let (idq, idt) = (b.ids.apply(q)?, b.ids.apply(t)?);
        match b.compose(f, idq) {
            Some(c) => r.check("right unit", c == f, || f.clone(), || format!("f∘id = {c}")),
            None => r.skip("right unit"),
        }
        match b.compose(idt, f) {
            Some(c) => r.check("left unit", c == f, || f.clone(), || format!("id∘f = {c}")),
            None => r.skip("left unit"),
        }
    }
    for (key, c) in &b.comp {
        let (g, f) = key.as_pair().expect("comp key");
        let ok = b.source.apply(c)? == b.source.apply(f)? && b.target.apply(c)? == b.target.apply(g)?;
        r.check("composite legs", ok, || key.clone(), || format!("{c} has the wrong endpoints"));
        for h in b.arrows.iter().filter(|h| b.source.apply(h).ok() == b.target.apply(g).ok()) {
            let lhs = b.compose(h, g).and_then(|hg| b.compose(hg, f));
            let rhs = b.compose(h, c);
            match (lhs, rhs) {
                (Some(x), Some(y)) => r.check("associativity", x == y, || key.clone(), || format!("{x} vs {y}")),
                _ => r.skip("associativity"),
            }
        }
    }
    tensor_laws(p, &b.tensor_objects, &b.objects, law_bound, "objects", &mut r)?;
    tensor_laws(p, &b.tensor_arrows, &b.arrows, law_bound, "arrows", &mut r)?;

    for (name, leg) in [("source", &b.source), ("target", &b.target)] {
        for (rho, x) in &b.tensor_arrows {
            match b.tensor_objects.get(&p.apply_map(leg, rho)?) {
                Some(y) => r.check(&format!("{name} preserves tensor"), leg.apply(x)? == y, || rho.clone(), || y.to_string()),
                None => r.skip(&format!("{name} preserves tensor")),
            }
        }
    }
    for (rho, o) in &b.tensor_objects {
        match b.tensor_arrows.get(&p.apply_map(&b.ids, rho)?) {
            Some(y) => r.check("identities preserve tensor", b.ids.apply(o)? == y, || rho.clone(), || y.to_string()),
            None => r.skip("identities preserve tensor"),
        }
    }
    // interchange: ⊗(g_i)∘⊗(f_i) = ⊗(g_i∘f_i)
    for (rf, f) in b.tensor_arrows.iter().filter(|(k, _)| p.size(k).map_or(false, |s| s <= law_bound)) {
        let fs = p.labels(rf)?;
        let choices: Vec<Vec<&Element>> = fs
            .iter()
            .map(|fi| Ok(b.arrows.iter().filter(|g| b.source.apply(g).ok() == b.target.apply(fi).ok()).collect()))
            .collect::<Result<_>>()?;
        for gs in cartesian_product(&choices) {
            let rg = p.with_labels(rf, &gs)?;
            let Some(g) = b.tensor_arrows.get(&rg) else {
                r.skip("interchange");
                continue;
            };
            let pointwise: Option<Vec<Element>> = gs.iter().zip(&fs).map(|(gi, fi)| b.compose(gi, fi).cloned()).collect();
            let both = pointwise
                .map(|cs| p.with_labels(rf, &cs))
                .transpose()?
                .and_then(|rc| b.tensor_arrows.get(&rc))
                .zip(b.compose(g, f));
            match both {
                Some((x, y)) => r.check("interchange", x == y, || Element::pair(rg.clone(), rf.clone()), || format!("{x} vs {y}")),
                None => r.skip("interchange"),
            }
        }
    }
    Ok(r)
}

fn cartesian_product(choices: &[Vec<&Element>]) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.into_iter().flat_map(|prefix| c.iter().map(move |x| [prefix.clone(), vec![(*x).clone()]].concat())).collect();
    }
    out
}

/// `⊗(η x) = x` and `⊗(μ ρρ) = ⊗(T(⊗)(ρρ))` for `ρρ` built from entries of
/// weight at most `law_bound`.
fn tensor_laws(
    p: &Monad,
    table: &BTreeMap<Element, Element>,
    carrier: &FiniteSet,
    law_bound: usize,
    what: &str,
    r: &mut CheckReport,
) -> Result<()> {
    let unit_law = format!("tensor unit on {what}");
    for x in carrier {
        match table.get(&p.unit(x)) {
            Some(y) => r.check(&unit_law, y == x, || x.clone(), || y.to_string()),
            None => r.skip(&unit_law),
        }
    }
    let assoc = format!("tensor associativity on {what}");
    let keys: Vec<(Element, usize)> = table
        .keys()
        .map(|k| Ok((k.clone(), weight(p, k)?)))
        .filter(|w| w.as_ref().map_or(true, |(_, n)| *n <= law_bound))
        .collect::<Result<_>>()?;
    for (rr, _) in p.enumerate_weighted(&keys, law_bound)? {
        let flat = table.get(&p.mult(&rr)?);
        let inner = p.relabel(&rr, &mut |k| Ok(table[k].clone()))?;
        match (flat, table.get(&inner)) {
            (Some(x), Some(y)) => r.check(&assoc, x == y, || rr.clone(), || format!("{x} vs {y}")),
            _ => r.skip(&assoc),
        }
    }
    Ok(())
}

/// A map of structured categories: on objects and on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredMap {
    pub on_objects: FiniteMap,
    pub on_arrows: FiniteMap,
}

/// Every map `b1 -> b2` that commutes with source, target, identities,
/// composition and both tensors, wherever the needed entries exist in `b2`.
pub fn structured_maps(b1: &StructuredCategory, b2: &StructuredCategory, cap: usize) -> Result<Vec<StructuredMap>> {
    if b1.plugin != b2.plugin {
        return Err(Error::Mismatch("structured categories over different monads".into()));
    }
    let p = &b1.plugin;
    let no = b1.objects.len();
    let obj = |x: &Element| b1.objects.require(x);
    let arr = |x: &Element| Ok(no + b1.arrows.require(x)?);
    let mut domains = vec![b2.objects.elements().to_vec(); no];
    domains.extend(vec![b2.arrows.elements().to_vec(); b1.arrows.len()]);
    let mut search = Search::new(domains).with_cap(cap);

    for (i, x) in b1.arrows.iter().enumerate() {
        let (q, t) = (obj(b1.source.apply(x)?)?, obj(b1.target.apply(x)?)?);
        let v = no + i;
        search.require(&[q, t, v], move |s| {
            b2.source.apply(s.value(v)).ok() == Some(s.value(q)) && b2.target.apply(s.value(v)).ok() == Some(s.value(t))
        });
    }
    for (o, id) in b1.objects.iter().zip(b1.ids.images()) {
        let (o, id) = (obj(o)?, arr(id)?);
        search.require(&[o, id], move |s| b2.ids.apply(s.value(o)).ok() == Some(s.value(id)));
    }
    for (key, c) in &b1.comp {
        let (g, f) = key.as_pair().expect("comp key");
        let (g, f, c) = (arr(g)?, arr(f)?, arr(c)?);
        search.require(&[g, f, c], move |s| b2.compose(s.value(g), s.value(f)).map_or(true, |x| x == s.value(c)));
    }
    for (table1, table2, index) in [
        (&b1.tensor_objects, &b2.tensor_objects, &obj as &dyn Fn(&Element) -> Result<usize>),
        (&b1.tensor_arrows, &b2.tensor_arrows, &arr),
    ] {
        for (rho, x) in table1 {
            let vars: Vec<usize> = p.labels(rho)?.iter().map(index).collect::<Result<_>>()?;
            let xv = index(x)?;
            let mut all = vars.clone();
            all.push(xv);
            let rho = rho.clone();
            search.add(&all, move |s| {
                let image: Vec<Element> = vars.iter().map(|&v| s.value(v).clone()).collect();
                match p.with_labels(&rho, &image).ok().and_then(|e| table2.get(&e)) {
                    None => Verdict::Holds,
                    Some(y) if y == s.value(xv) => Verdict::Holds,
                    Some(_) => Verdict::Fails,
                }
            });
        }
    }
    search
        .all()?
        .into_iter()
        .map(|v| {
            Ok(StructuredMap {
                on_objects: FiniteMap::from_images(b1.objects.clone(), b2.objects.clone(), v[..no].to_vec())?,
                on_arrows: FiniteMap::from_images(b1.arrows.clone(), b2.arrows.clone(), v[no..].to_vec())?,
            })
        })
        .collect()
}

/// `U(f)`: `(t, b) ↦ (T(f)(t), f(b))`.
pub fn underlying_map(f: &StructuredMap, u1: &Multicategory, u2: &Multicategory) -> Result<MulticategoryMap> {
    let p = &u1.plugin;
    let on_arrows = FiniteMap::try_new(u1.arrows.clone(), u2.arrows.clone(), |x| {
        let (t, b) = x.as_pair().expect("arrow pair");
        Ok(Element::pair(p.apply_map(&f.on_objects, t)?, f.on_arrows.apply(b)?.clone()))
    })?;
    Ok(MulticategoryMap { on_arrows, on_objects: f.on_objects.clone() })
}

/// The map from the terminal multicategory `U(1)` into `U(Δ)` picking the
/// object `[*]`: a valid multicategory map with no structured lift.
#[derive(Clone, Debug)]
pub struct FaithfulNotFull {
    pub map: MulticategoryMap,
    pub map_report: CheckReport,
    /// Structured maps `1 -> Δ` whose object part sends `*` to `[*]`.
    pub lifts: usize,
    /// All structured maps `1 -> Δ`.
    pub structured_maps: usize,
}

pub fn faithful_not_full(bound: usize) -> Result<FaithfulNotFull> {
    let p = Monad::FreeMonoid;
    let one = terminal_structured(&p, bound)?;
    let delta = free_structured(&crate::multicat::terminal_multicat(&p, bound)?, bound)?;
    let (u1, ud) = (underlying_multicat(&one)?, underlying_multicat(&delta)?);
    let point = p.unit(&Element::star());
    let on_objects = FiniteMap::new(u1.objects.clone(), ud.objects.clone(), |_| point.clone())?;
    let on_arrows = FiniteMap::try_new(u1.arrows.clone(), ud.arrows.clone(), |x| {
        let image_dom = p.apply_map(&on_objects, u1.dom_of(x)?)?;
        ud.arrows
            .iter()
            .find(|y| ud.dom_of(y).ok() == Some(&image_dom) && ud.cod_of(y).ok() == Some(&point))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no arrow over {image_dom} in U(Δ)")))
    })?;
    let map = MulticategoryMap { on_arrows, on_objects };
    let map_report = crate::multicat::check_map(&map, &u1, &ud)?;
    let all = structured_maps(&one, &delta, 1_000_000)?;
    let lifts = all.iter().filter(|f| f.on_objects.images() == [point.clone()]).count();
    Ok(FaithfulNotFull { map, map_report, lifts, structured_maps: all.len() })
}

/// The unit `M -> U(F(M))` is a multicategory map, and both triangle
/// identities hold on the bounded fragment.
pub fn triangle_identities(m: &Multicategory, bound: usize) -> Result<CheckReport> {
    let p = &m.plugin;
    let fm = free_structured(m, bound)?;
    let ufm = underlying_multicat(&fm)?;
    let on_objects = FiniteMap::new(m.objects.clone(), ufm.objects.clone(), |s| p.unit(s))
        .map_err(|_| Error::Invalid("bound too small for the unit".into()))?;
    let on_arrows = FiniteMap::try_new(m.arrows.clone(), ufm.arrows.clone(), |a| {
        Ok(Element::pair(p.apply_map(&on_objects, m.dom_of(a)?)?, p.unit(a)))
    })?;
    let unit = MulticategoryMap { on_arrows, on_objects };
    let mut r = crate::multicat::check_map(&unit, m, &ufm)?;
    let eta_s = FiniteMap::new(m.objects.clone(), fm.objects.clone(), |s| p.unit(s))?;
    for w in &fm.objects {
        // ε ∘ F(η) on objects: ⊗(T(η)(w)) = μ(T(η)(w))
        let back = fm.tensor_objects.get(&p.relabel(w, &mut |s| Ok(eta_s.apply(s)?.clone()))?);
        match back {
            Some(x) => r.check("counit after free unit", x == w, || w.clone(), || x.to_string()),
            None => r.skip("counit after free unit"),
        }
    }
    for (name, table, carrier) in [("objects", &fm.tensor_objects, &fm.objects), ("arrows", &fm.tensor_arrows, &fm.arrows)] {
        let law = format!("U(counit) after unit on {name}");
        for x in carrier {
            match table.get(&p.unit(x)) {
                Some(y) => r.check(&law, y == x, || x.clone(), || y.to_string()),
                None => r.skip(&law),
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::standard::{standard_multicat, FiniteCategory, StandardData};
    use crate::multicat::terminal_multicat;

    fn word(n: usize) -> Element {
        Element::seq(vec![Element::star(); n])
    }

    /// Ways to write `m` as an ordered sum of `n` naturals.
    fn weak_compositions(m: usize, n: usize) -> usize {
        match n {
            0 => usize::from(m == 0),
            _ => (0..=m).map(|k| weak_compositions(m - k, n - 1)).sum(),
        }
    }

    fn delta(bound: usize) -> StructuredCategory {
        free_structured(&terminal_multicat(&Monad::FreeMonoid, bound).unwrap(), bound).unwrap()
    }

    #[test]
    fn delta_hom_counts() {
        let d = delta(5);
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(d.hom_count(&word(m), &word(n)), weak_compositions(m, n), "{m} -> {n}");
            }
        }
    }

    #[test]
    fn delta_is_a_structured_category() {
        let r = check_structured(&delta(3), 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checked["interchange"] > 0);
    }

    #[test]
    fn identity_monad_gives_the_category_back() {
        let c = standard_multicat(&StandardData::Category(FiniteCategory::arrow_category())).unwrap();
        let b = free_structured(&c, 1).unwrap();
        assert_eq!((&b.objects, &b.arrows), (&c.objects, &c.arrows));
        assert!(check_structured(&b, 1).unwrap().passed());
        let u = underlying_multicat(&b).unwrap();
        assert_eq!(u.arrows.len(), c.arrows.len());
    }

    #[test]
    fn underlying_delta_has_one_collapse_per_arity() {
        let u = underlying_multicat(&delta(3)).unwrap();
        for n in 0..=3 {
            let dom = Element::seq(vec![word(1); n]);
            let count = u.arrows.iter().filter(|a| u.dom_of(a).unwrap() == &dom && u.cod_of(a).unwrap() == &word(1)).count();
            assert_eq!(count, 1, "arity {n}");
        }
    }

    #[test]
    fn forgetful_functor_is_not_full() {
        let w = faithful_not_full(2).unwrap();
        assert!(w.map_report.passed());
        assert_eq!((w.lifts, w.structured_maps), (0, 1));
    }

    #[test]
    fn forgetful_functor_is_faithful_on_delta() {
        let d = delta(2);
        let u = underlying_multicat(&d).unwrap();
        let maps = structured_maps(&d, &d, 1_000_000).unwrap();
        assert!(!maps.is_empty());
        // U(f) on the arrows whose image stays inside the bounded fragment
        let partial = |f: &StructuredMap| -> Vec<Option<Element>> {
            u.arrows
                .iter()
                .map(|x| {
                    let (t, b) = x.as_pair().unwrap();
                    let y = Element::pair(d.plugin.apply_map(&f.on_objects, t).ok()?, f.on_arrows.apply(b).ok()?.clone());
                    u.arrows.contains(&y).then_some(y)
                })
                .collect()
        };
        let mut images: Vec<_> = maps.iter().map(partial).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), maps.len());
    }

    #[test]
    fn triangles() {
        let t = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let r = triangle_identities(&t, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
