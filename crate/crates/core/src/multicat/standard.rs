//! Standard encodings: categories (identity monad), categories with a family
//! of set-valued functors (exceptions), and categories over a monoid (writer).

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::{FiniteMonoid, Monad, MonadPlugin};

use super::Multicategory;

/// A finite category presented by tables. Only typing is checked on
/// construction; the axioms are checked on the encoded multicategory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: FiniteSet,
    /// name ↦ (dom, cod)
    pub arrows: BTreeMap<Element, (Element, Element)>,
    pub identities: BTreeMap<Element, Element>,
    /// (g, f) ↦ g∘f, for every pair with cod f = dom g
    pub composition: BTreeMap<(Element, Element), Element>,
}

impl FiniteCategory {
    pub fn new(
        objects: FiniteSet,
        arrows: BTreeMap<Element, (Element, Element)>,
        identities: BTreeMap<Element, Element>,
        composition: BTreeMap<(Element, Element), Element>,
    ) -> Result<Self> {
        for (a, (d, c)) in &arrows {
            objects.require(d).map_err(|_| Error::Invalid(format!("arrow {a} has unknown domain {d}")))?;
            objects.require(c).map_err(|_| Error::Invalid(format!("arrow {a} has unknown codomain {c}")))?;
        }
        for s in &objects {
            let i = identities.get(s).ok_or_else(|| Error::Invalid(format!("object {s} has no identity")))?;
            if arrows.get(i) != Some(&(s.clone(), s.clone())) {
                return Err(Error::Invalid(format!("identity {i} of {s} is not an endomorphism of {s}")));
            }
        }
        if identities.len() != objects.len() {
            return Err(Error::Invalid("identities must be indexed by the objects".into()));
        }
        let cat = FiniteCategory { objects, arrows, identities, composition };
        let mut expected = 0usize;
        for (g, f) in cat.composable() {
            expected += 1;
            let gf = cat
                .composition
                .get(&(g.clone(), f.clone()))
                .ok_or_else(|| Error::Invalid(format!("composite {g} o {f} is missing")))?;
            let (d, c) = cat.arrows.get(gf).ok_or_else(|| Error::Invalid(format!("composite {gf} is not an arrow")))?;
            if d != &cat.arrows[&f].0 || c != &cat.arrows[&g].1 {
                return Err(Error::Invalid(format!("composite {g} o {f} = {gf} has the wrong type")));
            }
        }
        if expected != cat.composition.len() {
            return Err(Error::Invalid("composition table has entries for non-composable pairs".into()));
        }
        Ok(cat)
    }

    /// Every `(g, f)` with `cod f = dom g`.
    pub fn composable(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for (g, (dg, _)) in &self.arrows {
            for (f, (_, cf)) in &self.arrows {
                if cf == dg {
                    out.push((g.clone(), f.clone()));
                }
            }
        }
        out
    }

    pub fn dom(&self, a: &Element) -> Result<&Element> {
        self.arrows.get(a).map(|(d, _)| d).ok_or_else(|| Error::not_member(a, "category arrows"))
    }

    pub fn cod(&self, a: &Element) -> Result<&Element> {
        self.arrows.get(a).map(|(_, c)| c).ok_or_else(|| Error::not_member(a, "category arrows"))
    }

    pub fn compose(&self, g: &Element, f: &Element) -> Result<&Element> {
        self.composition
            .get(&(g.clone(), f.clone()))
            .ok_or_else(|| Error::Mismatch(format!("{g} and {f} are not composable")))
    }

    /// The category `0 -> 1` with arrows `id0`, `id1`, `f`.
    pub fn arrow_category() -> Self {
        let e = Element::atom;
        let arrows = [("id0", "0", "0"), ("id1", "1", "1"), ("f", "0", "1")]
            .iter()
            .map(|(n, d, c)| (e(n), (e(d), e(c))))
            .collect();
        let identities = [("0", "id0"), ("1", "id1")].iter().map(|(s, i)| (e(s), e(i))).collect();
        let composition = [
            (("id0", "id0"), "id0"),
            (("id1", "id1"), "id1"),
            (("f", "id0"), "f"),
            (("id1", "f"), "f"),
        ]
        .iter()
        .map(|((g, f), c)| ((e(g), e(f)), e(c)))
        .collect();
        FiniteCategory::new(FiniteSet::atoms(["0", "1"]), arrows, identities, composition).expect("valid")
    }

    /// The one-object category of a finite monoid.
    pub fn of_monoid(m: &FiniteMonoid) -> Self {
        let star = Element::star();
        let arrows = m.elements().iter().map(|a| (a.clone(), (star.clone(), star.clone()))).collect();
        let identities = [(star.clone(), m.unit())].into_iter().collect();
        let mut composition = BTreeMap::new();
        for g in &m.elements() {
            for f in &m.elements() {
                composition.insert((g.clone(), f.clone()), m.mul(g, f).expect("in range"));
            }
        }
        FiniteCategory::new(FiniteSet::terminal(), arrows, identities, composition).expect("valid")
    }
}

/// A functor `C -> FinSet` given by its value sets and its action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    pub values: BTreeMap<Element, FiniteSet>,
    /// (arrow, y) ↦ F(arrow)(y)
    pub action: BTreeMap<(Element, Element), Element>,
}

impl SetFunctor {
    pub fn apply(&self, f: &Element, y: &Element) -> Result<&Element> {
        self.action
            .get(&(f.clone(), y.clone()))
            .ok_or_else(|| Error::Invalid(format!("functor action undefined at ({f}, {y})")))
    }
}

/// Input for [`standard_multicat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardData {
    Category(FiniteCategory),
    /// One functor per exception value.
    WithSetFunctors { category: FiniteCategory, functors: BTreeMap<Element, SetFunctor> },
    /// A functor to the one-object category of the monoid.
    OverMonoid { category: FiniteCategory, monoid: FiniteMonoid, labels: BTreeMap<Element, Element> },
}

const ELT: &str = "elt";

fn element_arrow(e: &Element, s: &Element, y: &Element) -> Element {
    Element::tag(ELT, Element::pair(e.clone(), Element::pair(s.clone(), y.clone())))
}

/// Encodes without checking the axioms.
pub fn encode_standard(data: &StandardData) -> Result<Multicategory> {
    match data {
        StandardData::Category(c) => encode(c, Monad::Identity, |_| Ok(None), |a| Ok(c.dom(a)?.clone())),
        StandardData::WithSetFunctors { category: c, functors } => {
            let errors = FiniteSet::new(functors.keys().cloned());
            let plugin = Monad::exceptions(errors);
            let mut extra = Vec::new();
            for (e, y) in functors {
                for s in &c.objects {
                    let vals = y
                        .values
                        .get(s)
                        .ok_or_else(|| Error::Invalid(format!("functor {e} has no value at {s}")))?;
                    for v in vals {
                        extra.push((element_arrow(e, s, v), (Element::tag("exc", e.clone()), s.clone())));
                    }
                }
            }
            let mut m = encode(c, plugin.clone(), |_| Ok(None), |a| Ok(Element::tag("val", c.dom(a)?.clone())))?;
            let mut dom = m.dom.clone();
            let mut cods: Vec<(Element, Element)> = m.cod.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
            for (a, (d, s)) in &extra {
                dom.insert(a.clone(), d.clone());
                cods.push((a.clone(), s.clone()));
            }
            let arrows = FiniteSet::new(dom.keys().cloned());
            let cod = FiniteMap::from_pairs(arrows.clone(), c.objects.clone(), cods)?;
            let ids = FiniteMap::new(c.objects.clone(), arrows.clone(), |s| c.identities[s].clone())?;
            let mut comp = m.comp.clone();
            for (a, (d, _)) in &extra {
                // an element composed with a category arrow
                let (e, sy) = a.as_tag().expect("tag").1.as_pair().expect("pair");
                let (s, y) = sy.as_pair().expect("pair");
                let _ = d;
                for (g, (dg, cg)) in &c.arrows {
                    if dg == s {
                        let moved = functors[e].apply(g, y)?;
                        comp.insert(
                            Element::pair(Element::tag("val", a.clone()), g.clone()),
                            element_arrow(e, cg, moved),
                        );
                    }
                }
                // nothing to substitute into an element
                comp.insert(Element::pair(Element::tag("exc", e.clone()), a.clone()), a.clone());
            }
            m = Multicategory::new(plugin, dom, cod, ids, comp, None)?;
            Ok(m)
        }
        StandardData::OverMonoid { category: c, monoid, labels } => {
            let plugin = Monad::writer(monoid.clone());
            let label = |a: &Element| -> Result<Element> {
                labels.get(a).cloned().ok_or_else(|| Error::Invalid(format!("arrow {a} has no label")))
            };
            for l in labels.values() {
                monoid.index(l).map_err(|_| Error::Invalid(format!("label {l} is not a monoid element")))?;
            }
            encode(c, plugin, |a| label(a).map(Some), |a| Ok(Element::pair(label(a)?, c.dom(a)?.clone())))
        }
    }
}

/// Shared encoding of the category part. `wrap(f)` is the label put around
/// `f` in the key of a composite (exceptions use `val`, writer uses the
/// label of the outer arrow).
fn encode(
    c: &FiniteCategory,
    plugin: Monad,
    writer_label: impl Fn(&Element) -> Result<Option<Element>>,
    dom_of: impl Fn(&Element) -> Result<Element>,
) -> Result<Multicategory> {
    let arrows = FiniteSet::new(c.arrows.keys().cloned());
    let dom = arrows.iter().map(|a| Ok((a.clone(), dom_of(a)?))).collect::<Result<BTreeMap<_, _>>>()?;
    let cod = FiniteMap::try_new(arrows.clone(), c.objects.clone(), |a| c.cod(a).cloned())?;
    let ids = FiniteMap::new(c.objects.clone(), arrows.clone(), |s| c.identities[s].clone())?;
    let mut comp = BTreeMap::new();
    for (g, f) in c.composable() {
        let u = match (&plugin, writer_label(&g)?) {
            (Monad::Identity, _) => f.clone(),
            (Monad::Exceptions(_), _) => Element::tag("val", f.clone()),
            (Monad::Writer(_), Some(l)) => Element::pair(l, f.clone()),
            _ => return Err(Error::Invalid("unsupported standard encoding".into())),
        };
        comp.insert(Element::pair(u, g.clone()), c.compose(&g, &f)?.clone());
    }
    Multicategory::new(plugin, dom, cod, ids, comp, None)
}

/// Encodes and checks the axioms; errors on invalid category data.
pub fn standard_multicat(data: &StandardData) -> Result<Multicategory> {
    let m = encode_standard(data)?;
    let report = m.check_axioms()?;
    match report.first_failure() {
        None => Ok(m),
        Some(w) => Err(Error::Invalid(format!("not a valid category: {w}"))),
    }
}

/// Recovers the underlying category of an identity-, exceptions- or
/// writer-multicategory whose ordinary arrows have `val`/writer domains.
pub fn extract_standard(m: &Multicategory) -> Result<StandardData> {
    let p = &m.plugin;
    let plain = |a: &Element| -> Result<Option<(Element, Option<Element>)>> {
        let d = m.dom_of(a)?;
        Ok(match p {
            Monad::Identity => Some((d.clone(), None)),
            Monad::Exceptions(_) => match d.as_tag() {
                Some(("val", s)) => Some((s.clone(), None)),
                _ => None,
            },
            Monad::Writer(_) => d.as_pair().map(|(l, s)| (s.clone(), Some(l.clone()))),
            _ => return Err(Error::Invalid(format!("no standard encoding for the {} monad", p.name()))),
        })
    };
    let mut arrows = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for a in &m.arrows {
        if let Some((d, l)) = plain(a)? {
            arrows.insert(a.clone(), (d, m.cod_of(a)?.clone()));
            if let Some(l) = l {
                labels.insert(a.clone(), l);
            }
        }
    }
    let identities = m.objects.iter().map(|s| Ok((s.clone(), m.id_of(s)?.clone()))).collect::<Result<_>>()?;
    let mut composition = BTreeMap::new();
    for (g, (dg, _)) in &arrows {
        for (f, (_, cf)) in &arrows {
            if cf != dg {
                continue;
            }
            let u = match p {
                Monad::Identity => f.clone(),
                Monad::Exceptions(_) => Element::tag("val", f.clone()),
                _ => Element::pair(labels[g].clone(), f.clone()),
            };
            let c = m
                .compose(&u, g)?
                .ok_or_else(|| Error::Invalid(format!("composite of {f} and {g} is missing")))?;
            composition.insert((g.clone(), f.clone()), c);
        }
    }
    let category = FiniteCategory::new(m.objects.clone(), arrows, identities, composition)?;
    Ok(match p {
        Monad::Identity => StandardData::Category(category),
        Monad::Writer(monoid) => StandardData::OverMonoid { category, monoid: monoid.clone(), labels },
        Monad::Exceptions(errors) => {
            let mut functors = BTreeMap::new();
            for e in errors {
                let mut values: BTreeMap<Element, Vec<Element>> =
                    m.objects.iter().map(|s| (s.clone(), Vec::new())).collect();
                let mut names = BTreeMap::new();
                for a in &m.arrows {
                    if m.dom_of(a)? == &Element::tag("exc", e.clone()) {
                        let y = match a.as_tag() {
                            Some((ELT, inner)) => inner.as_pair().and_then(|(_, sy)| sy.as_pair()).map(|(_, y)| y.clone()),
                            _ => None,
                        }
                        .unwrap_or_else(|| a.clone());
                        values.get_mut(m.cod_of(a)?).expect("object").push(y.clone());
                        names.insert(a.clone(), y);
                    }
                }
                let mut action = BTreeMap::new();
                for (x, y) in &names {
                    for g in category.arrows.keys() {
                        if category.dom(g)? == m.cod_of(x)? {
                            let c = m
                                .compose(&Element::tag("val", x.clone()), g)?
                                .ok_or_else(|| Error::Invalid(format!("composite of {x} and {g} is missing")))?;
                            action.insert((g.clone(), y.clone()), names[&c].clone());
                        }
                    }
                }
                let values = values.into_iter().map(|(s, v)| (s, FiniteSet::new(v))).collect();
                functors.insert(e.clone(), SetFunctor { values, action });
            }
            StandardData::WithSetFunctors { category, functors }
        }
        _ => unreachable!("checked above"),
    })
}
