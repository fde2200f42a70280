//! Moving multicategories between monads along cartesian natural
//! transformations `φ: T′ -> T` (monad maps over the identity functor).
//!
//! Every transformation here is determined by its component at `1`: a
//! translation of shapes that preserves the number of positions. At a set
//! `X` it keeps the labels in order and translates the shape, which makes it
//! natural and cartesian by construction whenever the shape counts agree.
//! The unit and multiplication axioms are checked, not assumed.

pub mod characterization;
pub mod structured;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{is_pullback, FiniteMap, FiniteSet, Square};
use crate::monads::{FiniteMonoid, Monad, MonadPlugin};
use crate::multicat::Multicategory;
use crate::report::CheckReport;
use crate::search::{Search, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Identity,
    /// `η: Id -> T`.
    Unit,
    /// Writer monads along a monoid homomorphism, given on indices.
    MonoidHom(Vec<usize>),
    /// Trees to their leaf sequences.
    Leaves,
    /// An extensional table of shapes in `T′(1)` and their images in `T(1)`.
    Table(BTreeMap<Element, Element>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianNatTrans {
    pub source: Monad,
    pub target: Monad,
    pub component: Component,
}

impl CartesianNatTrans {
    pub fn identity(t: &Monad) -> Self {
        CartesianNatTrans { source: t.clone(), target: t.clone(), component: Component::Identity }
    }

    pub fn unit(t: &Monad) -> Self {
        CartesianNatTrans { source: Monad::Identity, target: t.clone(), component: Component::Unit }
    }

    pub fn leaves() -> Self {
        CartesianNatTrans { source: Monad::Tree, target: Monad::FreeMonoid, component: Component::Leaves }
    }

    pub fn monoid_hom(from: &FiniteMonoid, to: &FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != from.order() || map.iter().any(|&i| i >= to.order()) {
            return Err(Error::Invalid("a monoid map needs one image in range per element".into()));
        }
        if map[from.index(&from.unit())?] != to.index(&to.unit())? {
            return Err(Error::Invalid("a monoid map must preserve the unit".into()));
        }
        for a in 0..from.order() {
            for b in 0..from.order() {
                if map[from.table()[a][b]] != to.table()[map[a]][map[b]] {
                    return Err(Error::Invalid(format!("the monoid map does not preserve {a}·{b}")));
                }
            }
        }
        Ok(CartesianNatTrans {
            source: Monad::writer(from.clone()),
            target: Monad::writer(to.clone()),
            component: Component::MonoidHom(map),
        })
    }

    /// A table on shapes; each entry must preserve the number of positions.
    pub fn table(source: Monad, target: Monad, entries: BTreeMap<Element, Element>) -> Result<Self> {
        for (s, t) in &entries {
            source.validate(s, &FiniteSet::terminal())?;
            target.validate(t, &FiniteSet::terminal())?;
            if source.labels(s)?.len() != target.labels(t)?.len() {
                return Err(Error::Invalid(format!("{s} and {t} have different numbers of positions")));
            }
        }
        Ok(CartesianNatTrans { source, target, component: Component::Table(entries) })
    }

    pub fn translate_shape(&self, s: &Element) -> Result<Element> {
        match &self.component {
            Component::Identity => Ok(s.clone()),
            Component::Unit => Ok(self.target.unit(s)),
            Component::MonoidHom(map) => {
                let Monad::Writer(from) = &self.source else {
                    return Err(Error::Invalid("a monoid map needs writer monads".into()));
                };
                let (m, x) = s.as_pair().ok_or_else(|| Error::malformed(s, "not a writer term"))?;
                Ok(Element::pair(Element::atom(map[from.index(m)?].to_string()), x.clone()))
            }
            Component::Leaves => Ok(Element::seq(vec![Element::star(); self.source.labels(s)?.len()])),
            Component::Table(t) => t.get(s).cloned().ok_or_else(|| Error::not_member(s, "the translation table")),
        }
    }

    /// The component at any set: translate the shape, keep the labels.
    pub fn translate(&self, t: &Element) -> Result<Element> {
        let shape = self.translate_shape(&self.source.shape(t)?)?;
        self.target.with_labels(&shape, &self.source.labels(t)?)
    }

    pub fn to_json(&self) -> Value {
        let component = match &self.component {
            Component::Identity => json!("identity"),
            Component::Unit => json!("unit"),
            Component::Leaves => json!("leaves"),
            Component::MonoidHom(m) => json!({ "monoid_hom": m }),
            Component::Table(t) => {
                json!({ "table": t.iter().map(|(s, u)| json!([s.to_json(), u.to_json()])).collect::<Vec<_>>() })
            }
        };
        json!({ "source": self.source.to_json(), "target": self.target.to_json(), "component": component })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Invalid(format!("transformation needs \"{k}\"")));
        let source = Monad::from_json(field("source")?)?;
        let target = Monad::from_json(field("target")?)?;
        let c = field("component")?;
        let built = match (c.as_str(), c.get("monoid_hom"), c.get("table")) {
            (Some("identity"), ..) => CartesianNatTrans { source, target, component: Component::Identity },
            (Some("unit"), ..) => CartesianNatTrans { source, target, component: Component::Unit },
            (Some("leaves"), ..) => CartesianNatTrans { source, target, component: Component::Leaves },
            (_, Some(m), _) => {
                let map: Vec<usize> = serde_json::from_value(m.clone())
                    .map_err(|e| Error::Invalid(format!("monoid_hom: {e}")))?;
                match (&source, &target) {
                    (Monad::Writer(a), Monad::Writer(b)) => CartesianNatTrans::monoid_hom(a, b, map)?,
                    _ => return Err(Error::Invalid("monoid_hom needs writer monads".into())),
                }
            }
            (_, _, Some(t)) => {
                let rows = t.as_array().ok_or_else(|| Error::Invalid("table must be a list".into()))?;
                let mut entries = BTreeMap::new();
                for r in rows {
                    match r.as_array().map(Vec::as_slice) {
                        Some([s, u]) => {
                            entries.insert(Element::from_json(s)?, Element::from_json(u)?);
                        }
                        _ => return Err(Error::Invalid("table rows are [shape, image]".into())),
                    }
                }
                CartesianNatTrans::table(source, target, entries)?
            }
            _ => return Err(Error::Invalid(format!("unknown component {c}"))),
        };
        built.check_endpoints()?;
        Ok(built)
    }

    fn check_endpoints(&self) -> Result<()> {
        let ok = match &self.component {
            Component::Identity => self.source == self.target,
            Component::Unit => self.source == Monad::Identity,
            Component::Leaves => self.source == Monad::Tree && self.target == Monad::FreeMonoid,
            Component::MonoidHom(_) => matches!((&self.source, &self.target), (Monad::Writer(_), Monad::Writer(_))),
            Component::Table(_) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("the component does not fit its source and target monads".into()))
        }
    }
}

fn attempt(f: impl FnOnce() -> Result<bool>) -> bool {
    f().unwrap_or(false)
}

/// Naturality, units and multiplications on elements of size at most
/// `bound` over sets of size at most 2, and the cartesian square at `X -> 1`.
pub fn check_nat_trans(phi: &CartesianNatTrans, bound: usize) -> Result<CheckReport> {
    let (s, t) = (&phi.source, &phi.target);
    let mut r = CheckReport::with_bound(Some(bound));
    for n in 0..=2 {
        let x = FiniteSet::range(n);
        let tx = s.enumerate_telements(&x, bound)?;
        for m in 0..=2 {
            for f in FiniteMap::all_maps(&x, &FiniteSet::range(m)) {
                for e in &tx {
                    let ok = attempt(|| Ok(phi.translate(&s.apply_map(&f, e)?)? == t.apply_map(&f, &phi.translate(e)?)?));
                    r.check("naturality", ok, || e.clone(), || format!("along {f:?}"));
                }
            }
        }
        for e in &x {
            let ok = attempt(|| Ok(phi.translate(&s.unit(e))? == t.unit(e)));
            r.check("unit", ok, || e.clone(), || "η′ does not translate to η".into());
        }
        match cartesian_square(phi, &x, &tx, bound).and_then(|sq| is_pullback(&sq)) {
            Ok(None) => r.check("cartesian", true, Element::star, String::new),
            Ok(Some(w)) => r.check("cartesian", false, Element::star, || w.to_string()),
            Err(e) => r.check("cartesian", false, Element::star, || e.to_string()),
        }
        let weighted = tx.iter().map(|e| Ok((e.clone(), s.size(e)?.max(1)))).collect::<Result<Vec<_>>>()?;
        for (tt, _) in s.enumerate_weighted(&weighted, bound)? {
            let ok = attempt(|| {
                let lhs = phi.translate(&s.mult(&tt)?)?;
                let inner = s.relabel(&tt, &mut |e| phi.translate(e))?;
                Ok(lhs == t.mult(&phi.translate(&inner)?)?)
            });
            r.check("multiplication", ok, || tt.clone(), || "φ∘μ′ differs from μ∘φφ".into());
        }
    }
    Ok(r)
}

fn cartesian_square(phi: &CartesianNatTrans, x: &FiniteSet, tx: &[Element], bound: usize) -> Result<Square> {
    let (s, t) = (&phi.source, &phi.target);
    let corner = FiniteSet::new(tx.iter().cloned());
    let left = FiniteSet::new(s.shapes(bound));
    let bottom = FiniteSet::new(left.iter().map(|e| phi.translate_shape(e)).collect::<Result<Vec<_>>>()?);
    let bang = FiniteMap::to_terminal(x);
    let mut right = Vec::new();
    for z in &bottom {
        right.extend(t.enumerate_fiber(&bang, z)?);
    }
    let right = FiniteSet::new(right);
    Ok(Square {
        to_left: FiniteMap::try_new(corner.clone(), left.clone(), |e| s.shape(e))?,
        to_right: FiniteMap::try_new(corner, right.clone(), |e| phi.translate(e))?,
        f: FiniteMap::try_new(left, bottom.clone(), |e| phi.translate_shape(e))?,
        g: FiniteMap::try_new(right, bottom, |e| t.shape(e))?,
    })
}

fn require_valid(phi: &CartesianNatTrans) -> Result<()> {
    phi.check_endpoints()?;
    let r = check_nat_trans(phi, 2)?;
    match r.first_failure() {
        None => Ok(()),
        Some(w) => Err(Error::Invalid(format!("not a cartesian monad map: {w}"))),
    }
}

fn finite_type(t: &Monad) -> bool {
    matches!(t, Monad::Identity | Monad::Exceptions(_) | Monad::Writer(_))
}

/// Same objects and arrows, domains translated by `φ`.
pub fn transport_by_composition(phi: &CartesianNatTrans, m: &Multicategory) -> Result<Multicategory> {
    require_valid(phi)?;
    if m.plugin != phi.source {
        return Err(Error::Mismatch("the multicategory is not over the source monad".into()));
    }
    let dom = m.dom.iter().map(|(a, d)| Ok((a.clone(), phi.translate(d)?))).collect::<Result<_>>()?;
    let comp = m
        .comp
        .iter()
        .map(|(k, c)| {
            let (u, a) = k.as_pair().expect("comp key");
            Ok((Element::pair(phi.translate(u)?, a.clone()), c.clone()))
        })
        .collect::<Result<_>>()?;
    Multicategory::new(phi.target.clone(), dom, m.cod.clone(), m.ids.clone(), comp, m.truncation)
}

/// Arrows `(a, t′)` with `φ(t′) = dom(a)` and `t′` of size at most `bound`;
/// `dom (a, t′) = t′`, `cod (a, t′) = cod a`.
pub fn transport_by_pullback(phi: &CartesianNatTrans, m: &Multicategory, bound: usize) -> Result<Multicategory> {
    require_valid(phi)?;
    if m.plugin != phi.target {
        return Err(Error::Mismatch("the multicategory is not over the target monad".into()));
    }
    let sp = &phi.source;
    let mut over: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for s in sp.shapes(bound) {
        over.entry(phi.translate_shape(&s)?).or_default().push(s);
    }
    let mut dom = BTreeMap::new();
    for a in &m.arrows {
        let d = m.dom_of(a)?;
        for s in over.get(&m.plugin.shape(d)?).into_iter().flatten() {
            let t = sp.with_labels(s, &m.plugin.labels(d)?)?;
            dom.insert(Element::pair(a.clone(), t.clone()), t);
        }
    }
    let arrows = FiniteSet::new(dom.keys().cloned());
    let first = |x: &Element| x.as_pair().expect("arrow pair").0.clone();
    let cod = FiniteMap::try_new(arrows.clone(), m.objects.clone(), |x| m.cod.apply(&first(x)).cloned())?;
    let ids = FiniteMap::try_new(m.objects.clone(), arrows.clone(), |s| Ok(Element::pair(m.ids.apply(s)?.clone(), sp.unit(s))))
        .map_err(|_| Error::Invalid(format!("bound {bound} excludes the identities")))?;
    let project = FiniteMap::new(arrows.clone(), m.arrows.clone(), first)?;
    let mut comp = BTreeMap::new();
    let mut omitted = false;
    for x in &arrows {
        let a = first(x);
        for u in sp.enumerate_fiber(&cod, &dom[x])? {
            let v = phi.translate(&sp.apply_map(&project, &u)?)?;
            let new_dom = sp.mult(&sp.relabel(&u, &mut |y| Ok(dom[y].clone()))?)?;
            match m.compose(&v, &a)?.map(|c| Element::pair(c, new_dom)) {
                Some(c) if arrows.contains(&c) => {
                    comp.insert(Element::pair(u, x.clone()), c);
                }
                _ => omitted = true,
            }
        }
    }
    let truncation = (omitted || m.truncation.is_some() || !finite_type(sp)).then_some(bound);
    Multicategory::new(sp.clone(), dom, cod, ids, comp, truncation)
}

/// The one-object operad of a monad map `φ: T′ -> free monoid`: arrows are
/// the shapes of `T′(1)` up to `bound`, `dom = φ`, composition from `μ′`.
pub fn operad_from_regular_theory(phi: &CartesianNatTrans, bound: usize) -> Result<Multicategory> {
    require_valid(phi)?;
    if phi.target != Monad::FreeMonoid {
        return Err(Error::Invalid("the target monad must be the free monoid".into()));
    }
    let sp = &phi.source;
    let arrows = FiniteSet::new(sp.shapes(bound));
    let dom: BTreeMap<Element, Element> =
        arrows.iter().map(|s| Ok((s.clone(), phi.translate_shape(s)?))).collect::<Result<_>>()?;
    let cod = FiniteMap::to_terminal(&arrows);
    let ids = FiniteMap::new(FiniteSet::terminal(), arrows.clone(), |x| sp.unit(x))
        .map_err(|_| Error::Invalid(format!("bound {bound} excludes the identity")))?;
    let mut comp = BTreeMap::new();
    let mut omitted = false;
    for s in &arrows {
        for u in Monad::FreeMonoid.enumerate_fiber(&cod, &dom[s])? {
            let c = sp.mult(&sp.with_labels(s, &Monad::FreeMonoid.labels(&u)?)?)?;
            if arrows.contains(&c) {
                comp.insert(Element::pair(u, s.clone()), c);
            } else {
                omitted = true;
            }
        }
    }
    let truncation = (omitted || !finite_type(sp)).then_some(bound);
    Multicategory::new(Monad::FreeMonoid, dom, cod, ids, comp, truncation)
}

/// Algebras for the monad itself on `X`, as structure maps on the elements
/// of size at most `bound`; associativity is imposed wherever both sides
/// stay in bound.
pub fn monad_algebras(t: &Monad, x: &FiniteSet, bound: usize) -> Result<Vec<FiniteMap>> {
    let tx = FiniteSet::new(t.enumerate_telements(x, bound)?);
    let mut search = Search::new(vec![x.elements().to_vec(); tx.len()]);
    for e in x {
        let i = tx.require(&t.unit(e))?;
        let e = e.clone();
        search.require(&[i], move |p| p.value(i) == &e);
    }
    let weighted = tx.iter().map(|e| Ok((e.clone(), t.size(e)?.max(1)))).collect::<Result<Vec<_>>>()?;
    for (tt, _) in t.enumerate_weighted(&weighted, bound)? {
        let Some(flat) = tx.index_of(&t.mult(&tt)?) else { continue };
        let inner: Vec<usize> = t.labels(&tt)?.iter().map(|e| tx.require(e)).collect::<Result<_>>()?;
        let mut vars = inner.clone();
        vars.push(flat);
        let (tx, t) = (&tx, t.clone());
        search.add(&vars, move |p| {
            let values: Vec<Element> = inner.iter().map(|&i| p.value(i).clone()).collect();
            let Ok(outer) = t.with_labels(&tt, &values) else { return Verdict::Fails };
            match tx.index_of(&outer) {
                None => Verdict::Holds,
                Some(j) => match p.get(j) {
                    None => Verdict::Waiting(j),
                    Some(v) if v == p.value(flat) => Verdict::Holds,
                    Some(_) => Verdict::Fails,
                },
            }
        });
    }
    search
        .all()?
        .into_iter()
        .map(|images| FiniteMap::from_images(tx.clone(), x.clone(), images))
        .collect()
}
