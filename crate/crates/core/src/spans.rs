//! The bicategory of `T`-spans `T(R) <- A -> S`, composed by chosen pullback.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{compose, FiniteMap, FiniteSet};
use crate::monads::{Monad, MonadPlugin};

/// A span `T(R) <-dom- A -cod-> S`. The `dom` leg is stored elementwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSpan {
    pub plugin: Monad,
    pub source: FiniteSet,
    pub target: FiniteSet,
    pub apex: FiniteSet,
    pub dom: BTreeMap<Element, Element>,
    pub cod: FiniteMap,
}

impl TSpan {
    pub fn new(plugin: Monad, source: FiniteSet, dom: BTreeMap<Element, Element>, cod: FiniteMap) -> Result<Self> {
        let apex = cod.source().clone();
        if dom.len() != apex.len() || !apex.iter().all(|a| dom.contains_key(a)) {
            return Err(Error::Mismatch("dom and cod legs have different apexes".into()));
        }
        for t in dom.values() {
            plugin.validate(t, &source)?;
        }
        Ok(TSpan { plugin, source, target: cod.target().clone(), apex, dom, cod })
    }

    pub fn dom_of(&self, a: &Element) -> Result<&Element> {
        self.dom.get(a).ok_or_else(|| Error::not_member(a, "span apex"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "monad": self.plugin.to_json(),
            "source": self.source.iter().map(Element::to_json).collect::<Vec<_>>(),
            "target": self.target.iter().map(Element::to_json).collect::<Vec<_>>(),
            "arrows": self.apex.iter().map(|a| json!({
                "name": a.to_json(),
                "dom": self.dom[a].to_json(),
                "cod": self.cod.apply(a).expect("cod is total").to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The identity span `T(S) <-η- S -id-> S`.
pub fn identity_span(plugin: &Monad, s: &FiniteSet) -> TSpan {
    TSpan {
        plugin: plugin.clone(),
        source: s.clone(),
        target: s.clone(),
        apex: s.clone(),
        dom: s.iter().map(|x| (x.clone(), plugin.unit(x))).collect(),
        cod: FiniteMap::identity(s),
    }
}

/// A composite span together with its two pullback projections: to `T` of
/// the inner apex (stored elementwise) and to the outer apex.
#[derive(Clone, Debug)]
pub struct SpanComposite {
    pub span: TSpan,
    pub to_inner: BTreeMap<Element, Element>,
    pub to_outer: FiniteMap,
}

/// `B ∘ A`: apex elements are `(u, b)` with `T(cod_A)(u) = dom_B(b)`.
pub fn compose_spans_with_projections(b: &TSpan, a: &TSpan) -> Result<SpanComposite> {
    if a.plugin != b.plugin {
        return Err(Error::Mismatch("spans over different monads".into()));
    }
    if a.target != b.source {
        return Err(Error::Mismatch("spans are not composable".into()));
    }
    let plugin = &a.plugin;
    let mut dom = BTreeMap::new();
    let mut to_inner = BTreeMap::new();
    let mut cods = Vec::new();
    for y in &b.apex {
        for u in plugin.enumerate_fiber(&a.cod, b.dom_of(y)?)? {
            let d = plugin.relabel(&u, &mut |x| a.dom_of(x).cloned()).and_then(|tt| plugin.mult(&tt))?;
            let p = Element::pair(u.clone(), y.clone());
            dom.insert(p.clone(), d);
            to_inner.insert(p.clone(), u);
            cods.push((p, b.cod.apply(y)?.clone()));
        }
    }
    let apex = FiniteSet::new(dom.keys().cloned());
    let cod = FiniteMap::from_pairs(apex.clone(), b.target.clone(), cods)?;
    let to_outer = FiniteMap::new(apex.clone(), b.apex.clone(), |p| p.as_pair().expect("pair").1.clone())?;
    let span = TSpan { plugin: plugin.clone(), source: a.source.clone(), target: b.target.clone(), apex, dom, cod };
    Ok(SpanComposite { span, to_inner, to_outer })
}

pub fn compose_spans(b: &TSpan, a: &TSpan) -> Result<TSpan> {
    Ok(compose_spans_with_projections(b, a)?.span)
}

/// A map of apexes commuting with both legs.
#[derive(Clone, Debug)]
pub struct SpanTwoCell {
    pub source: TSpan,
    pub target: TSpan,
    pub map: FiniteMap,
}

impl SpanTwoCell {
    pub fn new(source: TSpan, target: TSpan, map: FiniteMap) -> Result<Self> {
        if source.source != target.source || source.target != target.target || source.plugin != target.plugin {
            return Err(Error::Mismatch("2-cell between spans with different endpoints".into()));
        }
        if map.source() != &source.apex || map.target() != &target.apex {
            return Err(Error::Mismatch("2-cell map does not run between the apexes".into()));
        }
        for (x, y) in map.pairs() {
            if source.dom_of(x)? != target.dom_of(y)? || source.cod.apply(x)? != target.cod.apply(y)? {
                return Err(Error::Law(format!("2-cell does not commute with the legs at {x}")));
            }
        }
        Ok(SpanTwoCell { source, target, map })
    }

    pub fn identity(span: &TSpan) -> Self {
        SpanTwoCell { source: span.clone(), target: span.clone(), map: FiniteMap::identity(&span.apex) }
    }

    /// `self` after `first`.
    pub fn vertical(&self, first: &SpanTwoCell) -> Result<SpanTwoCell> {
        if first.target != self.source {
            return Err(Error::Mismatch("2-cells are not vertically composable".into()));
        }
        Ok(SpanTwoCell {
            source: first.source.clone(),
            target: self.target.clone(),
            map: compose(&self.map, &first.map)?,
        })
    }

    pub fn inverse(&self) -> Result<SpanTwoCell> {
        SpanTwoCell::new(self.target.clone(), self.source.clone(), self.map.inverse()?)
    }

    pub fn is_invertible(&self) -> bool {
        self.map.is_bijection()
    }
}

/// `outer * inner`: the induced map `(u, b) ↦ (T(inner)(u), outer(b))`
/// from `outer.source ∘ inner.source` to `outer.target ∘ inner.target`.
pub fn horizontal_compose(inner: &SpanTwoCell, outer: &SpanTwoCell) -> Result<SpanTwoCell> {
    let src = compose_spans(&outer.source, &inner.source)?;
    let tgt = compose_spans(&outer.target, &inner.target)?;
    let plugin = &src.plugin;
    let map = FiniteMap::try_new(src.apex.clone(), tgt.apex.clone(), |p| {
        let (u, b) = p.as_pair().expect("composite apex holds pairs");
        Ok(Element::pair(plugin.apply_map(&inner.map, u)?, outer.map.apply(b)?.clone()))
    })?;
    SpanTwoCell::new(src, tgt, map)
}

fn checked_iso(source: TSpan, target: TSpan, map: FiniteMap, what: &str) -> Result<SpanTwoCell> {
    let cell = SpanTwoCell::new(source, target, map)?;
    if !cell.is_invertible() {
        return Err(Error::Law(format!("{what} is not a bijection")));
    }
    Ok(cell)
}

/// The associator `(C∘B)∘A => C∘(B∘A)`.
pub fn associator(c: &TSpan, b: &TSpan, a: &TSpan) -> Result<SpanTwoCell> {
    let left = compose_spans(&compose_spans(c, b)?, a)?;
    let right = compose_spans(c, &compose_spans(b, a)?)?;
    let plugin = &a.plugin;
    let map = FiniteMap::try_new(left.apex.clone(), right.apex.clone(), |p| {
        let (u, vc) = p.as_pair().expect("pair");
        let (v, z) = vc.as_pair().expect("pair");
        let blocks = plugin.relabel(v, &mut |y| b.dom_of(y).cloned())?;
        let w = plugin.zip(&plugin.unflatten(&blocks, u)?, v)?;
        Ok(Element::pair(w, z.clone()))
    })?;
    checked_iso(left, right, map, "associator")
}

/// The left unitor `1∘A => A`.
pub fn left_unitor(a: &TSpan) -> Result<SpanTwoCell> {
    let left = compose_spans(&identity_span(&a.plugin, &a.target), a)?;
    let plugin = &a.plugin;
    let map = FiniteMap::try_new(left.apex.clone(), a.apex.clone(), |p| {
        let u = p.as_pair().expect("pair").0;
        match plugin.labels(u)?.as_slice() {
            [x] => Ok(x.clone()),
            _ => Err(Error::malformed(u, "expected a unit")),
        }
    })?;
    checked_iso(left, a.clone(), map, "left unitor")
}

/// The right unitor `A∘1 => A`.
pub fn right_unitor(a: &TSpan) -> Result<SpanTwoCell> {
    let left = compose_spans(a, &identity_span(&a.plugin, &a.source))?;
    let map = FiniteMap::new(left.apex.clone(), a.apex.clone(), |p| p.as_pair().expect("pair").1.clone())?;
    checked_iso(left, a.clone(), map, "right unitor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(plugin: Monad, r: &FiniteSet, s: &FiniteSet, arrows: &[(&str, Element, &str)]) -> TSpan {
        let apex = FiniteSet::new(arrows.iter().map(|(n, _, _)| Element::atom(n)));
        let dom = arrows.iter().map(|(n, d, _)| (Element::atom(n), d.clone())).collect();
        let cod = FiniteMap::from_pairs(apex, s.clone(), arrows.iter().map(|(n, _, c)| (Element::atom(n), Element::atom(c))))
            .unwrap();
        TSpan::new(plugin, r.clone(), dom, cod).unwrap()
    }

    #[test]
    fn identity_spans() {
        let s = FiniteSet::atoms(["a", "b"]);
        let id = identity_span(&Monad::FreeMonoid, &s);
        assert_eq!(id.dom[&"a".into()], Element::seq(vec!["a".into()]));
        let exc = identity_span(&Monad::exceptions(FiniteSet::atoms(["e"])), &s);
        assert_eq!(exc.dom[&"b".into()], Element::tag("val", "b".into()));
    }

    #[test]
    fn identity_monad_composite_is_ordinary() {
        let r = FiniteSet::atoms(["r"]);
        let s = FiniteSet::atoms(["s1", "s2"]);
        let t = FiniteSet::atoms(["t"]);
        let a = span(Monad::Identity, &r, &s, &[("a1", "r".into(), "s1"), ("a2", "r".into(), "s2"), ("a3", "r".into(), "s1")]);
        let b = span(Monad::Identity, &s, &t, &[("b1", "s1".into(), "t"), ("b2", "s1".into(), "t")]);
        let ba = compose_spans(&b, &a).unwrap();
        // pairs (a, b) with cod(a) = dom(b): {a1, a3} x {b1, b2}
        assert_eq!(ba.apex.len(), 4);
    }

    #[test]
    fn free_monoid_composite_and_coherence() {
        let s = FiniteSet::atoms(["s"]);
        let w = |n: usize| Element::seq(vec!["s".into(); n]);
        let a = span(Monad::FreeMonoid, &s, &s, &[("m", w(2), "s"), ("e", w(0), "s")]);
        let ba = compose_spans(&a, &a).unwrap();
        // m with a pair of arrows, or e with nothing
        assert_eq!(ba.apex.len(), 5);
        assert!(associator(&a, &a, &a).unwrap().is_invertible());
        assert!(left_unitor(&a).unwrap().is_invertible());
        assert!(right_unitor(&a).unwrap().is_invertible());
        let id = SpanTwoCell::identity(&a);
        let h = horizontal_compose(&id, &id).unwrap();
        assert_eq!(h.map, FiniteMap::identity(&ba.apex));
    }
}
