//! The monad `⊙` a multicategory induces on sets over its objects, and its
//! algebras.
//!
//! For `p: X -> S`, `X_⊙` is the set of pairs `(u, a)` with `u` a
//! `T`-element over `X` and `T(p)(u) = dom(a)`, lying over `cod(a)`.

pub mod endo;
pub mod slice;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{guard, Error, Result, DEFAULT_CAP};
use crate::finset::{fiber, FiniteMap, FiniteSet};
use crate::monads::MonadPlugin;
use crate::multicat::Multicategory;
use crate::report::CheckReport;
use crate::search::{Search, Verdict};

/// A set over the objects: `p: X -> S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObject {
    pub carrier: FiniteSet,
    pub p: FiniteMap,
}

impl SliceObject {
    pub fn new(p: FiniteMap) -> Self {
        SliceObject { carrier: p.source().clone(), p }
    }
}

/// `X_⊙` with its map to `S` and its projection `φ` to `T(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlobResult {
    pub carrier: FiniteSet,
    pub p: FiniteMap,
    pub phi: BTreeMap<Element, Element>,
}

impl BlobResult {
    pub fn slice(&self) -> SliceObject {
        SliceObject::new(self.p.clone())
    }
}

fn split(xi: &Element) -> Result<(&Element, &Element)> {
    xi.as_pair().ok_or_else(|| Error::malformed(xi, "expected (u, a)"))
}

pub fn blob(m: &Multicategory, x: &SliceObject) -> Result<BlobResult> {
    if x.p.target() != &m.objects {
        return Err(Error::Mismatch("slice object is not over the objects".into()));
    }
    let mut phi = BTreeMap::new();
    let mut over = Vec::new();
    for a in &m.arrows {
        for u in m.plugin.enumerate_fiber(&x.p, m.dom_of(a)?)? {
            let xi = Element::pair(u.clone(), a.clone());
            over.push((xi.clone(), m.cod_of(a)?.clone()));
            phi.insert(xi, u);
        }
        guard("blob", phi.len(), DEFAULT_CAP)?;
    }
    let carrier = FiniteSet::new(phi.keys().cloned());
    let p = FiniteMap::from_pairs(carrier.clone(), m.objects.clone(), over)?;
    Ok(BlobResult { carrier, p, phi })
}

/// `x ↦ (η(x), ids(p(x)))`.
pub fn blob_unit_at(m: &Multicategory, x: &SliceObject, e: &Element) -> Result<Element> {
    Ok(Element::pair(m.plugin.unit(e), m.id_of(x.p.apply(e)?)?.clone()))
}

pub fn blob_unit(m: &Multicategory, x: &SliceObject) -> Result<FiniteMap> {
    let target = blob(m, x)?.carrier;
    FiniteMap::try_new(x.carrier.clone(), target, |e| blob_unit_at(m, x, e))
}

/// `(U, a) ↦ (μ(T(π1)(U)), comp(T(π2)(U), a))`, or `None` when the composite
/// is missing from a truncated table.
pub fn blob_mult_at(m: &Multicategory, big: &Element) -> Result<Option<Element>> {
    let p = &m.plugin;
    let (uu, a) = split(big)?;
    let firsts = p.relabel(uu, &mut |xi| Ok(split(xi)?.0.clone()))?;
    let seconds = p.relabel(uu, &mut |xi| Ok(split(xi)?.1.clone()))?;
    let Some(b) = m.compose(&seconds, a)? else {
        return Ok(None);
    };
    Ok(Some(Element::pair(p.mult(&firsts)?, b)))
}

/// `μ` at `x`, on every element of `X_⊙⊙` whose composite exists.
pub fn blob_mult(m: &Multicategory, x: &SliceObject) -> Result<BTreeMap<Element, Element>> {
    let inner = blob(m, x)?;
    let outer = blob(m, &inner.slice())?;
    let mut out = BTreeMap::new();
    for big in &outer.carrier {
        if let Some(v) = blob_mult_at(m, big)? {
            out.insert(big.clone(), v);
        }
    }
    Ok(out)
}

/// The elements `(U, a)` of `⊙` applied to `inner` whose multiplication is
/// defined, i.e. whose composite `comp(T(π2)(U), a)` exists, together with
/// the number of composable `(T(π2)(U), a)` skipped for lack of one.
pub fn composable_blob(m: &Multicategory, inner: &BlobResult) -> Result<(Vec<Element>, usize)> {
    let second = FiniteMap::try_new(inner.carrier.clone(), m.arrows.clone(), |xi| Ok(split(xi)?.1.clone()))?;
    let mut out = Vec::new();
    let mut skipped = 0;
    for a in &m.arrows {
        for v in m.plugin.enumerate_fiber(&m.cod, m.dom_of(a)?)? {
            if m.compose(&v, a)?.is_none() {
                skipped += 1;
                continue;
            }
            for uu in m.plugin.enumerate_fiber(&second, &v)? {
                out.push(Element::pair(uu, a.clone()));
            }
            guard("composable blob", out.len(), DEFAULT_CAP * 10)?;
        }
    }
    out.sort();
    Ok((out, skipped))
}

/// `⊙` on a map `f` over `S`: `(u, a) ↦ (T(f)(u), a)`.
pub fn blob_apply(m: &Multicategory, f: &dyn Fn(&Element) -> Result<Element>, xi: &Element) -> Result<Element> {
    let (u, a) = split(xi)?;
    Ok(Element::pair(m.plugin.relabel(u, &mut |e| f(e))?, a.clone()))
}

/// Unit and associativity of `⊙` at `x`, elementwise.
pub fn check_blob_monad(m: &Multicategory, x: &SliceObject) -> Result<CheckReport> {
    let mut report = CheckReport::with_bound(m.truncation);
    let b1 = blob(m, x)?;
    let s1 = b1.slice();
    for xi in &b1.carrier {
        let up = blob_unit_at(m, &s1, xi)?;
        match blob_mult_at(m, &up)? {
            Some(r) => report.check("left unit", &r == xi, || xi.clone(), || format!("got {r}")),
            None => report.skip("left unit"),
        }
        let side = blob_apply(m, &|e| blob_unit_at(m, x, e), xi)?;
        match blob_mult_at(m, &side)? {
            Some(r) => report.check("right unit", &r == xi, || xi.clone(), || format!("got {r}")),
            None => report.skip("right unit"),
        }
    }
    let b2 = blob(m, &s1)?;
    let (level3, skipped) = composable_blob(m, &b2)?;
    *report.skipped.entry("associativity".into()).or_default() += skipped;
    for theta in &level3 {
        let lhs = match blob_mult_at(m, theta)? {
            Some(t) => blob_mult_at(m, &t)?,
            None => None,
        };
        // an inner composite out of bound makes the instance unavailable
        let missing = std::cell::Cell::new(false);
        let inner = blob_apply(
            m,
            &|e| match blob_mult_at(m, e)? {
                Some(v) => Ok(v),
                None => {
                    missing.set(true);
                    Ok(e.clone())
                }
            },
            theta,
        )?;
        let rhs = if missing.get() { None } else { blob_mult_at(m, &inner)? };
        match (lhs, rhs) {
            (Some(l), Some(r)) => report.check("associativity", l == r, || theta.clone(), || format!("{l} vs {r}")),
            _ => report.skip("associativity"),
        }
    }
    Ok(report)
}

/// An algebra: a set over the objects with `h: X_⊙ -> X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub carrier: SliceObject,
    pub h: FiniteMap,
}

impl Algebra {
    pub fn to_json(&self) -> Value {
        json!({
            "carrier": self.carrier.carrier.iter().map(Element::to_json).collect::<Vec<_>>(),
            "p": self.carrier.p.pairs().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect::<Vec<_>>(),
            "h": self.h.pairs().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect::<Vec<_>>(),
        })
    }
}

/// `h` lies over `S`, and the unit and multiplication laws hold.
pub fn check_algebra(m: &Multicategory, alg: &Algebra) -> Result<CheckReport> {
    let x = &alg.carrier;
    let b = blob(m, x)?;
    if alg.h.source() != &b.carrier || alg.h.target() != &x.carrier {
        return Err(Error::Mismatch("structure map must run from the blob to the carrier".into()));
    }
    let mut report = CheckReport::with_bound(m.truncation);
    for xi in &b.carrier {
        let hx = alg.h.apply(xi)?;
        report.check("over objects", x.p.apply(hx)? == b.p.apply(xi)?, || xi.clone(), || format!("h sends it to {hx}"));
    }
    for e in &x.carrier {
        let got = alg.h.apply(&blob_unit_at(m, x, e)?)?;
        report.check("unit", got == e, || e.clone(), || format!("h(unit) = {got}"));
    }
    let (outer, skipped) = composable_blob(m, &b)?;
    *report.skipped.entry("multiplication".into()).or_default() += skipped;
    for big in &outer {
        let flat = blob_mult_at(m, big)?.expect("composite exists");
        let lhs = alg.h.apply(&flat)?;
        let moved = blob_apply(m, &|xi| alg.h.apply(xi).cloned(), big)?;
        let rhs = alg.h.apply(&moved)?;
        report.check("multiplication", lhs == rhs, || big.clone(), || format!("{lhs} vs {rhs}"));
    }
    Ok(report)
}

/// Every algebra structure on the given carrier, by backtracking over the
/// values of `h`.
pub fn algebras_on(m: &Multicategory, x: &SliceObject, cap: usize) -> Result<Vec<Algebra>> {
    let b = blob(m, x)?;
    let var: BTreeMap<&Element, usize> = b.carrier.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let domains = b
        .carrier
        .iter()
        .map(|xi| Ok(fiber(&x.p, b.p.apply(xi)?)?.elements().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let mut search = Search::new(domains).with_cap(cap);
    let var = &var;
    for e in &x.carrier {
        let v = var[&blob_unit_at(m, x, e)?];
        search.require(&[v], move |part| part.value(v) == e);
    }
    let (outer, _) = composable_blob(m, &b)?;
    let p = &m.plugin;
    for big in &outer {
        let flat = blob_mult_at(m, big)?.expect("composite exists");
        let (uu, a) = split(big)?;
        let labels = p.labels(uu)?;
        let mut vars: Vec<usize> = labels.iter().map(|l| var[l]).collect();
        let vf = var[&flat];
        vars.push(vf);
        let a = a.clone();
        let uu = uu.clone();
        search.add(&vars, move |part| {
            let moved = p.relabel(&uu, &mut |xi| Ok(part.value(var[xi]).clone())).expect("well-formed");
            let vm = var[&Element::pair(moved, a.clone())];
            match part.get(vm) {
                None => Verdict::Waiting(vm),
                Some(r) if r == part.value(vf) => Verdict::Holds,
                Some(_) => Verdict::Fails,
            }
        });
    }
    let mut out = Vec::new();
    search.solve(&mut |values| {
        let h = FiniteMap::from_images(b.carrier.clone(), x.carrier.clone(), values.to_vec())?;
        out.push(Algebra { carrier: x.clone(), h });
        Ok(true)
    })?;
    Ok(out)
}

/// Carriers `x0, x1, ...` of size `n`.
pub fn standard_carrier(n: usize) -> FiniteSet {
    FiniteSet::new((0..n).map(|i| Element::atom(format!("x{i}"))))
}

/// All algebras with carrier `{x0, ..}` of size at most `max_carrier`, over
/// every map to the objects, in order of carrier size, then `p`, then `h`.
pub fn enumerate_algebras(m: &Multicategory, max_carrier: usize) -> Result<Vec<Algebra>> {
    let mut out = Vec::new();
    for n in 0..=max_carrier {
        let carrier = standard_carrier(n);
        for p in FiniteMap::all_maps(&carrier, &m.objects) {
            out.extend(algebras_on(m, &SliceObject::new(p), DEFAULT_CAP * 10)?);
            guard("algebra enumeration", out.len(), DEFAULT_CAP)?;
        }
    }
    Ok(out)
}

/// Algebra maps `k -> h`: maps of carriers over the objects that commute
/// with the structure maps.
pub fn algebra_maps(m: &Multicategory, k: &Algebra, h: &Algebra) -> Result<Vec<FiniteMap>> {
    let bk = blob(m, &k.carrier)?;
    let mut out = Vec::new();
    for f in FiniteMap::all_maps(&k.carrier.carrier, &h.carrier.carrier) {
        let over = k.carrier.carrier.iter().all(|x| h.carrier.p.apply(f.apply(x).unwrap()).ok() == k.carrier.p.apply(x).ok());
        if !over {
            continue;
        }
        let mut ok = true;
        for xi in &bk.carrier {
            let lhs = f.apply(k.h.apply(xi)?)?;
            let rhs = h.h.apply(&blob_apply(m, &|e| f.apply(e).cloned(), xi)?)?;
            if lhs != rhs {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(f);
        }
    }
    Ok(out)
}

/// Restricts an algebra of `n` along `f: m -> n`. The carrier is the
/// pullback `X ×_{S'} S`, with elements `(x, s)`.
pub fn restrict_algebra(
    f: &crate::multicat::MulticategoryMap,
    m: &Multicategory,
    n: &Multicategory,
    alg: &Algebra,
) -> Result<Algebra> {
    if f.on_objects.target() != &n.objects || f.on_arrows.target() != &n.arrows || f.on_arrows.source() != &m.arrows {
        return Err(Error::Mismatch("map does not run between the given multicategories".into()));
    }
    let pb = crate::finset::pullback(&alg.carrier.p, &f.on_objects)?;
    let carrier = SliceObject::new(pb.right_projection.clone());
    let b = blob(m, &carrier)?;
    let p = &m.plugin;
    let h = FiniteMap::try_new(b.carrier.clone(), carrier.carrier.clone(), |xi| {
        let (u, a) = split(xi)?;
        let u2 = p.relabel(u, &mut |e| Ok(split(e)?.0.clone()))?;
        let fa = f.on_arrows.apply(a)?;
        let x = alg.h.apply(&Element::pair(u2, fa.clone()))?;
        Ok(Element::pair(x.clone(), m.cod_of(a)?.clone()))
    })?;
    Ok(Algebra { carrier, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::standard::{standard_multicat, FiniteCategory, StandardData};
    use crate::multicat::terminal_multicat;
    use crate::Monad;

    #[test]
    fn identity_blob_is_arrows_out_of() {
        let m = standard_multicat(&StandardData::Category(FiniteCategory::arrow_category())).unwrap();
        let p = FiniteMap::new(FiniteSet::atoms(["v"]), m.objects.clone(), |_| "0".into()).unwrap();
        let b = blob(&m, &SliceObject::new(p)).unwrap();
        // id0 and f leave 0
        assert_eq!(b.carrier.len(), 2);
        assert_eq!(b.p.apply(&Element::pair("v".into(), "f".into())).unwrap(), &Element::atom("1"));
    }

    #[test]
    fn free_monoid_blob_count() {
        let t = terminal_multicat(&Monad::FreeMonoid, 3).unwrap();
        let x = SliceObject::new(FiniteMap::to_terminal(&standard_carrier(2)));
        assert_eq!(blob(&t, &x).unwrap().carrier.len(), 1 + 2 + 4 + 8);
        let empty = SliceObject::new(FiniteMap::to_terminal(&FiniteSet::empty()));
        assert_eq!(blob(&t, &empty).unwrap().carrier.len(), 1);
    }

    #[test]
    fn blob_monad_laws() {
        let t = terminal_multicat(&Monad::FreeMonoid, 3).unwrap();
        let x = SliceObject::new(FiniteMap::to_terminal(&standard_carrier(2)));
        let r = check_blob_monad(&t, &x).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn terminal_operad_algebras_are_monoids() {
        let t = terminal_multicat(&Monad::FreeMonoid, 3).unwrap();
        let counts: Vec<usize> = (0..=2)
            .map(|n| {
                let x = SliceObject::new(FiniteMap::to_terminal(&standard_carrier(n)));
                algebras_on(&t, &x, 1_000_000).unwrap().len()
            })
            .collect();
        assert_eq!(counts, vec![0, 1, 4]);
        for a in enumerate_algebras(&t, 2).unwrap() {
            assert!(check_algebra(&t, &a).unwrap().passed());
        }
    }

    #[test]
    fn terminal_category_algebras_are_sets() {
        let t = terminal_multicat(&Monad::Identity, 1).unwrap();
        assert_eq!(enumerate_algebras(&t, 3).unwrap().len(), 4);
    }
}
