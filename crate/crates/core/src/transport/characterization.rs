//! A multicategory as monad data: the monad `⊙` on sets over `S`, its unit
//! and multiplication, and the projection `φ: X_⊙ -> T(X)`. Evaluating at
//! the identity `S -> S` gives back the arrows, legs, identities and
//! composites.

use std::collections::BTreeMap;

use crate::algebras::{blob, blob_mult_at, blob_unit, composable_blob, BlobResult, SliceObject};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{is_pullback, FiniteMap, FiniteSet, Square};
use crate::monads::{Monad, MonadPlugin};
use crate::multicat::Multicategory;
use crate::report::CheckReport;

/// `⊙`, its unit and its multiplication evaluated at one set over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub input: SliceObject,
    pub output: BlobResult,
    pub unit: FiniteMap,
    /// Defined on the elements of `X_⊙⊙` whose composite exists.
    pub mult: BTreeMap<Element, Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadDataPackage {
    pub plugin: Monad,
    pub objects: FiniteSet,
    pub truncation: Option<usize>,
    /// The first evaluation is always at the identity `S -> S`.
    pub evaluations: Vec<Evaluation>,
}

fn evaluate(m: &Multicategory, x: &SliceObject) -> Result<Evaluation> {
    let output = blob(m, x)?;
    let unit = blob_unit(m, x)?;
    let mut mult = BTreeMap::new();
    for big in composable_blob(m, &output)?.0 {
        let v = blob_mult_at(m, &big)?.expect("composable");
        mult.insert(big, v);
    }
    Ok(Evaluation { input: x.clone(), output, unit, mult })
}

/// The monad data of `m`, evaluated at the identity and at `extra`.
pub fn monad_data(m: &Multicategory, extra: &[SliceObject]) -> Result<MonadDataPackage> {
    let id = SliceObject::new(FiniteMap::identity(&m.objects));
    let evaluations = std::iter::once(&id).chain(extra).map(|x| evaluate(m, x)).collect::<Result<_>>()?;
    Ok(MonadDataPackage { plugin: m.plugin.clone(), objects: m.objects.clone(), truncation: m.truncation, evaluations })
}

fn split(xi: &Element) -> Result<(&Element, &Element)> {
    xi.as_pair().ok_or_else(|| Error::malformed(xi, "expected (u, a)"))
}

/// Reads the multicategory off the evaluation at `S -> S`: its elements
/// `(dom a, a)` are the arrows, `p_⊙` the codomain, `φ` the domain; the unit
/// gives identities and the multiplication composites.
pub fn recover_multicat(pkg: &MonadDataPackage) -> Result<Multicategory> {
    let ev = pkg.evaluations.first().ok_or_else(|| Error::Invalid("the package has no evaluations".into()))?;
    if ev.input.p != FiniteMap::identity(&pkg.objects) {
        return Err(Error::Invalid("the first evaluation must be at the identity".into()));
    }
    let p = &pkg.plugin;
    let name = |xi: &Element| -> Result<Element> { Ok(split(xi)?.1.clone()) };
    let mut dom = BTreeMap::new();
    let mut cod = Vec::new();
    for xi in &ev.output.carrier {
        let a = name(xi)?;
        dom.insert(a.clone(), ev.output.phi[xi].clone());
        cod.push((a, ev.output.p.apply(xi)?.clone()));
    }
    let arrows = FiniteSet::new(dom.keys().cloned());
    let cod = FiniteMap::from_pairs(arrows.clone(), pkg.objects.clone(), cod)?;
    let ids = FiniteMap::try_new(pkg.objects.clone(), arrows.clone(), |s| name(ev.unit.apply(s)?))?;
    let mut comp = BTreeMap::new();
    for (big, value) in &ev.mult {
        let (uu, a) = split(big)?;
        let v = p.relabel(uu, &mut |xi| name(xi))?;
        comp.insert(Element::pair(v, a.clone()), name(value)?);
    }
    Multicategory::new(p.clone(), dom, cod, ids, comp, pkg.truncation)
}

/// Unit laws of `⊙` at every evaluation, read from the tables alone, and
/// that `φ` makes `X_⊙` the pullback of `dom` along `T(p)`.
pub fn check_package(pkg: &MonadDataPackage) -> Result<CheckReport> {
    let p = &pkg.plugin;
    let mut r = CheckReport::with_bound(pkg.truncation);
    let at_id = pkg.evaluations.first().ok_or_else(|| Error::Invalid("the package has no evaluations".into()))?;
    let id_of = |s: &Element| -> Result<Element> { Ok(split(at_id.unit.apply(s)?)?.1.clone()) };
    for ev in &pkg.evaluations {
        for xi in &ev.output.carrier {
            let (u, a) = split(xi)?;
            let left = Element::pair(p.unit(xi), id_of(ev.output.p.apply(xi)?)?);
            match ev.mult.get(&left) {
                Some(v) => r.check("left unit", v == xi, || xi.clone(), || v.to_string()),
                None => r.skip("left unit"),
            }
            let right = Element::pair(p.relabel(u, &mut |e| Ok(ev.unit.apply(e)?.clone()))?, a.clone());
            match ev.mult.get(&right) {
                Some(v) => r.check("right unit", v == xi, || xi.clone(), || v.to_string()),
                None => r.skip("right unit"),
            }
        }
        match phi_square(pkg, at_id, ev).and_then(|sq| is_pullback(&sq)) {
            Ok(None) => r.check("φ cartesian", true, Element::star, String::new),
            Ok(Some(w)) => r.check("φ cartesian", false, Element::star, || w.to_string()),
            Err(e) => r.check("φ cartesian", false, Element::star, || e.to_string()),
        }
    }
    Ok(r)
}

fn phi_square(pkg: &MonadDataPackage, at_id: &Evaluation, ev: &Evaluation) -> Result<Square> {
    let p = &pkg.plugin;
    let doms = FiniteSet::new(at_id.output.phi.values().cloned());
    let mut tx = Vec::new();
    for d in &doms {
        tx.extend(p.enumerate_fiber(&ev.input.p, d)?);
    }
    let tx = FiniteSet::new(tx);
    Ok(Square {
        to_left: FiniteMap::try_new(ev.output.carrier.clone(), at_id.output.carrier.clone(), |xi| {
            let (u, a) = split(xi)?;
            Ok(Element::pair(p.apply_map(&ev.input.p, u)?, a.clone()))
        })?,
        to_right: FiniteMap::try_new(ev.output.carrier.clone(), tx.clone(), |xi| Ok(ev.output.phi[xi].clone()))?,
        f: FiniteMap::try_new(at_id.output.carrier.clone(), doms.clone(), |xi| Ok(at_id.output.phi[xi].clone()))?,
        g: FiniteMap::try_new(tx, doms, |u| p.apply_map(&ev.input.p, u))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::standard::{standard_multicat, FiniteCategory, StandardData};
    use crate::multicat::terminal_multicat;

    #[test]
    fn round_trips() {
        let c = standard_multicat(&StandardData::Category(FiniteCategory::arrow_category())).unwrap();
        let t = terminal_multicat(&Monad::FreeMonoid, 3).unwrap();
        for m in [c, t] {
            let x = SliceObject::new(FiniteMap::new(FiniteSet::range(2), m.objects.clone(), |_| m.objects.elements()[0].clone()).unwrap());
            let pkg = monad_data(&m, &[x]).unwrap();
            let r = check_package(&pkg).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(recover_multicat(&pkg).unwrap(), m);
            // ⊙ at the identity has exactly the arrows, over their codomains
            let ev = &pkg.evaluations[0];
            assert_eq!(ev.output.carrier.len(), m.arrows.len());
        }
    }

    #[test]
    fn a_broken_unit_is_caught() {
        let t = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let mut pkg = monad_data(&t, &[]).unwrap();
        let ev = &mut pkg.evaluations[0];
        let wrong = ev.output.carrier.iter().find(|xi| Some(*xi) != ev.unit.images().first()).unwrap().clone();
        ev.unit = FiniteMap::from_images(ev.unit.source().clone(), ev.unit.target().clone(), vec![wrong]).unwrap();
        assert!(!check_package(&pkg).unwrap().passed());
    }
}
