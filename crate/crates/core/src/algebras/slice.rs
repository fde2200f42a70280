//! The slice multicategory `A_h` of an algebra `h`, whose algebras are the
//! algebras over `h`.

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{compose, FiniteMap};
use crate::monads::MonadPlugin;
use crate::multicat::Multicategory;
use crate::report::CheckReport;

use super::{algebra_maps, blob, blob_mult_at, blob_unit_at, check_algebra, enumerate_algebras, Algebra, SliceObject};

/// Objects `X`, arrows `X_⊙` with `dom = φ` and `cod = h`; identities and
/// composites come from the unit and multiplication of `⊙`.
pub fn slice_multicat(m: &Multicategory, alg: &Algebra) -> Result<Multicategory> {
    if !check_algebra(m, alg)?.passed() {
        return Err(Error::Invalid("slicing needs a valid algebra".into()));
    }
    let p = &m.plugin;
    let x = &alg.carrier;
    let b = blob(m, x)?;
    let objects = x.carrier.clone();
    let cod = FiniteMap::try_new(b.carrier.clone(), objects.clone(), |xi| alg.h.apply(xi).cloned())?;
    let ids = FiniteMap::try_new(objects.clone(), b.carrier.clone(), |e| blob_unit_at(m, x, e))?;
    let mut comp = BTreeMap::new();
    for z in &b.carrier {
        let (_, a) = z.as_pair().expect("blob element");
        for w in p.enumerate_fiber(&cod, &b.phi[z])? {
            if let Some(c) = blob_mult_at(m, &Element::pair(w.clone(), a.clone()))? {
                comp.insert(Element::pair(w, z.clone()), c);
            }
        }
    }
    Multicategory::new(p.clone(), b.phi, cod, ids, comp, m.truncation)
}

/// Objects of `Alg(A)/h`: algebras with carrier size at most `max_carrier`
/// together with an algebra map into `h`.
pub fn algebras_over(m: &Multicategory, alg: &Algebra, max_carrier: usize) -> Result<Vec<(Algebra, FiniteMap)>> {
    let mut out = Vec::new();
    for k in enumerate_algebras(m, max_carrier)? {
        for f in algebra_maps(m, &k, alg)? {
            out.push((k.clone(), f));
        }
    }
    Ok(out)
}

/// Compares `⊙` of `A_h` at `q: Y -> X` with `⊙` of `A` at `p∘q`, sliced
/// over `h`, through `(v, (T(q)(v), a)) <-> (v, a)`: bijection, maps to
/// `X`, units and multiplications.
pub fn slicing_agreement(m: &Multicategory, alg: &Algebra, q: &FiniteMap) -> Result<CheckReport> {
    let p = &m.plugin;
    let x = &alg.carrier;
    let ah = slice_multicat(m, alg)?;
    let over_x = SliceObject::new(q.clone());
    let over_s = SliceObject::new(compose(&x.p, q)?);
    let small = blob(&ah, &over_x)?;
    let big = blob(m, &over_s)?;
    let mut report = CheckReport::with_bound(m.truncation);

    let beta = |e: &Element| -> Result<Element> {
        let (v, a) = e.as_pair().expect("blob element");
        Ok(Element::pair(v.clone(), Element::pair(p.apply_map(q, v)?, a.clone())))
    };
    let to_x = |e: &Element| -> Result<Element> { Ok(alg.h.apply(&super::blob_apply(m, &|y| q.apply(y).cloned(), e)?)?.clone()) };

    let image = FiniteMap::try_new(big.carrier.clone(), small.carrier.clone(), beta);
    let image = match image {
        Ok(f) => f,
        Err(e) => {
            report.check("bijection", false, Element::star, || e.to_string());
            return Ok(report);
        }
    };
    report.check("bijection", image.is_bijection(), Element::star, || "the comparison is not a bijection".into());
    for e in &big.carrier {
        let lhs = to_x(e)?;
        let rhs = small.p.apply(image.apply(e)?)?;
        report.check("over the carrier", &lhs == rhs, || e.clone(), || format!("{lhs} vs {rhs}"));
    }
    for y in &q.source().clone() {
        let lhs = beta(&blob_unit_at(m, &over_s, y)?)?;
        let rhs = blob_unit_at(&ah, &over_x, y)?;
        report.check("unit", lhs == rhs, || y.clone(), || format!("{lhs} vs {rhs}"));
    }
    // second level: (U, a) over A becomes (T(beta)(U), (T(q_⊙)(U), a)) over A_h
    let (big2, skipped) = super::composable_blob(m, &big)?;
    *report.skipped.entry("multiplication".into()).or_default() += skipped;
    for theta in &big2 {
        let flat = blob_mult_at(m, theta)?.expect("composite exists");
        let (uu, a) = theta.as_pair().expect("blob element");
        let moved = p.relabel(uu, &mut |e| beta(e))?;
        let over = p.relabel(uu, &mut |e| to_x(e))?;
        let theta_h = Element::pair(moved, Element::pair(over, a.clone()));
        match blob_mult_at(&ah, &theta_h)? {
            Some(rhs) => {
                let lhs = beta(&flat)?;
                report.check("multiplication", lhs == rhs, || theta.clone(), || format!("{lhs} vs {rhs}"))
            }
            None => report.skip("multiplication"),
        }
    }
    Ok(report)
}
