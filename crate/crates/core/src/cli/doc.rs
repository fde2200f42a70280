//! JSON document forms. Every emitter here has a parser that reads its
//! output back to an equal value.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebras::{blob, Algebra, SliceObject};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::Monad;
use crate::multicat::{terminal_multicat, Multicategory, MulticategoryMap};
use crate::spans::TSpan;

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Invalid(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a [Value]> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| Error::Invalid(format!("{what} must be a list")))
}

pub fn set_from_json(v: &Value) -> Result<FiniteSet> {
    let items = array(v, "a set")?.iter().map(Element::from_json).collect::<Result<Vec<_>>>()?;
    let set = FiniteSet::new(items.iter().cloned());
    if set.len() != items.len() {
        return Err(Error::Invalid("a set lists an element twice".into()));
    }
    Ok(set)
}

pub fn set_to_json(s: &FiniteSet) -> Value {
    Value::Array(s.iter().map(Element::to_json).collect())
}

/// Rows `[k, v1, .., vn]`, each with exactly `width` entries.
fn rows(v: &Value, width: usize, what: &str) -> Result<Vec<Vec<Element>>> {
    array(v, what)?
        .iter()
        .map(|r| {
            let r = array(r, what)?;
            if r.len() != width {
                return Err(Error::Invalid(format!("{what} rows have {width} entries")));
            }
            r.iter().map(Element::from_json).collect()
        })
        .collect()
}

fn pairs(v: &Value, what: &str) -> Result<Vec<(Element, Element)>> {
    Ok(rows(v, 2, what)?.into_iter().map(|mut r| (r.remove(0), r.remove(0))).collect())
}

pub fn map_from_json(v: &Value, source: &FiniteSet, target: &FiniteSet, what: &str) -> Result<FiniteMap> {
    let p = pairs(v, what)?;
    if p.len() != source.len() {
        return Err(Error::Invalid(format!("{what} must list each element of its source once")));
    }
    FiniteMap::from_pairs(source.clone(), target.clone(), p)
}

pub fn map_to_json(f: &FiniteMap) -> Value {
    Value::Array(f.pairs().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect())
}

/// Arrows `{name, dom, cod}` into a `dom` table and a `cod` map.
fn arrows_from_json(v: &Value, objects: &FiniteSet) -> Result<(BTreeMap<Element, Element>, FiniteMap)> {
    let mut dom = BTreeMap::new();
    let mut cod = Vec::new();
    for a in array(v, "arrows")? {
        let name = Element::from_json(field(a, "name")?)?;
        if dom.insert(name.clone(), Element::from_json(field(a, "dom")?)?).is_some() {
            return Err(Error::Invalid(format!("arrow {name} is declared twice")));
        }
        cod.push((name, Element::from_json(field(a, "cod")?)?));
    }
    let apex = FiniteSet::new(dom.keys().cloned());
    Ok((dom, FiniteMap::from_pairs(apex, objects.clone(), cod)?))
}

fn arrows_to_json(dom: &BTreeMap<Element, Element>, cod: &FiniteMap) -> Value {
    Value::Array(
        dom.iter()
            .map(|(a, d)| json!({ "name": a.to_json(), "dom": d.to_json(), "cod": cod.apply(a).expect("cod is total").to_json() }))
            .collect(),
    )
}

pub fn monad_from_doc(v: &Value) -> Result<Monad> {
    Monad::from_json(field(v, "monad")?)
}

/// A multicategory: either explicit, nested under `"multicategory"`, or
/// `{"terminal": {"monad": .., "bound": n}}`.
pub fn multicat_from_json(v: &Value) -> Result<Multicategory> {
    if let Some(inner) = v.get("multicategory") {
        return multicat_from_json(inner);
    }
    if let Some(t) = v.get("terminal") {
        let bound = field(t, "bound")?.as_u64().ok_or_else(|| Error::Invalid("bound must be a number".into()))?;
        return terminal_multicat(&monad_from_doc(t)?, bound as usize);
    }
    let plugin = monad_from_doc(v)?;
    let objects = set_from_json(field(v, "objects")?)?;
    let (dom, cod) = arrows_from_json(field(v, "arrows")?, &objects)?;
    let ids = map_from_json(field(v, "ids")?, &objects, cod.source(), "ids")?;
    let mut comp = BTreeMap::new();
    for mut r in rows(field(v, "comp")?, 3, "comp")? {
        let (u, a, c) = (r.remove(0), r.remove(0), r.remove(0));
        let key = Element::pair(u, a);
        if comp.insert(key.clone(), c).is_some() {
            return Err(Error::Invalid(format!("composite of {key} given twice")));
        }
    }
    let truncation = match v.get("truncation") {
        None | Some(Value::Null) => None,
        Some(t) => Some(t.as_u64().ok_or_else(|| Error::Invalid("truncation must be a number".into()))? as usize),
    };
    Multicategory::new(plugin, dom, cod, ids, comp, truncation)
}

pub fn multicat_to_json(m: &Multicategory) -> Value {
    json!({
        "monad": m.plugin.to_json(),
        "objects": set_to_json(&m.objects),
        "arrows": arrows_to_json(&m.dom, &m.cod),
        "ids": map_to_json(&m.ids),
        "comp": m.comp.iter().map(|(k, c)| {
            let (u, a) = k.as_pair().expect("comp keys are pairs");
            json!([u.to_json(), a.to_json(), c.to_json()])
        }).collect::<Vec<_>>(),
        "truncation": m.truncation,
    })
}

/// A span `{monad, source, target, arrows}`, or a graph `{monad, objects,
/// arrows}` with the same set at both ends.
pub fn span_from_json(v: &Value) -> Result<TSpan> {
    let plugin = monad_from_doc(v)?;
    let (source, target) = match v.get("objects") {
        Some(o) => {
            let s = set_from_json(o)?;
            (s.clone(), s)
        }
        None => (set_from_json(field(v, "source")?)?, set_from_json(field(v, "target")?)?),
    };
    let (dom, cod) = arrows_from_json(field(v, "arrows")?, &target)?;
    TSpan::new(plugin, source, dom, cod)
}

pub fn span_to_json(s: &TSpan) -> Value {
    s.to_json()
}

/// `{carrier, p, h}` over `m`; `h` is keyed by the elements `(u, a)` of `X_⊙`.
pub fn algebra_from_json(m: &Multicategory, v: &Value) -> Result<Algebra> {
    let carrier = set_from_json(field(v, "carrier")?)?;
    let p = map_from_json(field(v, "p")?, &carrier, &m.objects, "p")?;
    let x = SliceObject::new(p);
    let b = blob(m, &x)?;
    let h = map_from_json(field(v, "h")?, &FiniteSet::new(b.carrier.iter().cloned()), &carrier, "h")?;
    Ok(Algebra { carrier: x, h })
}

pub fn multicat_map_from_json(m: &Multicategory, n: &Multicategory, v: &Value) -> Result<MulticategoryMap> {
    Ok(MulticategoryMap {
        on_objects: map_from_json(field(v, "on_objects")?, &m.objects, &n.objects, "on_objects")?,
        on_arrows: map_from_json(field(v, "on_arrows")?, &m.arrows, &n.arrows, "on_arrows")?,
    })
}

pub fn multicat_map_to_json(f: &MulticategoryMap) -> Value {
    json!({ "on_objects": map_to_json(&f.on_objects), "on_arrows": map_to_json(&f.on_arrows) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::standard::{standard_multicat, FiniteCategory, StandardData};

    #[test]
    fn multicategories_reparse() {
        let c = standard_multicat(&StandardData::Category(FiniteCategory::arrow_category())).unwrap();
        let t = terminal_multicat(&Monad::FreeMonoid, 3).unwrap();
        for m in [c, t] {
            assert_eq!(multicat_from_json(&multicat_to_json(&m)).unwrap(), m);
        }
    }

    #[test]
    fn generated_terminal() {
        let v = json!({ "terminal": { "monad": { "name": "tree" }, "bound": 2 } });
        assert_eq!(multicat_from_json(&v).unwrap(), terminal_multicat(&Monad::Tree, 2).unwrap());
    }

    #[test]
    fn duplicates_and_partial_tables_are_rejected() {
        let m = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let mut v = multicat_to_json(&m);
        v["ids"] = json!([]);
        assert!(multicat_from_json(&v).is_err());
        let mut v = multicat_to_json(&m);
        let first = v["arrows"][0].clone();
        v["arrows"].as_array_mut().unwrap().push(first);
        assert!(multicat_from_json(&v).is_err());
        assert!(set_from_json(&json!(["a", "a"])).is_err());
    }

    #[test]
    fn spans_reparse() {
        let m = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let g = m.graph();
        assert_eq!(span_from_json(&span_to_json(&g)).unwrap(), g);
    }
}
