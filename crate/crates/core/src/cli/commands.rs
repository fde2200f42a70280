use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::doc::{
    algebra_from_json, field, multicat_from_json, multicat_map_from_json, multicat_map_to_json, multicat_to_json,
    set_to_json, span_from_json, span_to_json,
};
use super::dot::{free_arrow_dot, graph_dot, opetope_dot};
use super::{render, Command, Ctx, Export, Format, Method, Output};
use crate::algebras::endo::{algebra_operad_correspondence, arity_of, endomorphism_operad};
use crate::algebras::slice::slice_multicat;
use crate::algebras::{check_algebra, enumerate_algebras, standard_carrier};
use crate::element::Element;
use crate::error::{guard, Error, Result};
use crate::finset::FiniteSet;
use crate::free::opetope::enumerate_opetopes;
use crate::free::{free_dom, free_enumerate, free_multicat};
use crate::monads::{check_cartesian, check_monad_laws, Monad, MonadPlugin};
use crate::multicat::{check_map, Multicategory};
use crate::spans::{compose_spans, TSpan};
use crate::transport::characterization::{check_package, monad_data, recover_multicat};
use crate::transport::structured::{check_structured, free_structured};
use crate::transport::{
    check_nat_trans, operad_from_regular_theory, transport_by_composition, transport_by_pullback, CartesianNatTrans,
};

type Run = Result<Output>;

pub(super) fn dispatch(c: &Command, ctx: &mut Ctx) -> Run {
    match c {
        Command::CheckMonad { name, errors, table, bound, base } => {
            check_monad(name, errors.as_deref(), table.as_deref(), *bound, *base)
        }
        Command::CheckMulticat(i) => check_multicat(&ctx.document(&i.input)?),
        Command::CheckMap(i) => check_map_cmd(&ctx.document(&i.input)?),
        Command::CheckAlgebra(i) => check_algebra_cmd(&ctx.document(&i.input)?),
        Command::ComposeSpans(i) => compose(&ctx.document(&i.input)?),
        Command::Free { input, depth, arity, check } => {
            let d = ctx.document(&input.input)?;
            free(&d, *depth, *arity, *check, ctx.cap)
        }
        Command::Opetopes { dim, size } => opetopes(*dim, *size, ctx.cap),
        Command::Algebras { input, max_carrier } => algebras(&ctx.document(&input.input)?, *max_carrier, ctx.cap),
        Command::Endo { carrier, bound, input } => {
            let d = input.as_ref().map(|p| ctx.document(&Some(p.clone()))).transpose()?;
            endo(*carrier, *bound, d.as_ref(), ctx.cap)
        }
        Command::Slice(i) => slice(&ctx.document(&i.input)?),
        Command::Transport { input, method, bound } => transport(&ctx.document(&input.input)?, *method, *bound),
        Command::Structured { input, bound, hom, check } => {
            structured(&ctx.document(&input.input)?, *bound, hom.as_deref(), *check, ctx.cap)
        }
        Command::Recover(i) => recover(&ctx.document(&i.input)?),
        Command::Export { input, format, what, depth, dim, size } => {
            let d = match what {
                Export::Opetopes => None,
                _ => Some(ctx.document(&input.input)?),
            };
            export(d.as_ref(), *format, *what, *depth, *dim, *size, ctx.cap)
        }
    }
}

fn parse_json(flag: &str, text: Option<&str>) -> Result<Option<Value>> {
    text.map(|t| serde_json::from_str(t).map_err(|e| Error::Invalid(format!("--{flag}: {e}")))).transpose()
}

fn check_monad(name: &str, errors: Option<&str>, table: Option<&str>, bound: usize, base: usize) -> Run {
    let monad = Monad::from_name(name, parse_json("errors", errors)?.as_ref(), parse_json("table", table)?.as_ref())?;
    let z = FiniteSet::range(base);
    let laws = check_monad_laws(&monad, &z, bound)?;
    let cart = check_cartesian(&monad, &z, bound)?;
    let passed = laws.passed() && cart.passed();
    let witness = match (cart.witnesses.first(), laws.first_failure()) {
        (Some(w), _) => json!({ "square": w.square_name, "map": format!("{base} -> 1"), "detail": w.witness.to_string() }),
        (None, Some(w)) => w.to_json(),
        (None, None) => Value::Null,
    };
    Ok(Output::Report(
        json!({
            "monad": monad.to_json(),
            "config": { "bound": bound, "base": base },
            "laws": laws.to_json(),
            "cartesian": cart.to_json(),
            "witness": witness,
        }),
        passed,
    ))
}

fn summary(m: &Multicategory) -> Value {
    json!({
        "monad": m.plugin.to_json(),
        "objects": m.objects.len(),
        "arrows": m.arrows.len(),
        "composites": m.comp.len(),
        "truncation": m.truncation,
    })
}

fn check_multicat(d: &Value) -> Run {
    let m = multicat_from_json(d)?;
    let r = m.check_axioms()?;
    let passed = r.passed();
    Ok(Output::Report(json!({ "multicategory": summary(&m), "config": { "truncation": m.truncation }, "axioms": r.to_json() }), passed))
}

fn check_map_cmd(d: &Value) -> Run {
    let m = multicat_from_json(field(d, "source")?)?;
    let n = multicat_from_json(field(d, "target")?)?;
    let f = multicat_map_from_json(&m, &n, field(d, "map")?)?;
    let r = check_map(&f, &m, &n)?;
    let passed = r.passed();
    Ok(Output::Report(
        json!({
            "source": summary(&m),
            "target": summary(&n),
            "config": { "truncation": [m.truncation, n.truncation] },
            "map": multicat_map_to_json(&f),
            "laws": r.to_json(),
        }),
        passed,
    ))
}

fn check_algebra_cmd(d: &Value) -> Run {
    let m = multicat_from_json(field(d, "multicategory")?)?;
    let a = algebra_from_json(&m, field(d, "algebra")?)?;
    let r = check_algebra(&m, &a)?;
    let passed = r.passed();
    Ok(Output::Report(
        json!({ "multicategory": summary(&m), "config": { "truncation": m.truncation }, "algebra": a.to_json(), "laws": r.to_json() }),
        passed,
    ))
}

fn compose(d: &Value) -> Run {
    let first = span_from_json(field(d, "first")?)?;
    let second = span_from_json(field(d, "second")?)?;
    let c = compose_spans(&second, &first)?;
    Ok(Output::Report(json!({ "config": {}, "composite": span_to_json(&c), "apex": c.apex.len() }), true))
}

fn arity(g: &TSpan, t: &Element) -> Result<usize> {
    Ok(g.plugin.labels(&free_dom(g, t)?)?.len())
}

fn free(d: &Value, depth: usize, arity_bound: Option<usize>, check: bool, cap: usize) -> Run {
    let g = span_from_json(d)?;
    let arrows = free_enumerate(&g, depth, arity_bound)?;
    guard("listed free arrows", arrows.len(), cap)?;
    let mut by_arity: BTreeMap<String, usize> = BTreeMap::new();
    for t in &arrows {
        *by_arity.entry(arity(&g, t)?.to_string()).or_default() += 1;
    }
    let mut v = json!({
        "config": { "depth": depth, "arity": arity_bound },
        "count": arrows.len(),
        "by_arity": by_arity,
        "arrows": arrows.iter().map(Element::to_json).collect::<Vec<_>>(),
    });
    let mut passed = true;
    if check {
        let r = free_multicat(&g, depth, arity_bound)?.check_axioms()?;
        passed = r.passed();
        v["axioms"] = r.to_json();
    }
    Ok(Output::Report(v, passed))
}

fn opetopes(dim: usize, size: usize, cap: usize) -> Run {
    let all = enumerate_opetopes(dim, size)?;
    guard("listed opetopes", all.len(), cap)?;
    let mut by_size: BTreeMap<String, usize> = BTreeMap::new();
    for o in &all {
        *by_size.entry(o.size().to_string()).or_default() += 1;
    }
    Ok(Output::Report(
        json!({
            "config": { "dim": dim, "size": size },
            "count": all.len(),
            "by_size": by_size,
            "opetopes": all.iter().map(|o| o.to_element().to_json()).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn algebras(d: &Value, max_carrier: usize, cap: usize) -> Run {
    let m = multicat_from_json(d)?;
    let all = enumerate_algebras(&m, max_carrier)?;
    guard("listed algebras", all.len(), cap)?;
    let mut by_size: BTreeMap<String, usize> = BTreeMap::new();
    for a in &all {
        *by_size.entry(a.carrier.carrier.len().to_string()).or_default() += 1;
    }
    Ok(Output::Report(
        json!({
            "multicategory": summary(&m),
            "config": { "max_carrier": max_carrier, "truncation": m.truncation },
            "count": all.len(),
            "by_carrier_size": by_size,
            "algebras": all.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn endo(carrier: usize, bound: usize, d: Option<&Value>, cap: usize) -> Run {
    let x = standard_carrier(carrier);
    let end = endomorphism_operad(&x, bound)?;
    guard("endomorphism arrows", end.arrows.len(), cap)?;
    let mut by_arity: BTreeMap<String, usize> = BTreeMap::new();
    for f in &end.arrows {
        *by_arity.entry(arity_of(f)?.to_string()).or_default() += 1;
    }
    let mut v = json!({
        "config": { "carrier": carrier, "bound": bound },
        "carrier": set_to_json(&x),
        "by_arity": by_arity,
        "axioms": end.check_axioms()?.to_json(),
    });
    let mut passed = v["axioms"]["passed"] == json!(true);
    if let Some(d) = d {
        let a = multicat_from_json(d)?;
        for f in &a.arrows {
            if a.plugin.labels(a.dom_of(f)?)?.len() > bound {
                return Err(Error::Invalid(format!("arrow {f} has arity above --bound {bound}")));
            }
        }
        let c = algebra_operad_correspondence(&a, &x, bound)?;
        v["correspondence"] = json!({ "algebras": c.algebras.len(), "maps": c.maps.len(), "bijective": c.bijective });
        passed &= c.bijective;
    }
    Ok(Output::Report(v, passed))
}

fn slice(d: &Value) -> Run {
    let m = multicat_from_json(field(d, "multicategory")?)?;
    let a = algebra_from_json(&m, field(d, "algebra")?)?;
    let s = slice_multicat(&m, &a)?;
    let r = s.check_axioms()?;
    let passed = r.passed();
    Ok(Output::Report(
        json!({ "config": { "truncation": s.truncation }, "slice": multicat_to_json(&s), "axioms": r.to_json() }),
        passed,
    ))
}

fn transport(d: &Value, method: Method, bound: usize) -> Run {
    let phi = CartesianNatTrans::from_json(field(d, "transformation")?)?;
    let laws = check_nat_trans(&phi, bound)?;
    let (how, m) = match d.get("multicategory") {
        Some(mv) => {
            let m = multicat_from_json(mv)?;
            match method {
                Method::Composition => ("composition", transport_by_composition(&phi, &m)?),
                Method::Pullback => ("pullback", transport_by_pullback(&phi, &m, bound)?),
            }
        }
        None => ("regular theory", operad_from_regular_theory(&phi, bound)?),
    };
    let axioms = m.check_axioms()?;
    let passed = laws.passed() && axioms.passed();
    Ok(Output::Report(
        json!({
            "config": { "bound": bound, "method": how },
            "transformation": phi.to_json(),
            "naturality": laws.to_json(),
            "result": multicat_to_json(&m),
            "axioms": axioms.to_json(),
        }),
        passed,
    ))
}

fn object_of_size(p: &Monad, objects: &FiniteSet, n: usize) -> Result<Element> {
    let found: Vec<&Element> = objects.iter().filter(|o| p.size(o).map_or(false, |s| s == n)).collect();
    match found.as_slice() {
        [o] => Ok((*o).clone()),
        [] => Err(Error::Invalid(format!("no object of size {n} within bound"))),
        _ => Err(Error::Invalid(format!("several objects have size {n}; --hom needs a one-object multicategory"))),
    }
}

fn structured(d: &Value, bound: Option<usize>, hom: Option<&[usize]>, check: Option<usize>, cap: usize) -> Run {
    let m = multicat_from_json(d)?;
    let bound = bound.or_else(|| hom.map(|h| h[0].max(h[1]))).unwrap_or(3);
    let b = free_structured(&m, bound)?;
    guard("structured arrows", b.arrows.len(), cap)?;
    let mut v = json!({
        "multicategory": summary(&m),
        "config": { "bound": bound, "check": check, "truncation": m.truncation },
        "objects": b.objects.len(),
        "arrows": b.arrows.len(),
        "composites": b.comp.len(),
    });
    if let Some(h) = hom {
        let from = object_of_size(&m.plugin, &b.objects, h[0])?;
        let to = object_of_size(&m.plugin, &b.objects, h[1])?;
        v["hom"] = json!({ "from": from.to_json(), "to": to.to_json(), "count": b.hom_count(&from, &to) });
    }
    let mut passed = true;
    if let Some(l) = check {
        let r = check_structured(&b, l)?;
        passed = r.passed();
        v["laws"] = r.to_json();
    }
    Ok(Output::Report(v, passed))
}

fn recover(d: &Value) -> Run {
    let m = multicat_from_json(d)?;
    let pkg = monad_data(&m, &[])?;
    let r = check_package(&pkg)?;
    let back = recover_multicat(&pkg)?;
    let same = back == m;
    let passed = r.passed() && same;
    Ok(Output::Report(
        json!({
            "multicategory": summary(&m),
            "config": { "truncation": m.truncation },
            "package": r.to_json(),
            "recovered_equal": same,
            "recovered": multicat_to_json(&back),
        }),
        passed,
    ))
}

/// A graph document, or the underlying graph of a multicategory document.
fn graph_of(d: &Value) -> Result<TSpan> {
    if ["ids", "terminal", "multicategory"].iter().any(|k| d.get(k).is_some()) {
        Ok(multicat_from_json(d)?.graph())
    } else {
        span_from_json(d)
    }
}

fn export(d: Option<&Value>, format: Format, what: Export, depth: usize, dim: usize, size: usize, cap: usize) -> Run {
    let text = match (what, format) {
        (Export::Opetopes, _) => {
            let all = enumerate_opetopes(dim, size)?;
            guard("exported opetopes", all.len(), cap)?;
            match format {
                Format::Dot => all.iter().map(opetope_dot).collect(),
                Format::Json => render(&Value::Array(all.iter().map(|o| o.to_element().to_json()).collect())),
            }
        }
        (Export::Graph, Format::Dot) => graph_dot(&graph_of(d.expect("read"))?)?,
        (Export::Graph, Format::Json) => {
            let d = d.expect("read");
            if ["ids", "terminal", "multicategory"].iter().any(|k| d.get(k).is_some()) {
                render(&multicat_to_json(&multicat_from_json(d)?))
            } else {
                render(&span_to_json(&span_from_json(d)?))
            }
        }
        (Export::Free, _) => {
            let g = graph_of(d.expect("read"))?;
            let arrows = free_enumerate(&g, depth, None)?;
            guard("exported free arrows", arrows.len(), cap)?;
            match format {
                Format::Dot => arrows.iter().map(|t| free_arrow_dot(&g, t)).collect::<Result<String>>()?,
                Format::Json => render(&Value::Array(arrows.iter().map(Element::to_json).collect())),
            }
        }
    };
    Ok(Output::Text(text))
}
