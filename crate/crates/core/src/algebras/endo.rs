//! The endomorphism operad of a finite set, and the correspondence between
//! algebras of an operad and operad maps into it.

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{guard, Error, Result, DEFAULT_CAP};
use crate::finset::{FiniteMap, FiniteSet};
use crate::monads::{Monad, MonadPlugin};
use crate::multicat::{Multicategory, MulticategoryMap};

use super::{algebras_on, Algebra, SliceObject};

/// An `n`-ary function on `X` as `(n, <outputs>)`, outputs listed over
/// `X^n` in lexicographic order.
pub fn function_arrow(arity: usize, outputs: Vec<Element>) -> Element {
    Element::pair(Element::atom(arity.to_string()), Element::seq(outputs))
}

pub fn arity_of(f: &Element) -> Result<usize> {
    f.as_pair()
        .and_then(|(n, _)| n.as_atom())
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::malformed(f, "not a function arrow"))
}

fn outputs(f: &Element) -> Result<&[Element]> {
    f.as_pair().and_then(|(_, t)| t.as_seq()).ok_or_else(|| Error::malformed(f, "not a function arrow"))
}

/// Index of a tuple in lexicographic order over `x`.
fn tuple_index(x: &FiniteSet, args: &[Element]) -> Result<usize> {
    args.iter().try_fold(0, |acc, a| Ok(acc * x.len() + x.require(a)?))
}

/// All tuples in `X^n`, lexicographically.
pub fn tuples(x: &FiniteSet, n: usize) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| x.iter().map(move |e| [t.clone(), vec![e.clone()]].concat()))
            .collect();
    }
    out
}

pub fn evaluate(x: &FiniteSet, f: &Element, args: &[Element]) -> Result<Element> {
    if arity_of(f)? != args.len() {
        return Err(Error::Mismatch(format!("{f} applied to {} arguments", args.len())));
    }
    let i = tuple_index(x, args)?;
    outputs(f)?.get(i).cloned().ok_or_else(|| Error::malformed(f, "table too short"))
}

/// The operations of `End(X)`: every function `X^n -> X` with `n <= bound`,
/// grouped by arity.
pub fn endomorphism_arrows(x: &FiniteSet, bound: usize) -> Result<Vec<Vec<Element>>> {
    let mut by_arity = Vec::new();
    let mut total = 0usize;
    for n in 0..=bound {
        let rows = tuples(x, n).len();
        let count = (x.len() as f64).powi(rows as i32);
        guard("endomorphism operad arrows", total + count as usize, DEFAULT_CAP)?;
        total += count as usize;
        by_arity.push(tuples(x, rows).into_iter().map(|t| function_arrow(n, t)).collect());
    }
    Ok(by_arity)
}

/// `f(g_1, ..., g_n)`, the arguments of the `g_i` read left to right.
pub fn substitute(x: &FiniteSet, gs: &[Element], f: &Element) -> Result<Element> {
    let arities = gs.iter().map(arity_of).collect::<Result<Vec<_>>>()?;
    let total = arities.iter().sum();
    let mut table = Vec::new();
    for args in tuples(x, total) {
        let mut rest = args.as_slice();
        let mut mid = Vec::with_capacity(gs.len());
        for (g, &k) in gs.iter().zip(&arities) {
            mid.push(evaluate(x, g, &rest[..k])?);
            rest = &rest[k..];
        }
        table.push(evaluate(x, f, &mid)?);
    }
    Ok(function_arrow(total, table))
}

/// `End(X)`: one object, the functions `X^n -> X` for `n <= bound` as
/// arrows, composition by substitution where the result stays in bound.
/// The composite table grows fast: `|X| = 2` at bound 3 has over a million
/// entries, which the guard refuses.
pub fn endomorphism_operad(x: &FiniteSet, bound: usize) -> Result<Multicategory> {
    let plugin = Monad::FreeMonoid;
    let star = Element::star();
    let by_arity = endomorphism_arrows(x, bound)?;
    let arrows = FiniteSet::new(by_arity.iter().flatten().cloned());
    let dom: BTreeMap<Element, Element> =
        arrows.iter().map(|f| Ok((f.clone(), Element::seq(vec![star.clone(); arity_of(f)?])))).collect::<Result<_>>()?;
    let cod = FiniteMap::to_terminal(&arrows);
    let identity = function_arrow(1, x.elements().to_vec());
    let ids = FiniteMap::new(FiniteSet::terminal(), arrows.clone(), |_| identity.clone())?;

    let mut comp = BTreeMap::new();
    for n in 0..=bound {
        for shape in arity_tuples(n, bound) {
            let choices: usize = shape.iter().map(|&k| by_arity[k].len()).product();
            guard("endomorphism operad composites", comp.len() + choices * by_arity[n].len(), DEFAULT_CAP)?;
            let mut inner = Vec::new();
            product(&shape.iter().map(|&k| by_arity[k].as_slice()).collect::<Vec<_>>(), &mut inner, &mut |gs| {
                for f in &by_arity[n] {
                    comp.insert(Element::pair(Element::seq(gs.to_vec()), f.clone()), substitute(x, gs, f)?);
                }
                Ok(())
            })?;
        }
    }
    Multicategory::new(plugin, dom, cod, ids, comp, Some(bound))
}

/// Tuples of `n` arities summing to at most `bound`.
fn arity_tuples(n: usize, bound: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..=bound {
        for mut rest in arity_tuples(n - 1, bound - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

fn product(
    choices: &[&[Element]],
    acc: &mut Vec<Element>,
    emit: &mut dyn FnMut(&[Element]) -> Result<()>,
) -> Result<()> {
    if acc.len() == choices.len() {
        return emit(acc);
    }
    for c in choices[acc.len()] {
        acc.push(c.clone());
        product(choices, acc, emit)?;
        acc.pop();
    }
    Ok(())
}

fn single_object(a: &Multicategory) -> Result<()> {
    if a.plugin != Monad::FreeMonoid || a.objects.len() != 1 {
        return Err(Error::Invalid("expected a one-object free-monoid operad".into()));
    }
    Ok(())
}

/// The map `A -> End(X)` sending each operation to its action; `end` is the
/// arrow set of `End(X)`.
pub fn algebra_to_map(a: &Multicategory, alg: &Algebra, end: &FiniteSet) -> Result<MulticategoryMap> {
    single_object(a)?;
    let x = &alg.carrier.carrier;
    let on_arrows = FiniteMap::try_new(a.arrows.clone(), end.clone(), |op| {
        let n = a.plugin.labels(a.dom_of(op)?)?.len();
        let table = tuples(x, n)
            .into_iter()
            .map(|args| alg.h.apply(&Element::pair(Element::seq(args), op.clone())).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(function_arrow(n, table))
    })?;
    let on_objects = FiniteMap::to_terminal(&a.objects);
    Ok(MulticategoryMap { on_arrows, on_objects })
}

/// Every map `A -> End(X)`, found by backtracking over the arrows of `A` in
/// order of arity. Composites in `End(X)` are computed by substitution when
/// needed, so its composite table is never built; each identity and
/// composite of `A` is checked as soon as all the arrows it mentions have
/// images.
pub fn maps_to_endomorphisms(a: &Multicategory, x: &FiniteSet, bound: usize) -> Result<Vec<MulticategoryMap>> {
    single_object(a)?;
    let by_arity = endomorphism_arrows(x, bound)?;
    let end = FiniteSet::new(by_arity.iter().flatten().cloned());
    let mut order: Vec<(usize, Element)> = Vec::new();
    for op in &a.arrows {
        let n = a.plugin.labels(a.dom_of(op)?)?.len();
        if n > bound {
            return Err(Error::Invalid(format!("operation {op} has arity {n}, above the bound {bound}")));
        }
        order.push((n, op.clone()));
    }
    order.sort();
    let position: BTreeMap<&Element, usize> = order.iter().enumerate().map(|(i, (_, op))| (op, i)).collect();

    // constraints[i]: (inputs, outer, result) to test once arrow i is placed
    let mut constraints: Vec<Vec<(Vec<usize>, usize, usize)>> = vec![Vec::new(); order.len()];
    for (key, c) in &a.comp {
        let (u, outer) = key.as_pair().ok_or_else(|| Error::malformed(key, "expected (u, a)"))?;
        let inputs = a.plugin.labels(u)?.iter().map(|g| position[g]).collect::<Vec<_>>();
        let (outer, result) = (position[outer], position[c]);
        let last = inputs.iter().copied().chain([outer, result]).max().expect("non-empty");
        constraints[last].push((inputs, outer, result));
    }
    let identity = function_arrow(1, x.elements().to_vec());
    let unit = position[a.ids.apply(&a.objects.elements()[0])?];

    struct Search<'s> {
        x: &'s FiniteSet,
        by_arity: &'s [Vec<Element>],
        order: &'s [(usize, Element)],
        constraints: &'s [Vec<(Vec<usize>, usize, usize)>],
        identity: &'s Element,
        unit: usize,
        found: Vec<Vec<Element>>,
    }
    fn go(s: &mut Search<'_>, chosen: &mut Vec<Element>) -> Result<()> {
        let i = chosen.len();
        if i == s.order.len() {
            guard("maps into End(X)", s.found.len() + 1, DEFAULT_CAP)?;
            s.found.push(chosen.clone());
            return Ok(());
        }
        for f in &s.by_arity[s.order[i].0] {
            if i == s.unit && f != s.identity {
                continue;
            }
            chosen.push(f.clone());
            let mut ok = true;
            for (inputs, outer, result) in &s.constraints[i] {
                let gs: Vec<Element> = inputs.iter().map(|&j| chosen[j].clone()).collect();
                if substitute(s.x, &gs, &chosen[*outer])? != chosen[*result] {
                    ok = false;
                    break;
                }
            }
            if ok {
                go(s, chosen)?;
            }
            chosen.pop();
        }
        Ok(())
    }
    let mut search =
        Search { x, by_arity: &by_arity, order: &order, constraints: &constraints, identity: &identity, unit, found: Vec::new() };
    go(&mut search, &mut Vec::new())?;
    search
        .found
        .into_iter()
        .map(|images| {
            let table: BTreeMap<&Element, &Element> = order.iter().map(|(_, op)| op).zip(&images).collect();
            let on_arrows = FiniteMap::new(a.arrows.clone(), end.clone(), |op| table[op].clone())?;
            Ok(MulticategoryMap { on_arrows, on_objects: FiniteMap::to_terminal(&a.objects) })
        })
        .collect()
}

/// The algebra on `X` whose operations are the images of a map `A -> End(X)`.
pub fn map_to_algebra(a: &Multicategory, f: &MulticategoryMap, x: &FiniteSet) -> Result<Algebra> {
    single_object(a)?;
    let carrier = SliceObject::new(FiniteMap::new(x.clone(), a.objects.clone(), |_| a.objects.elements()[0].clone())?);
    let b = super::blob(a, &carrier)?;
    let h = FiniteMap::try_new(b.carrier.clone(), x.clone(), |xi| {
        let (u, op) = xi.as_pair().expect("blob element");
        evaluate(x, f.on_arrows.apply(op)?, u.as_seq().expect("word"))
    })?;
    Ok(Algebra { carrier, h })
}

/// Both sides of the correspondence, enumerated independently, and whether
/// the explicit translations are mutually inverse bijections between them.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub algebras: Vec<Algebra>,
    pub maps: Vec<MulticategoryMap>,
    pub bijective: bool,
}

pub fn algebra_operad_correspondence(a: &Multicategory, x: &FiniteSet, bound: usize) -> Result<Correspondence> {
    single_object(a)?;
    let end = FiniteSet::new(endomorphism_arrows(x, bound)?.into_iter().flatten());
    let carrier = SliceObject::new(FiniteMap::new(x.clone(), a.objects.clone(), |_| a.objects.elements()[0].clone())?);
    let algebras = algebras_on(a, &carrier, DEFAULT_CAP * 10)?;
    let maps = maps_to_endomorphisms(a, x, bound)?;
    let mut bijective = algebras.len() == maps.len();
    let mut images = Vec::new();
    for alg in &algebras {
        let f = algebra_to_map(a, alg, &end)?;
        bijective &= maps.contains(&f) && &map_to_algebra(a, &f, x)? == alg;
        images.push(f);
    }
    images.sort_by(|p, q| p.on_arrows.images().cmp(q.on_arrows.images()));
    images.dedup();
    bijective &= images.len() == algebras.len();
    for f in &maps {
        let alg = map_to_algebra(a, f, x)?;
        bijective &= algebras.contains(&alg) && &algebra_to_map(a, &alg, &end)? == f;
    }
    Ok(Correspondence { algebras, maps, bijective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::terminal_multicat;

    #[test]
    fn endomorphism_counts() {
        let x = FiniteSet::range(2);
        let end = endomorphism_operad(&x, 2).unwrap();
        let count = |n: usize| end.arrows.iter().filter(|f| arity_of(f).unwrap() == n).count();
        assert_eq!((count(0), count(1), count(2)), (2, 4, 16));
        assert!(end.check_axioms().unwrap().passed());
        let one = endomorphism_operad(&FiniteSet::range(1), 3).unwrap();
        assert_eq!(one.arrows.len(), 4);
    }

    #[test]
    fn projections_compose_to_projections() {
        let x = FiniteSet::range(2);
        let end = endomorphism_operad(&x, 2).unwrap();
        let first = function_arrow(2, vec!["0".into(), "0".into(), "1".into(), "1".into()]);
        let id = function_arrow(1, vec!["0".into(), "1".into()]);
        let u = Element::seq(vec![id.clone(), id]);
        assert_eq!(end.compose(&u, &first).unwrap(), Some(first));
    }

    #[test]
    fn search_agrees_with_generic_enumeration() {
        let x = FiniteSet::range(2);
        let end = endomorphism_operad(&x, 2).unwrap();
        let t = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let mut generic = crate::multicat::enumerate_maps(&t, &end, DEFAULT_CAP).unwrap();
        let mut fast = maps_to_endomorphisms(&t, &x, 2).unwrap();
        for f in &fast {
            assert!(crate::multicat::check_map(f, &t, &end).unwrap().passed());
        }
        let key = |f: &MulticategoryMap| f.on_arrows.images().to_vec();
        generic.sort_by_key(key);
        fast.sort_by_key(key);
        assert_eq!(generic.len(), 4);
        assert_eq!(generic, fast);
    }

    #[test]
    fn terminal_operad_correspondence() {
        let t = terminal_multicat(&Monad::FreeMonoid, 2).unwrap();
        let c = algebra_operad_correspondence(&t, &FiniteSet::range(2), 2).unwrap();
        assert!(c.bijective);
        assert_eq!(c.algebras.len(), 4);
    }
}
