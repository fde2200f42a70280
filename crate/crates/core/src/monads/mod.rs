//! Cartesian monads on finite sets, represented elementwise.
//!
//! `T(X)` is never materialized. A `T`-element over `X` is an [`Element`]
//! whose *positions* carry labels drawn from `X`; its *shape* is the same
//! term with every label replaced by `*`, i.e. its image in `T(1)`. All the
//! shipped monads are polynomial, so a `T`-element is exactly a shape plus a
//! tuple of labels, and the fiber of `T(c)` over `t` is the product of the
//! fibers of `c` over the labels of `t`.

mod laws;

pub use laws::{check_cartesian, check_monad_laws, CartesianReport, SquareWitness};

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{guard, Error, Result, DEFAULT_CAP};
use crate::finset::{fiber, FiniteMap, FiniteSet};

/// The elementwise interface of a monad `(T, η, μ)` on finite sets.
pub trait MonadPlugin {
    fn name(&self) -> String;

    /// Structural well-formedness of a term, ignoring what its labels are.
    fn check_term(&self, t: &Element) -> Result<()>;

    /// The labels of `t`, in position order.
    fn labels(&self, t: &Element) -> Result<Vec<Element>>;

    /// Replaces the labels of `t` positionally, keeping its shape.
    fn with_labels(&self, t: &Element, labels: &[Element]) -> Result<Element>;

    fn size(&self, t: &Element) -> Result<usize>;

    fn unit(&self, x: &Element) -> Element;

    /// Flattens a `T`-term whose labels are themselves `T`-terms.
    fn mult(&self, tt: &Element) -> Result<Element>;

    /// All elements of `T(1)` of size at most `bound`, in canonical order.
    fn shapes(&self, bound: usize) -> Vec<Element>;

    fn validate(&self, t: &Element, base: &FiniteSet) -> Result<()> {
        self.check_term(t)?;
        for l in self.labels(t)? {
            base.require(&l)?;
        }
        Ok(())
    }

    fn relabel(&self, t: &Element, f: &mut dyn FnMut(&Element) -> Result<Element>) -> Result<Element> {
        let labels = self.labels(t)?.iter().map(|l| f(l)).collect::<Result<Vec<_>>>()?;
        self.with_labels(t, &labels)
    }

    /// `T(f)` applied to `t`.
    fn apply_map(&self, f: &FiniteMap, t: &Element) -> Result<Element> {
        self.relabel(t, &mut |l| f.apply(l).cloned())
    }

    fn shape(&self, t: &Element) -> Result<Element> {
        self.relabel(t, &mut |_| Ok(Element::star()))
    }

    /// Every `u` with `T(c)(u) = t`, in canonical order.
    fn enumerate_fiber(&self, c: &FiniteMap, t: &Element) -> Result<Vec<Element>> {
        let fibers = self
            .labels(t)?
            .iter()
            .map(|l| fiber(c, l))
            .collect::<Result<Vec<_>>>()?;
        let total = fibers.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len()));
        guard("fiber enumeration", total.unwrap_or(usize::MAX), DEFAULT_CAP)?;
        let mut out = Vec::new();
        let mut choice: Vec<Element> = Vec::with_capacity(fibers.len());
        product(&fibers, &mut choice, &mut |labels| {
            out.push(self.with_labels(t, labels)?);
            Ok(())
        })?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Every `T`-element over `base` whose shape lies in `shapes`.
    fn over_shapes(&self, base: &FiniteSet, shapes: &[Element]) -> Result<Vec<Element>> {
        let bang = FiniteMap::to_terminal(base);
        let mut out = Vec::new();
        for s in shapes {
            out.extend(self.enumerate_fiber(&bang, s)?);
            guard("T-element enumeration", out.len(), DEFAULT_CAP)?;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Every `T`-element over `base` of size at most `bound`.
    fn enumerate_telements(&self, base: &FiniteSet, bound: usize) -> Result<Vec<Element>> {
        self.over_shapes(base, &self.shapes(bound))
    }

    /// Every `T`-element over weighted labels whose size is at most `bound`
    /// and whose label weights sum to at most `bound`. Returns each element
    /// with its total weight. Iterating this over `T(X)`, `T(T(X))`, ...
    /// gives finite, shape-closed fragments of the iterated monad.
    fn enumerate_weighted(&self, base: &[(Element, usize)], bound: usize) -> Result<Vec<(Element, usize)>> {
        let mut out = Vec::new();
        for s in self.shapes(bound) {
            let k = self.labels(&s)?.len();
            let mut choice = Vec::with_capacity(k);
            weighted_tuples(base, k, bound, 0, &mut choice, &mut |labels, w| {
                out.push((self.with_labels(&s, labels)?, w));
                guard("weighted enumeration", out.len(), DEFAULT_CAP)
            })?;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Given a `T(T(Y))`-term `blocks` and a `T(Z)`-term `flat` with as many
    /// labels as the flattening of `blocks`, returns the `T(T(Z))`-term with
    /// the block structure of `blocks` and the labels of `flat`.
    fn unflatten(&self, blocks: &Element, flat: &Element) -> Result<Element> {
        let flat_labels = self.labels(flat)?;
        let mut next = 0usize;
        let mut inner = Vec::new();
        for b in self.labels(blocks)? {
            let k = self.labels(&b)?.len();
            let chunk = flat_labels
                .get(next..next + k)
                .ok_or_else(|| Error::malformed(flat, "too few labels to unflatten"))?;
            inner.push(self.with_labels(&b, chunk)?);
            next += k;
        }
        if next != flat_labels.len() {
            return Err(Error::malformed(flat, "too many labels to unflatten"));
        }
        self.with_labels(blocks, &inner)
    }

    /// Pairs the labels of two terms of equal shape; the result has the
    /// shape of `right`.
    fn zip(&self, left: &Element, right: &Element) -> Result<Element> {
        let a = self.labels(left)?;
        let b = self.labels(right)?;
        if a.len() != b.len() {
            return Err(Error::Mismatch(format!("cannot zip {left} with {right}")));
        }
        let pairs: Vec<Element> = a.into_iter().zip(b).map(|(x, y)| Element::pair(x, y)).collect();
        self.with_labels(right, &pairs)
    }
}

fn product(
    fibers: &[FiniteSet],
    choice: &mut Vec<Element>,
    emit: &mut dyn FnMut(&[Element]) -> Result<()>,
) -> Result<()> {
    if choice.len() == fibers.len() {
        return emit(choice);
    }
    for x in fibers[choice.len()].iter() {
        choice.push(x.clone());
        product(fibers, choice, emit)?;
        choice.pop();
    }
    Ok(())
}

fn weighted_tuples(
    base: &[(Element, usize)],
    k: usize,
    bound: usize,
    used: usize,
    choice: &mut Vec<Element>,
    emit: &mut dyn FnMut(&[Element], usize) -> Result<()>,
) -> Result<()> {
    if choice.len() == k {
        return emit(choice, used);
    }
    for (x, w) in base {
        if used + w <= bound {
            choice.push(x.clone());
            weighted_tuples(base, k, bound, used + w, choice, emit)?;
            choice.pop();
        }
    }
    Ok(())
}

/// A finite monoid on the atoms `0..n`, given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::Invalid("monoid table must be a non-empty square table over 0..n".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("monoid table is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("monoid table has no identity".into()))?;
        Ok(FiniteMonoid { table, unit })
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Self {
        FiniteMonoid::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
            .expect("cyclic table is a monoid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> FiniteSet {
        FiniteSet::range(self.order())
    }

    pub fn unit(&self) -> Element {
        Element::atom(self.unit.to_string())
    }

    pub fn index(&self, m: &Element) -> Result<usize> {
        m.as_atom()
            .and_then(|a| a.parse::<usize>().ok())
            .filter(|&i| i < self.order())
            .ok_or_else(|| Error::malformed(m, "not a monoid element"))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(Element::atom(self.table[self.index(a)?][self.index(b)?].to_string()))
    }
}

/// The shipped plugins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monad {
    Identity,
    /// Words `<x1,...,xn>`; concatenation.
    FreeMonoid,
    /// Sorted words. Not cartesian; kept as a negative control.
    FreeCommutativeMonoid,
    /// `X + E`: `val:x` or `exc:e`.
    Exceptions(FiniteSet),
    /// `M × X`: `(m, x)`.
    Writer(FiniteMonoid),
    /// Planar trees with `X`-labelled leaves `leaf:x` and unlabelled internal
    /// nodes `t[...]` of any arity; multiplication substitutes at the leaves.
    Tree,
}

const LEAF: &str = "leaf";
const VAL: &str = "val";
const EXC: &str = "exc";

pub fn leaf(x: Element) -> Element {
    Element::tag(LEAF, x)
}

pub fn tree_node(children: Vec<Element>) -> Element {
    Element::node(Element::atom("t"), children)
}

impl Monad {
    pub fn exceptions(errors: FiniteSet) -> Self {
        Monad::Exceptions(errors)
    }

    pub fn writer(monoid: FiniteMonoid) -> Self {
        Monad::Writer(monoid)
    }

    pub fn is_cartesian_by_construction(&self) -> bool {
        !matches!(self, Monad::FreeCommutativeMonoid)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Monad::Exceptions(e) => {
                json!({ "name": self.name(), "E": e.iter().map(Element::to_json).collect::<Vec<_>>() })
            }
            Monad::Writer(m) => json!({ "name": self.name(), "table": m.table() }),
            _ => json!({ "name": self.name() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let name = v
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("monad selector needs a \"name\"".into()))?;
        Monad::from_name(name, v.get("E"), v.get("table"))
    }

    pub fn from_name(name: &str, errors: Option<&Value>, table: Option<&Value>) -> Result<Self> {
        Ok(match name {
            "identity" => Monad::Identity,
            "free_monoid" => Monad::FreeMonoid,
            "free_commutative_monoid" => Monad::FreeCommutativeMonoid,
            "tree" => Monad::Tree,
            "exceptions" => {
                let e = match errors {
                    None => FiniteSet::atoms(["0"]),
                    Some(Value::Array(items)) => {
                        FiniteSet::new(items.iter().map(Element::from_json).collect::<Result<Vec<_>>>()?)
                    }
                    Some(_) => return Err(Error::Invalid("\"E\" must be an array".into())),
                };
                Monad::Exceptions(e)
            }
            "writer" => {
                let m = match table {
                    None => FiniteMonoid::cyclic(2),
                    Some(t) => FiniteMonoid::new(
                        serde_json::from_value(t.clone())
                            .map_err(|e| Error::Invalid(format!("bad monoid table: {e}")))?,
                    )?,
                };
                Monad::Writer(m)
            }
            other => return Err(Error::Invalid(format!("unknown monad {other:?}"))),
        })
    }

    fn tree_labels(t: &Element, out: &mut Vec<Element>) -> Result<()> {
        match t {
            Element::Tag(l, x) if &**l == LEAF => {
                out.push((**x).clone());
                Ok(())
            }
            Element::Node(_, children) => children.iter().try_for_each(|c| Monad::tree_labels(c, out)),
            _ => Err(Error::malformed(t, "not a tree term")),
        }
    }

    fn tree_relabel(t: &Element, labels: &mut std::slice::Iter<'_, Element>) -> Result<Element> {
        match t {
            Element::Tag(l, _) if &**l == LEAF => labels
                .next()
                .map(|x| leaf(x.clone()))
                .ok_or_else(|| Error::malformed(t, "too few labels")),
            Element::Node(label, children) => Ok(Element::Node(
                label.clone(),
                children.iter().map(|c| Monad::tree_relabel(c, labels)).collect::<Result<_>>()?,
            )),
            _ => Err(Error::malformed(t, "not a tree term")),
        }
    }

    fn tree_mult(t: &Element) -> Result<Element> {
        match t {
            Element::Tag(l, inner) if &**l == LEAF => Ok((**inner).clone()),
            Element::Node(label, children) => Ok(Element::Node(
                label.clone(),
                children.iter().map(Monad::tree_mult).collect::<Result<_>>()?,
            )),
            _ => Err(Error::malformed(t, "not a tree term")),
        }
    }

    fn tree_size(t: &Element) -> Result<usize> {
        match t {
            Element::Tag(l, _) if &**l == LEAF => Ok(1),
            Element::Node(_, children) => children.iter().try_fold(1, |acc, c| Ok(acc + Monad::tree_size(c)?)),
            _ => Err(Error::malformed(t, "not a tree term")),
        }
    }

    /// Planar tree shapes over `{*}` with exactly `n` nodes, by node count.
    fn tree_shapes_exact(bound: usize) -> Vec<Vec<Element>> {
        let mut trees: Vec<Vec<Element>> = vec![Vec::new(); bound + 1];
        // forests[m]: sequences of trees with m nodes in total
        let mut forests: Vec<Vec<Vec<Element>>> = vec![Vec::new(); bound + 1];
        forests[0].push(Vec::new());
        for n in 1..=bound {
            if n == 1 {
                trees[1].push(leaf(Element::star()));
            }
            for f in &forests[n - 1] {
                trees[n].push(tree_node(f.clone()));
            }
            let mut fs = Vec::new();
            for first in 1..=n {
                for t in &trees[first] {
                    for rest in &forests[n - first] {
                        let mut f = vec![t.clone()];
                        f.extend(rest.iter().cloned());
                        fs.push(f);
                    }
                }
            }
            forests[n] = fs;
        }
        trees
    }
}

impl MonadPlugin for Monad {
    fn name(&self) -> String {
        match self {
            Monad::Identity => "identity",
            Monad::FreeMonoid => "free_monoid",
            Monad::FreeCommutativeMonoid => "free_commutative_monoid",
            Monad::Exceptions(_) => "exceptions",
            Monad::Writer(_) => "writer",
            Monad::Tree => "tree",
        }
        .to_string()
    }

    fn check_term(&self, t: &Element) -> Result<()> {
        match self {
            Monad::Identity => Ok(()),
            Monad::FreeMonoid => t.as_seq().map(|_| ()).ok_or_else(|| Error::malformed(t, "expected a word")),
            Monad::FreeCommutativeMonoid => match t.as_seq() {
                Some(xs) if xs.windows(2).all(|w| w[0] <= w[1]) => Ok(()),
                _ => Err(Error::malformed(t, "expected a sorted word")),
            },
            Monad::Exceptions(errors) => match t.as_tag() {
                Some((VAL, _)) => Ok(()),
                Some((EXC, e)) if errors.contains(e) => Ok(()),
                _ => Err(Error::malformed(t, "expected val:x or exc:e")),
            },
            Monad::Writer(m) => match t.as_pair() {
                Some((w, _)) => m.index(w).map(|_| ()),
                None => Err(Error::malformed(t, "expected (m, x)")),
            },
            Monad::Tree => Monad::tree_labels(t, &mut Vec::new()),
        }
    }

    fn labels(&self, t: &Element) -> Result<Vec<Element>> {
        match self {
            Monad::Identity => Ok(vec![t.clone()]),
            Monad::FreeMonoid | Monad::FreeCommutativeMonoid => {
                t.as_seq().map(<[Element]>::to_vec).ok_or_else(|| Error::malformed(t, "expected a word"))
            }
            Monad::Exceptions(_) => match t.as_tag() {
                Some((VAL, x)) => Ok(vec![x.clone()]),
                Some((EXC, _)) => Ok(Vec::new()),
                _ => Err(Error::malformed(t, "expected val:x or exc:e")),
            },
            Monad::Writer(_) => t
                .as_pair()
                .map(|(_, x)| vec![x.clone()])
                .ok_or_else(|| Error::malformed(t, "expected (m, x)")),
            Monad::Tree => {
                let mut out = Vec::new();
                Monad::tree_labels(t, &mut out)?;
                Ok(out)
            }
        }
    }

    fn with_labels(&self, t: &Element, labels: &[Element]) -> Result<Element> {
        let expect = |n: usize| -> Result<()> {
            if labels.len() == n {
                Ok(())
            } else {
                Err(Error::malformed(t, format!("expected {n} labels, got {}", labels.len())))
            }
        };
        match self {
            Monad::Identity => {
                expect(1)?;
                Ok(labels[0].clone())
            }
            Monad::FreeMonoid => {
                expect(self.labels(t)?.len())?;
                Ok(Element::seq(labels.to_vec()))
            }
            Monad::FreeCommutativeMonoid => {
                expect(self.labels(t)?.len())?;
                let mut v = labels.to_vec();
                v.sort();
                Ok(Element::seq(v))
            }
            Monad::Exceptions(_) => match t.as_tag() {
                Some((VAL, _)) => {
                    expect(1)?;
                    Ok(Element::tag(VAL, labels[0].clone()))
                }
                Some((EXC, _)) => {
                    expect(0)?;
                    Ok(t.clone())
                }
                _ => Err(Error::malformed(t, "expected val:x or exc:e")),
            },
            Monad::Writer(_) => {
                expect(1)?;
                let (m, _) = t.as_pair().ok_or_else(|| Error::malformed(t, "expected (m, x)"))?;
                Ok(Element::pair(m.clone(), labels[0].clone()))
            }
            Monad::Tree => {
                let mut it = labels.iter();
                let out = Monad::tree_relabel(t, &mut it)?;
                if it.next().is_some() {
                    return Err(Error::malformed(t, "too many labels"));
                }
                Ok(out)
            }
        }
    }

    fn size(&self, t: &Element) -> Result<usize> {
        match self {
            Monad::FreeMonoid | Monad::FreeCommutativeMonoid => Ok(self.labels(t)?.len()),
            Monad::Tree => Monad::tree_size(t),
            _ => {
                self.check_term(t)?;
                Ok(1)
            }
        }
    }

    fn unit(&self, x: &Element) -> Element {
        match self {
            Monad::Identity => x.clone(),
            Monad::FreeMonoid | Monad::FreeCommutativeMonoid => Element::seq(vec![x.clone()]),
            Monad::Exceptions(_) => Element::tag(VAL, x.clone()),
            Monad::Writer(m) => Element::pair(m.unit(), x.clone()),
            Monad::Tree => leaf(x.clone()),
        }
    }

    fn mult(&self, tt: &Element) -> Result<Element> {
        match self {
            Monad::Identity => Ok(tt.clone()),
            Monad::FreeMonoid | Monad::FreeCommutativeMonoid => {
                let mut flat = Vec::new();
                for inner in self.labels(tt)? {
                    flat.extend(self.labels(&inner)?);
                }
                if matches!(self, Monad::FreeCommutativeMonoid) {
                    flat.sort();
                }
                Ok(Element::seq(flat))
            }
            Monad::Exceptions(_) => match tt.as_tag() {
                Some((VAL, inner)) => {
                    self.check_term(inner)?;
                    Ok(inner.clone())
                }
                Some((EXC, _)) => Ok(tt.clone()),
                _ => Err(Error::malformed(tt, "expected val:x or exc:e")),
            },
            Monad::Writer(m) => {
                let (a, inner) = tt.as_pair().ok_or_else(|| Error::malformed(tt, "expected (m, x)"))?;
                let (b, x) = inner.as_pair().ok_or_else(|| Error::malformed(tt, "inner is not (m, x)"))?;
                Ok(Element::pair(m.mul(a, b)?, x.clone()))
            }
            Monad::Tree => Monad::tree_mult(tt),
        }
    }

    fn shapes(&self, bound: usize) -> Vec<Element> {
        let star = Element::star;
        let mut out: Vec<Element> = match self {
            Monad::Identity => {
                if bound >= 1 {
                    vec![star()]
                } else {
                    vec![]
                }
            }
            Monad::FreeMonoid | Monad::FreeCommutativeMonoid => {
                (0..=bound).map(|n| Element::seq(vec![star(); n])).collect()
            }
            Monad::Exceptions(errors) => {
                if bound == 0 {
                    vec![]
                } else {
                    std::iter::once(Element::tag(VAL, star()))
                        .chain(errors.iter().map(|e| Element::tag(EXC, e.clone())))
                        .collect()
                }
            }
            Monad::Writer(m) => {
                if bound == 0 {
                    vec![]
                } else {
                    m.elements().iter().map(|a| Element::pair(a.clone(), star())).collect()
                }
            }
            Monad::Tree => Monad::tree_shapes_exact(bound).into_iter().flatten().collect(),
        };
        out.sort();
        out
    }
}
