//! Finite sets, total maps between them, and chosen pullbacks.

use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};

/// A finite set, stored as a strictly increasing sequence of elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteSet {
    elements: Arc<[Element]>,
}

impl FiniteSet {
    pub fn new(elements: impl IntoIterator<Item = Element>) -> Self {
        let mut v: Vec<Element> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        FiniteSet { elements: v.into() }
    }

    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// The chosen terminal set `{*}`.
    pub fn terminal() -> Self {
        FiniteSet::new([Element::star()])
    }

    /// The set of atoms `0, 1, ..., n-1`.
    pub fn range(n: usize) -> Self {
        FiniteSet::new((0..n).map(|i| Element::atom(i.to_string())))
    }

    pub fn atoms<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        FiniteSet::new(names.into_iter().map(Element::atom))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index_of(x).is_some()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub(crate) fn require(&self, x: &Element) -> Result<usize> {
        self.index_of(x).ok_or_else(|| Error::not_member(x, format!("{self}")))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() > 8 {
            return write!(f, "{{{} elements}}", self.len());
        }
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl FromIterator<Element> for FiniteSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        FiniteSet::new(iter)
    }
}

/// A total map between finite sets. Images are stored in the order of the
/// source's elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    source: FiniteSet,
    target: FiniteSet,
    images: Vec<Element>,
}

impl FiniteMap {
    pub fn new(
        source: FiniteSet,
        target: FiniteSet,
        mut rule: impl FnMut(&Element) -> Element,
    ) -> Result<Self> {
        let images: Vec<Element> = source.iter().map(&mut rule).collect();
        for (x, y) in source.iter().zip(&images) {
            if !target.contains(y) {
                return Err(Error::Mismatch(format!("{x} maps to {y}, outside the target {target}")));
            }
        }
        Ok(FiniteMap { source, target, images })
    }

    pub fn try_new(
        source: FiniteSet,
        target: FiniteSet,
        mut rule: impl FnMut(&Element) -> Result<Element>,
    ) -> Result<Self> {
        let images = source.iter().map(&mut rule).collect::<Result<Vec<_>>>()?;
        FiniteMap::from_images(source, target, images)
    }

    pub fn from_images(source: FiniteSet, target: FiniteSet, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Mismatch("image count differs from source size".into()));
        }
        for y in &images {
            target.require(y)?;
        }
        Ok(FiniteMap { source, target, images })
    }

    /// Builds a map from an explicit table, which must be total on `source`.
    pub fn from_pairs(
        source: FiniteSet,
        target: FiniteSet,
        pairs: impl IntoIterator<Item = (Element, Element)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<Element>> = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.require(&x)?;
            if let Some(prev) = &slots[i] {
                if prev != &y {
                    return Err(Error::Invalid(format!("{x} is assigned both {prev} and {y}")));
                }
            }
            slots[i] = Some(y);
        }
        let images = slots
            .into_iter()
            .zip(source.iter())
            .map(|(y, x)| y.ok_or_else(|| Error::Invalid(format!("table is not total: {x} unassigned"))))
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::from_images(source, target, images)
    }

    pub fn identity(set: &FiniteSet) -> Self {
        FiniteMap { source: set.clone(), target: set.clone(), images: set.elements().to_vec() }
    }

    pub fn to_terminal(set: &FiniteSet) -> Self {
        FiniteMap { source: set.clone(), target: FiniteSet::terminal(), images: vec![Element::star(); set.len()] }
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn get(&self, x: &Element) -> Option<&Element> {
        self.source.index_of(x).map(|i| &self.images[i])
    }

    pub fn apply(&self, x: &Element) -> Result<&Element> {
        Ok(&self.images[self.source.require(x)?])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Element, &Element)> {
        self.source.iter().zip(&self.images)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<&Element> = self.images.iter().collect();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_bijection(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<FiniteMap> {
        if !self.is_bijection() {
            return Err(Error::Invalid("map is not a bijection".into()));
        }
        FiniteMap::from_pairs(
            self.target.clone(),
            self.source.clone(),
            self.pairs().map(|(x, y)| (y.clone(), x.clone())),
        )
    }

    /// Every map `source -> target`, in lexicographic order of image tuples.
    pub fn all_maps(source: &FiniteSet, target: &FiniteSet) -> Vec<FiniteMap> {
        let n = source.len();
        if n > 0 && target.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            out.push(FiniteMap {
                source: source.clone(),
                target: target.clone(),
                images: idx.iter().map(|&i| target.elements()[i].clone()).collect(),
            });
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < target.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl fmt::Debug for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} -> {y}")?;
        }
        write!(f, "}}")
    }
}

/// `g ∘ f`.
pub fn compose(g: &FiniteMap, f: &FiniteMap) -> Result<FiniteMap> {
    if f.target != g.source {
        return Err(Error::Mismatch(format!(
            "cannot compose: target {} differs from source {}",
            f.target, g.source
        )));
    }
    let images = f.images.iter().map(|y| g.apply(y).cloned()).collect::<Result<Vec<_>>>()?;
    Ok(FiniteMap { source: f.source.clone(), target: g.target.clone(), images })
}

/// `{ x | f(x) = z }`.
pub fn fiber(f: &FiniteMap, z: &Element) -> Result<FiniteSet> {
    f.target.require(z)?;
    Ok(FiniteSet::new(f.pairs().filter(|(_, y)| *y == z).map(|(x, _)| x.clone())))
}

#[derive(Clone, Debug)]
pub struct PullbackResult {
    pub apex: FiniteSet,
    pub left_projection: FiniteMap,
    pub right_projection: FiniteMap,
}

/// The chosen pullback of `f: X -> Z` and `g: Y -> Z`: the sorted set of
/// pairs `(x, y)` with `f(x) = g(y)`.
pub fn pullback(f: &FiniteMap, g: &FiniteMap) -> Result<PullbackResult> {
    if f.target != g.target {
        return Err(Error::Mismatch("pullback legs have different targets".into()));
    }
    let mut by_image: std::collections::BTreeMap<&Element, Vec<&Element>> = Default::default();
    for (y, gy) in g.pairs() {
        by_image.entry(gy).or_default().push(y);
    }
    let mut apex = Vec::new();
    for (x, fx) in f.pairs() {
        for y in by_image.get(fx).into_iter().flatten() {
            apex.push(Element::pair(x.clone(), (*y).clone()));
        }
    }
    let apex = FiniteSet::new(apex);
    let left_projection = FiniteMap::new(apex.clone(), f.source.clone(), |p| p.as_pair().unwrap().0.clone())?;
    let right_projection = FiniteMap::new(apex.clone(), g.source.clone(), |p| p.as_pair().unwrap().1.clone())?;
    Ok(PullbackResult { apex, left_projection, right_projection })
}

/// A commuting square
///
/// ```text
///   P --to_right--> Y
///   |               |
/// to_left           g
///   v               v
///   X ------f-----> Z
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub to_left: FiniteMap,
    pub to_right: FiniteMap,
    pub f: FiniteMap,
    pub g: FiniteMap,
}

/// Why a commuting square fails to be a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PullbackWitness {
    /// An element of the chosen pullback not hit by the comparison map.
    Missing(Element),
    /// Two corner elements with the same image in the chosen pullback.
    Collision(Element, Element),
}

impl fmt::Display for PullbackWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PullbackWitness::Missing(e) => write!(f, "pullback element {e} is not in the image of the corner"),
            PullbackWitness::Collision(a, b) => write!(f, "corner elements {a} and {b} have the same legs"),
        }
    }
}

/// Decides whether a commuting square is a pullback by comparing its corner
/// with the chosen pullback. Errors if the square does not commute.
pub fn is_pullback(sq: &Square) -> Result<Option<PullbackWitness>> {
    if sq.to_left.source != sq.to_right.source
        || sq.to_left.target != sq.f.source
        || sq.to_right.target != sq.g.source
        || sq.f.target != sq.g.target
    {
        return Err(Error::Mismatch("square legs do not line up".into()));
    }
    let left = compose(&sq.f, &sq.to_left)?;
    let right = compose(&sq.g, &sq.to_right)?;
    if let Some((p, _)) = left.pairs().zip(right.images()).find(|((_, a), b)| a != b) {
        return Err(Error::Law(format!("square does not commute at {}", p.0)));
    }
    let chosen = pullback(&sq.f, &sq.g)?;
    let corner = sq.to_left.source();
    let mut hit: Vec<Option<&Element>> = vec![None; chosen.apex.len()];
    for (p, x) in sq.to_left.pairs() {
        let y = sq.to_right.apply(p)?;
        let key = Element::pair(x.clone(), y.clone());
        let i = chosen.apex.require(&key)?;
        if let Some(q) = hit[i] {
            return Ok(Some(PullbackWitness::Collision(q.clone(), p.clone())));
        }
        hit[i] = Some(p);
    }
    debug_assert_eq!(corner.len(), hit.iter().filter(|h| h.is_some()).count());
    Ok(hit
        .iter()
        .position(Option::is_none)
        .map(|i| PullbackWitness::Missing(chosen.apex.elements()[i].clone())))
}

impl PullbackResult {
    pub fn square(&self, f: &FiniteMap, g: &FiniteMap) -> Square {
        Square {
            to_left: self.left_projection.clone(),
            to_right: self.right_projection.clone(),
            f: f.clone(),
            g: g.clone(),
        }
    }
}
