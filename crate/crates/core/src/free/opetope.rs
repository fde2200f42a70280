//! Opetopes as nested pasting trees.
//!
//! A 0-opetope is the point and the unique 1-opetope is the arrow. For
//! `n >= 1`, an `(n+1)`-opetope is a tree whose nodes are labelled by
//! `n`-opetopes: a node labelled `g` has one child per position of `g`, and
//! each child is either a node whose label has target equal to that
//! position's face, or an identity leaf carrying the face itself. The
//! positions of a tree are its nodes in preorder, the face at a node is its
//! label, and the target is the `n`-opetope obtained by pasting all labels
//! together.
//!
//! Pasting needs to know which leaf of a tree lands on which position of
//! its target, so the core operations are generic over an annotation `A`
//! carried by positions. Computing a target annotated with leaf numbers
//! gives exactly that correspondence.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{guard, Error, Result, DEFAULT_CAP};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Opetope {
    Point,
    Cell(Arc<Cell<()>>),
}

/// An opetope of dimension at least one, with an annotation per position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cell<A> {
    Arrow(A),
    Tree(Tree<A>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tree<A> {
    Ident(Opetope),
    /// Annotation, label (an opetope one dimension down), children.
    Node(A, Opetope, Vec<Tree<A>>),
}

impl Opetope {
    pub fn arrow() -> Self {
        Opetope::Cell(Arc::new(Cell::Arrow(())))
    }

    fn tree(t: Tree<()>) -> Self {
        Opetope::Cell(Arc::new(Cell::Tree(t)))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Opetope::Point => 0,
            Opetope::Cell(c) => c.dimension(),
        }
    }

    /// Faces at the positions, in canonical order; the point has none.
    pub fn faces(&self) -> Vec<Opetope> {
        match self {
            Opetope::Point => Vec::new(),
            Opetope::Cell(c) => c.positions().into_iter().map(|(f, _)| f).collect(),
        }
    }

    pub fn target(&self) -> Result<Opetope> {
        match self {
            Opetope::Point => Err(Error::Invalid("the point has no target".into())),
            Opetope::Cell(c) => c.target(),
        }
    }

    /// Number of tree constructors, counting those inside labels and leaves.
    pub fn size(&self) -> usize {
        match self {
            Opetope::Point => 0,
            Opetope::Cell(c) => match &**c {
                Cell::Arrow(()) => 0,
                Cell::Tree(t) => tree_size(t),
            },
        }
    }

    /// Identity leaves of a tree; the arrow counts its single input.
    pub fn leaf_count(&self) -> usize {
        fn go<A>(t: &Tree<A>) -> usize {
            match t {
                Tree::Ident(_) => 1,
                Tree::Node(_, _, ch) => ch.iter().map(go).sum(),
            }
        }
        match self {
            Opetope::Point => 0,
            Opetope::Cell(c) => match &**c {
                Cell::Arrow(()) => 1,
                Cell::Tree(t) => go(t),
            },
        }
    }

    /// The opetope with one position whose face and target are both `self`.
    pub fn unit(&self) -> Opetope {
        Opetope::Cell(Arc::new(unit(self, ())))
    }

    fn cell(&self) -> Result<&Cell<()>> {
        match self {
            Opetope::Point => Err(Error::Invalid("expected an opetope of dimension at least one".into())),
            Opetope::Cell(c) => Ok(c),
        }
    }

    pub fn to_element(&self) -> Element {
        match self {
            Opetope::Point => Element::atom("pt"),
            Opetope::Cell(c) => match &**c {
                Cell::Arrow(()) => Element::atom("arr"),
                Cell::Tree(t) => tree_to_element(t),
            },
        }
    }

    /// Parses and type-checks a serialized opetope.
    pub fn from_element(e: &Element) -> Result<Opetope> {
        let o = match e.as_atom() {
            Some("pt") => Opetope::Point,
            Some("arr") => Opetope::arrow(),
            _ => Opetope::tree(tree_from_element(e)?),
        };
        o.check()?;
        Ok(o)
    }

    /// Checks that every child fits the position it is attached to.
    pub fn check(&self) -> Result<()> {
        if let Opetope::Cell(c) = self {
            if let Cell::Tree(t) = &**c {
                check_tree(t)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Opetope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

impl fmt::Debug for Opetope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn tree_size<A>(t: &Tree<A>) -> usize {
    match t {
        Tree::Ident(s) => s.size(),
        Tree::Node(_, g, ch) => 1 + g.size() + ch.iter().map(tree_size).sum::<usize>(),
    }
}

fn tree_to_element(t: &Tree<()>) -> Element {
    match t {
        Tree::Ident(s) => Element::tag("id", s.to_element()),
        Tree::Node((), g, ch) => Element::node(g.to_element(), ch.iter().map(tree_to_element).collect()),
    }
}

fn tree_from_element(e: &Element) -> Result<Tree<()>> {
    if let Some(("id", s)) = e.as_tag() {
        return Ok(Tree::Ident(Opetope::from_element(s)?));
    }
    match e.as_node() {
        Some((g, ch)) => {
            let g = Opetope::from_element(g)?;
            if g == Opetope::Point {
                return Err(Error::malformed(e, "a node cannot be labelled by the point"));
            }
            Ok(Tree::Node((), g, ch.iter().map(tree_from_element).collect::<Result<_>>()?))
        }
        None => Err(Error::malformed(e, "not an opetope")),
    }
}

fn cod<A>(t: &Tree<A>) -> Result<Opetope> {
    match t {
        Tree::Ident(s) => Ok(s.clone()),
        Tree::Node(_, g, _) => g.target(),
    }
}

fn check_tree<A>(t: &Tree<A>) -> Result<usize> {
    match t {
        Tree::Ident(s) => {
            s.check()?;
            Ok(s.dimension() + 2)
        }
        Tree::Node(_, g, ch) => {
            g.check()?;
            let faces = g.faces();
            if faces.len() != ch.len() {
                return Err(Error::Mismatch(format!("{g} has {} positions but {} children", faces.len(), ch.len())));
            }
            for (f, c) in faces.iter().zip(ch) {
                let d = check_tree(c)?;
                if d != g.dimension() + 1 || &cod(c)? != f {
                    return Err(Error::Mismatch(format!("a child does not fit the face {f} of {g}")));
                }
            }
            Ok(g.dimension() + 1)
        }
    }
}

impl<A: Clone> Cell<A> {
    pub fn dimension(&self) -> usize {
        match self {
            Cell::Arrow(_) => 1,
            Cell::Tree(Tree::Ident(s)) => s.dimension() + 2,
            Cell::Tree(Tree::Node(_, g, _)) => g.dimension() + 1,
        }
    }

    /// `(face, annotation)` for each position, nodes in preorder.
    pub fn positions(&self) -> Vec<(Opetope, A)> {
        fn go<A: Clone>(t: &Tree<A>, out: &mut Vec<(Opetope, A)>) {
            if let Tree::Node(a, g, ch) = t {
                out.push((g.clone(), a.clone()));
                ch.iter().for_each(|c| go(c, out));
            }
        }
        match self {
            Cell::Arrow(a) => vec![(Opetope::Point, a.clone())],
            Cell::Tree(t) => {
                let mut out = Vec::new();
                go(t, &mut out);
                out
            }
        }
    }

    pub fn erase(&self) -> Opetope {
        fn go<A>(t: &Tree<A>) -> Tree<()> {
            match t {
                Tree::Ident(s) => Tree::Ident(s.clone()),
                Tree::Node(_, g, ch) => Tree::Node((), g.clone(), ch.iter().map(go).collect()),
            }
        }
        match self {
            Cell::Arrow(_) => Opetope::arrow(),
            Cell::Tree(t) => Opetope::tree(go(t)),
        }
    }

    pub fn target(&self) -> Result<Opetope> {
        match self {
            Cell::Arrow(_) => Ok(Opetope::Point),
            Cell::Tree(t) => Ok(leaf_target(t)?.erase()),
        }
    }
}

/// The one-position opetope on `s`, annotated by `a`.
pub fn unit<A: Clone>(s: &Opetope, a: A) -> Cell<A> {
    match s {
        Opetope::Point => Cell::Arrow(a),
        Opetope::Cell(_) => Cell::Tree(Tree::Node(a, s.clone(), s.faces().into_iter().map(Tree::Ident).collect())),
    }
}

/// Pastes `f(i, a)` into the `i`-th position of `w`; each pasted piece must
/// have that position's face as its target.
pub fn substitute<A: Clone, B: Clone>(
    w: &Cell<A>,
    f: &mut dyn FnMut(usize, &A) -> Result<Cell<B>>,
) -> Result<Cell<B>> {
    match w {
        Cell::Arrow(a) => match f(0, a)? {
            c @ Cell::Arrow(_) => Ok(c),
            Cell::Tree(_) => Err(Error::Mismatch("only an arrow can replace an arrow".into())),
        },
        Cell::Tree(t) => {
            let mut next = 0;
            Ok(Cell::Tree(substitute_tree(t, &mut next, f)?))
        }
    }
}

fn substitute_tree<A: Clone, B: Clone>(
    t: &Tree<A>,
    next: &mut usize,
    f: &mut dyn FnMut(usize, &A) -> Result<Cell<B>>,
) -> Result<Tree<B>> {
    match t {
        Tree::Ident(s) => Ok(Tree::Ident(s.clone())),
        Tree::Node(a, g, ch) => {
            let i = *next;
            *next += 1;
            let kids = ch.iter().map(|c| substitute_tree(c, next, f)).collect::<Result<Vec<_>>>()?;
            let rho = match f(i, a)? {
                Cell::Tree(r) => r,
                Cell::Arrow(_) => return Err(Error::Mismatch("an arrow cannot replace a tree node".into())),
            };
            let annotated = leaf_target(&rho)?;
            if &annotated.erase() != g {
                return Err(Error::Mismatch(format!("pasted piece has the wrong target for {g}")));
            }
            // position j of g is hit by leaf slot[j] of rho
            let mut by_leaf: Vec<Option<Tree<B>>> = vec![None; kids.len()];
            for ((_, leaf), kid) in annotated.positions().into_iter().zip(kids) {
                by_leaf[leaf] = Some(kid);
            }
            let mut leaf = 0;
            Ok(plug(&rho, &mut leaf, &mut by_leaf))
        }
    }
}

fn plug<B: Clone>(t: &Tree<B>, leaf: &mut usize, by_leaf: &mut [Option<Tree<B>>]) -> Tree<B> {
    match t {
        Tree::Ident(_) => {
            let k = by_leaf[*leaf].take().expect("every leaf receives a child");
            *leaf += 1;
            k
        }
        Tree::Node(b, g, ch) => Tree::Node(b.clone(), g.clone(), ch.iter().map(|c| plug(c, leaf, by_leaf)).collect()),
    }
}

/// The target of `t`, each position annotated by the leaf of `t` (numbered
/// left to right) that it comes from.
pub fn leaf_target<A: Clone>(t: &Tree<A>) -> Result<Cell<usize>> {
    fn go<A: Clone>(t: &Tree<A>, leaves: &mut usize) -> Result<Cell<usize>> {
        match t {
            Tree::Ident(s) => {
                *leaves += 1;
                Ok(unit(s, *leaves - 1))
            }
            Tree::Node(_, g, ch) => {
                let mut pieces = ch.iter().map(|c| go(c, leaves)).collect::<Result<Vec<_>>>()?;
                let g = g.cell()?;
                substitute(g, &mut |i, _| Ok(std::mem::replace(&mut pieces[i], Cell::Arrow(usize::MAX))))
            }
        }
    }
    go(t, &mut 0)
}

/// All opetopes of dimension `dim` and size at most `bound`, sorted.
pub fn enumerate_opetopes(dim: usize, bound: usize) -> Result<Vec<Opetope>> {
    let mut out = match dim {
        0 => vec![Opetope::Point],
        1 => vec![Opetope::arrow()],
        _ => {
            let labels = if bound == 0 { Vec::new() } else { enumerate_opetopes(dim - 1, bound - 1)? };
            let colours = enumerate_opetopes(dim - 2, bound)?;
            let mut e = Enumerator { labels, memo: HashMap::new() };
            let mut out = Vec::new();
            for s in &colours {
                out.extend(e.trees(s, bound)?.into_iter().map(|(t, _)| Opetope::tree(t)));
            }
            out
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

struct Enumerator {
    labels: Vec<Opetope>,
    memo: HashMap<(Opetope, usize), Vec<(Tree<()>, usize)>>,
}

impl Enumerator {
    /// Trees with codomain `s` and their sizes, all within `budget`.
    fn trees(&mut self, s: &Opetope, budget: usize) -> Result<Vec<(Tree<()>, usize)>> {
        if let Some(v) = self.memo.get(&(s.clone(), budget)) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if s.size() <= budget {
            out.push((Tree::Ident(s.clone()), s.size()));
        }
        for g in self.labels.clone() {
            let cost = 1 + g.size();
            if cost > budget || &g.target()? != s {
                continue;
            }
            let faces = g.faces();
            let mut acc = Vec::new();
            self.fill(&faces, budget - cost, &mut acc, &mut |kids, used| {
                out.push((Tree::Node((), g.clone(), kids.to_vec()), cost + used));
            })?;
            guard("opetopes", out.len(), DEFAULT_CAP)?;
        }
        self.memo.insert((s.clone(), budget), out.clone());
        Ok(out)
    }

    fn fill(
        &mut self,
        faces: &[Opetope],
        budget: usize,
        acc: &mut Vec<Tree<()>>,
        emit: &mut dyn FnMut(&[Tree<()>], usize),
    ) -> Result<()> {
        self.fill_from(faces, budget, 0, acc, emit)
    }

    fn fill_from(
        &mut self,
        faces: &[Opetope],
        budget: usize,
        used: usize,
        acc: &mut Vec<Tree<()>>,
        emit: &mut dyn FnMut(&[Tree<()>], usize),
    ) -> Result<()> {
        let Some(f) = faces.get(acc.len()) else {
            emit(acc, used);
            return Ok(());
        };
        for (t, k) in self.trees(f, budget - used)? {
            acc.push(t);
            self.fill_from(faces, budget, used + k, acc, emit)?;
            acc.pop();
        }
        Ok(())
    }
}
