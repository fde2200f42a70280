//! Graphviz emitters. Node ids are assigned in preorder, so the output is a
//! function of the input term alone.

use std::fmt::Write;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::free::opetope::{Cell, Opetope, Tree};
use crate::monads::MonadPlugin;
use crate::spans::TSpan;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as ellipses, arrows as boxes; an edge per input position,
/// labelled with its index, and one edge to the codomain.
pub fn graph_dot(g: &TSpan) -> Result<String> {
    let mut out = String::from("digraph graph_ {\n  rankdir=LR;\n");
    for s in g.source.iter().chain(g.target.iter().filter(|t| !g.source.contains(t))) {
        writeln!(out, "  {} [shape=ellipse];", quote(&format!("obj {s}"))).unwrap();
    }
    for a in &g.apex {
        let an = quote(&format!("arr {a}"));
        writeln!(out, "  {an} [shape=box, label={}];", quote(&a.to_string())).unwrap();
        for (i, s) in g.plugin.labels(g.dom_of(a)?)?.iter().enumerate() {
            writeln!(out, "  {} -> {an} [label=\"{i}\"];", quote(&format!("obj {s}"))).unwrap();
        }
        writeln!(out, "  {an} -> {};", quote(&format!("obj {}", g.cod.apply(a)?))).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

struct Emitter {
    out: String,
    next: usize,
}

impl Emitter {
    fn new(name: &str) -> Self {
        Emitter { out: format!("digraph {name} {{\n  rankdir=BT;\n"), next: 0 }
    }

    fn vertex(&mut self, label: &str, shape: &str) -> String {
        let id = format!("n{}", self.next);
        self.next += 1;
        writeln!(self.out, "  {id} [shape={shape}, label={}];", quote(label)).unwrap();
        id
    }

    fn edge(&mut self, child: &str, parent: &str, label: usize) {
        writeln!(self.out, "  {child} -> {parent} [label=\"{label}\"];").unwrap();
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

/// A free arrow as a tree: generators are boxes, identities are points
/// labelled by their object.
pub fn free_arrow_dot(g: &TSpan, t: &Element) -> Result<String> {
    fn go(g: &TSpan, t: &Element, e: &mut Emitter) -> Result<String> {
        match t {
            Element::Tag(l, s) if &**l == "id" => Ok(e.vertex(&s.to_string(), "point")),
            Element::Node(a, w) if w.len() == 1 => {
                let id = e.vertex(&a.to_string(), "box");
                for (i, c) in g.plugin.labels(&w[0])?.iter().enumerate() {
                    let cid = go(g, c, e)?;
                    e.edge(&cid, &id, i);
                }
                Ok(id)
            }
            _ => Err(Error::malformed(t, "not a free arrow")),
        }
    }
    let mut e = Emitter::new("free_arrow");
    go(g, t, &mut e)?;
    Ok(e.finish())
}

/// The pasting tree of an opetope: each node is labelled with the number of
/// inputs of its face, each leaf is a point.
pub fn opetope_dot(o: &Opetope) -> String {
    fn go(t: &Tree<()>, e: &mut Emitter) -> String {
        match t {
            Tree::Ident(_) => e.vertex("", "point"),
            Tree::Node((), face, children) => {
                let id = e.vertex(&face.leaf_count().to_string(), "circle");
                for (i, c) in children.iter().enumerate() {
                    let cid = go(c, e);
                    e.edge(&cid, &id, i);
                }
                id
            }
        }
    }
    let mut e = Emitter::new("opetope");
    match o {
        Opetope::Point => {
            e.vertex("pt", "point");
        }
        Opetope::Cell(c) => match &**c {
            Cell::Arrow(()) => {
                let a = e.vertex("", "point");
                let b = e.vertex("", "point");
                e.edge(&a, &b, 0);
            }
            Cell::Tree(t) => {
                go(t, &mut e);
            }
        },
    }
    e.finish()
}
