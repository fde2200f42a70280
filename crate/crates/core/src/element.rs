//! Canonical, totally ordered terms naming the members of every finite set.
//!
//! The derived ordering compares constructors first
//! (`Atom < Pair < Seq < Tag < Node`) and then contents lexicographically,
//! which makes every enumeration in the crate deterministic.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Atom(Arc<str>),
    Pair(Box<Element>, Box<Element>),
    Seq(Vec<Element>),
    Tag(Arc<str>, Box<Element>),
    Node(Box<Element>, Vec<Element>),
}

impl Element {
    pub fn atom(name: impl AsRef<str>) -> Self {
        Element::Atom(Arc::from(name.as_ref()))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn seq(items: Vec<Element>) -> Self {
        Element::Seq(items)
    }

    pub fn tag(label: impl AsRef<str>, inner: Element) -> Self {
        Element::Tag(Arc::from(label.as_ref()), Box::new(inner))
    }

    pub fn node(label: Element, children: Vec<Element>) -> Self {
        Element::Node(Box::new(label), children)
    }

    /// The point of the chosen terminal set `{*}`.
    pub fn star() -> Self {
        Element::atom("*")
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Element::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Element]> {
        match self {
            Element::Seq(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_tag(&self) -> Option<(&str, &Element)> {
        match self {
            Element::Tag(label, inner) => Some((label, inner)),
            _ => None,
        }
    }

    pub fn as_node(&self) -> Option<(&Element, &[Element])> {
        match self {
            Element::Node(label, children) => Some((label, children)),
            _ => None,
        }
    }

    /// Encodes as JSON: atoms are strings, compound terms are arrays headed
    /// by their constructor name.
    pub fn to_json(&self) -> Value {
        match self {
            Element::Atom(a) => Value::String(a.to_string()),
            Element::Pair(a, b) => Value::Array(vec!["pair".into(), a.to_json(), b.to_json()]),
            Element::Seq(items) => {
                let mut v = vec![Value::from("seq")];
                v.extend(items.iter().map(Element::to_json));
                Value::Array(v)
            }
            Element::Tag(label, inner) => {
                Value::Array(vec!["tag".into(), Value::String(label.to_string()), inner.to_json()])
            }
            Element::Node(label, children) => {
                let mut v = vec![Value::from("node"), label.to_json()];
                v.extend(children.iter().map(Element::to_json));
                Value::Array(v)
            }
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |why: &str| Error::Invalid(format!("bad element {value}: {why}"));
        match value {
            Value::String(s) => Ok(Element::atom(s)),
            Value::Number(n) => Ok(Element::atom(n.to_string())),
            Value::Array(items) => {
                let head = items
                    .first()
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("missing constructor"))?;
                let rest = &items[1..];
                match head {
                    "pair" if rest.len() == 2 => {
                        Ok(Element::pair(Element::from_json(&rest[0])?, Element::from_json(&rest[1])?))
                    }
                    "seq" => Ok(Element::Seq(
                        rest.iter().map(Element::from_json).collect::<Result<_>>()?,
                    )),
                    "tag" if rest.len() == 2 => {
                        let label = rest[0].as_str().ok_or_else(|| bad("tag label must be a string"))?;
                        Ok(Element::tag(label, Element::from_json(&rest[1])?))
                    }
                    "node" if !rest.is_empty() => Ok(Element::node(
                        Element::from_json(&rest[0])?,
                        rest[1..].iter().map(Element::from_json).collect::<Result<_>>()?,
                    )),
                    _ => Err(bad("unknown constructor or arity")),
                }
            }
            _ => Err(bad("expected string or array")),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(a) => write!(f, "{a}"),
            Element::Pair(a, b) => write!(f, "({a}, {b})"),
            Element::Seq(items) => {
                write!(f, "<")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ">")
            }
            Element::Tag(label, inner) => write!(f, "{label}:{inner}"),
            Element::Node(label, children) => {
                write!(f, "{label}[")?;
                for (i, e) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Element {
    fn from(s: &str) -> Self {
        Element::atom(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_order() {
        let atom = Element::atom("z");
        let pair = Element::pair("a".into(), "a".into());
        let seq = Element::seq(vec![]);
        let tag = Element::tag("a", "a".into());
        let node = Element::node("a".into(), vec![]);
        assert!(atom < pair && pair < seq && seq < tag && tag < node);
    }

    #[test]
    fn json_round_trip() {
        let e = Element::node(
            Element::tag("val", Element::pair("x".into(), Element::seq(vec!["y".into()]))),
            vec![Element::atom("3"), Element::seq(vec![])],
        );
        assert_eq!(Element::from_json(&e.to_json()).unwrap(), e);
        assert!(Element::from_json(&serde_json::json!(["bogus", 1])).is_err());
    }
}
