//! The free operad on one binary operation: its arity-n arrows are the
//! binary bracketings of n inputs.

use std::collections::BTreeMap;

use multicat::free::{free_dom, free_enumerate};
use multicat::{Element, FiniteMap, FiniteSet, Monad, MonadPlugin, TSpan};

fn main() -> multicat::Result<()> {
    let one = FiniteSet::terminal();
    let dom = [(Element::atom("b"), Element::seq(vec![Element::star(); 2]))].into_iter().collect();
    let g = TSpan::new(Monad::FreeMonoid, one, dom, FiniteMap::to_terminal(&FiniteSet::atoms(["b"])))?;

    let arrows = free_enumerate(&g, 5, Some(6))?;
    let mut by_arity = BTreeMap::new();
    for t in &arrows {
        *by_arity.entry(g.plugin.labels(&free_dom(&g, t)?)?.len()).or_insert(0) += 1;
    }
    for (n, k) in by_arity {
        println!("arity {n}: {k}");
    }
    Ok(())
}
