//! Slicing an operad by one of its algebras gives a multicategory whose
//! objects are the carrier's elements.

use multicat::algebras::enumerate_algebras;
use multicat::algebras::slice::{slice_multicat, slicing_agreement};
use multicat::{terminal_multicat, FiniteMap, FiniteSet, Monad};

fn main() -> multicat::Result<()> {
    let t = terminal_multicat(&Monad::FreeMonoid, 2)?;
    for a in enumerate_algebras(&t, 2)?.iter().filter(|a| a.carrier.carrier.len() == 2) {
        let s = slice_multicat(&t, a)?;
        let x = &a.carrier.carrier;
        let q = FiniteMap::new(FiniteSet::range(2), x.clone(), |_| x.elements()[0].clone())?;
        println!(
            "slice: {} objects, {} arrows, axioms {}, agreement {}",
            s.objects.len(),
            s.arrows.len(),
            s.check_axioms()?.passed(),
            slicing_agreement(&t, a, &q)?.passed()
        );
    }
    Ok(())
}
