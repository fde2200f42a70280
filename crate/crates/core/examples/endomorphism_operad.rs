//! Maps from an operad into End(X) are the same as algebras on X.

use multicat::algebras::endo::{algebra_operad_correspondence, endomorphism_operad};
use multicat::algebras::standard_carrier;
use multicat::{terminal_multicat, Monad};

fn main() -> multicat::Result<()> {
    let x = standard_carrier(2);
    let end = endomorphism_operad(&x, 2)?;
    println!("End(X), |X| = 2, arity <= 2: {} operations", end.arrows.len());
    println!("axioms: {}", end.check_axioms()?.passed());

    let t = terminal_multicat(&Monad::FreeMonoid, 2)?;
    let c = algebra_operad_correspondence(&t, &x, 2)?;
    println!("algebras {} maps {} bijective {}", c.algebras.len(), c.maps.len(), c.bijective);
    Ok(())
}
