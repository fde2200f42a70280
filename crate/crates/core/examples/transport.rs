//! Moving multicategories along cartesian transformations of monads.

use multicat::multicat::standard::{standard_multicat, FiniteCategory, StandardData};
use multicat::transport::{check_nat_trans, operad_from_regular_theory, transport_by_composition, CartesianNatTrans};
use multicat::Monad;

fn main() -> multicat::Result<()> {
    // trees to their leaves
    let leaves = CartesianNatTrans::leaves();
    println!("leaves is cartesian: {}", check_nat_trans(&leaves, 2)?.passed());
    let o = operad_from_regular_theory(&leaves, 3)?;
    println!("operad from trees: {} arrows, axioms {}", o.arrows.len(), o.check_axioms()?.passed());

    // a category as a plain multicategory through the unit
    let c = standard_multicat(&StandardData::Category(FiniteCategory::arrow_category()))?;
    let eta = CartesianNatTrans::unit(&Monad::FreeMonoid);
    let m = transport_by_composition(&eta, &c)?;
    println!("category over free monoid: {} arrows, axioms {}", m.arrows.len(), m.check_axioms()?.passed());
    Ok(())
}
