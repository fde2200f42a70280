//! A finite category is a multicategory over the identity monad, and a
//! monoid acting on a set is one over a writer monad.

use multicat::multicat::standard::{extract_standard, standard_multicat, FiniteCategory, StandardData};

fn main() -> multicat::Result<()> {
    let c = FiniteCategory::arrow_category();
    let m = standard_multicat(&StandardData::Category(c.clone()))?;
    let report = m.check_axioms()?;
    println!("objects {} arrows {} composites {}", m.objects.len(), m.arrows.len(), m.comp.len());
    println!("axioms passed: {} ({} instances)", report.passed(), report.checked.values().sum::<usize>());
    match extract_standard(&m)? {
        StandardData::Category(back) => println!("round trip: {}", back == c),
        _ => unreachable!("an identity-monad multicategory is a category"),
    }
    Ok(())
}
