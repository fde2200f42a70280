//! The free strict monoidal category on the terminal operad is Δ: the
//! table prints the number of arrows m -> n.

use multicat::transport::structured::free_structured;
use multicat::{terminal_multicat, Element, Monad};

fn main() -> multicat::Result<()> {
    let bound = 4;
    let d = free_structured(&terminal_multicat(&Monad::FreeMonoid, bound)?, bound)?;
    let word = |n| Element::seq(vec![Element::star(); n]);
    print!("m\\n");
    for n in 0..=bound {
        print!("{n:>5}");
    }
    println!();
    for m in 0..=bound {
        print!("{m:>3}");
        for n in 0..=bound {
            print!("{:>5}", d.hom_count(&word(m), &word(n)));
        }
        println!();
    }
    Ok(())
}
