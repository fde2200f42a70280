//! Algebras for the terminal plain operad are monoids; counting them on
//! small carriers recovers the number of monoid structures.

use multicat::algebras::{check_algebra, enumerate_algebras};
use multicat::{terminal_multicat, Monad};

fn main() -> multicat::Result<()> {
    // arities up to 3 so that associativity is tested, not skipped
    let t = terminal_multicat(&Monad::FreeMonoid, 3)?;
    let all = enumerate_algebras(&t, 2)?;
    for n in 0..=2 {
        let k = all.iter().filter(|a| a.carrier.carrier.len() == n).count();
        println!("carrier of size {n}: {k} algebras");
    }
    let a = all.last().expect("at least one algebra");
    println!("last one: {}", a.to_json());
    println!("re-checked: {}", check_algebra(&t, a)?.passed());
    Ok(())
}
