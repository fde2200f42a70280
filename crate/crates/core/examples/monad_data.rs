//! A multicategory is the same as its monad on sets over the objects
//! together with the cartesian projection; this rebuilds one from the other.

use multicat::algebras::SliceObject;
use multicat::transport::characterization::{check_package, monad_data, recover_multicat};
use multicat::{terminal_multicat, FiniteMap, FiniteSet, Monad};

fn main() -> multicat::Result<()> {
    let m = terminal_multicat(&Monad::FreeMonoid, 3)?;
    let x = SliceObject::new(FiniteMap::to_terminal(&FiniteSet::range(2)));
    let pkg = monad_data(&m, &[x])?;
    for ev in &pkg.evaluations {
        println!("|X| = {}: |X_⊙| = {}, {} composites", ev.input.carrier.len(), ev.output.carrier.len(), ev.mult.len());
    }
    println!("package laws: {}", check_package(&pkg)?.passed());
    println!("recovered equal: {}", recover_multicat(&pkg)? == m);
    Ok(())
}
