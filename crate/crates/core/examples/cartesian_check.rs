//! Runs the monad laws and the cartesian squares for every built-in monad.
//!
//! cargo run --example cartesian_check

use multicat::monads::{check_cartesian, check_monad_laws, FiniteMonoid, Monad};
use multicat::FiniteSet;

fn main() -> multicat::Result<()> {
    let monads = [
        Monad::Identity,
        Monad::FreeMonoid,
        Monad::FreeCommutativeMonoid,
        Monad::exceptions(FiniteSet::atoms(["e"])),
        Monad::writer(FiniteMonoid::cyclic(2)),
        Monad::Tree,
    ];
    let z = FiniteSet::range(2);
    for t in &monads {
        let laws = check_monad_laws(t, &z, 3)?;
        let cart = check_cartesian(t, &z, 3)?;
        println!("{:<28} laws {:<5} cartesian {}", t.to_json()["name"].as_str().unwrap(), laws.passed(), cart.passed());
        if let Some(w) = cart.witnesses.first() {
            // only the commutative monoid lands here
            println!("    {} square: {}", w.square_name, w.witness);
        }
    }
    Ok(())
}
