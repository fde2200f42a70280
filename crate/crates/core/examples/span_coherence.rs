//! Span composition is associative and unital only up to the canonical
//! invertible 2-cells; this prints their sizes for three spans.

use multicat::spans::{associator, left_unitor, right_unitor};
use multicat::{compose_spans, terminal_multicat, Monad};

fn main() -> multicat::Result<()> {
    // the underlying graph of the terminal operad: one arrow per arity <= 2
    let a = terminal_multicat(&Monad::FreeMonoid, 2)?.graph();
    let aa = compose_spans(&a, &a)?;
    println!("|A| = {}, |A∘A| = {}", a.apex.len(), aa.apex.len());

    let assoc = associator(&a, &a, &a)?;
    println!("associator: {} elements, invertible {}", assoc.map.source().len(), assoc.is_invertible());
    println!("left unitor invertible {}", left_unitor(&a)?.is_invertible());
    println!("right unitor invertible {}", right_unitor(&a)?.is_invertible());
    Ok(())
}
