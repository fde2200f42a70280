//! Counts opetopes by dimension and size, and prints one 3-dimensional
//! opetope with its target.

use multicat::free::opetope::enumerate_opetopes;

fn main() -> multicat::Result<()> {
    for dim in 0..=3 {
        let all = enumerate_opetopes(dim, 4)?;
        println!("dimension {dim}, size <= 4: {}", all.len());
    }
    let threes = enumerate_opetopes(3, 4)?;
    let o = threes.iter().max_by_key(|o| o.faces().len()).expect("there are 3-opetopes");
    println!("{} with {} faces", o.to_element(), o.faces().len());
    println!("target {}", o.target()?.to_element());
    Ok(())
}
