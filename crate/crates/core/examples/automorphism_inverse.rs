//! Certifying invertibility by Nielsen reduction, and the obstruction
//! reported for a map that is not invertible.

use freedyn::automorphisms::{Automorphism, Endomorphism};

pub fn run() -> anyhow::Result<()> {
    let alpha = Automorphism::from_strs(&["cb", "a", "ba"])?;
    println!("alpha:   {alpha}");
    println!("inverse: {}", alpha.inverse());
    println!("alpha^3: {}", alpha.power(3));

    let text = "rank 2\na -> ab\nb -> ab\n";
    let phi = Endomorphism::from_text(text)?;
    match Automorphism::verify_and_invert(&phi) {
        Ok(a) => println!("unexpectedly invertible: {a}"),
        Err(e) => println!("{phi}: {e}"),
    }

    let twisted = alpha.twist(&freedyn::words::Word::parse("a", 3)?, 2)?;
    println!("a-twist of alpha^2: {twisted}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
