//! Reduced words, eventually periodic boundary points and the Gromov
//! product between them.

use freedyn::words::{gromov_product, EpWord, Word};

pub fn run() -> anyhow::Result<()> {
    let g = Word::parse("abBAca", 3)?;
    println!("abBAca reduces to {g}");
    let h = Word::parse("cbA", 3)?;
    println!("({g})({h}) = {}", g.mul(&h));
    println!("inverse of {h} is {}", h.invert());

    let cyc = Word::parse("bcaB", 3)?;
    let (conj, core) = cyc.cyclic_reduce();
    println!("{cyc} = {conj}·{core}·{}; class key {}", conj.invert(), cyc.conjugacy_key());

    // the same boundary point written two ways
    let x = EpWord::parse("ab(ab)^inf", 3)?;
    let y = EpWord::parse("(ab)^inf", 3)?;
    println!("{x} and {y} are the same point: {}", x.same_point(&y));

    let z = EpWord::parse("aba(c)^inf", 3)?;
    println!("({y}|{z}) = {:?}", gromov_product(&y, &z));
    println!("({y}|{g}) = {:?}", gromov_product(&y, &g));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
