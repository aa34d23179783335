//! Translation lengths in the trees of the Fibonacci automorphism and its
//! inverse, and a check that no class is elliptic in just one of them.

use freedyn::automorphisms::Automorphism;
use freedyn::trees::{ellipticity_check, product_trees_check, TreeContext};
use freedyn::words::Word;

pub fn run() -> anyhow::Result<()> {
    let fib = Automorphism::from_strs(&["ab", "a"])?;
    let ctx = TreeContext::for_automorphism(&fib, 100, 6, 1e-10)?;
    println!("lambda = {:.10}", ctx.pf().lambda);
    let g = Word::parse("aB", 2)?;
    let l = ctx.word_length(&g, 40, 1e-9)?.value;
    let l_image = ctx.word_length(&fib.apply(&g)?, 40, 1e-9)?.value;
    println!("l(aB) = {l:.10}, l(alpha(aB)) = {l_image:.10}, ratio {:.10}", l_image / l);

    let commutator = Word::parse("abAB", 2)?;
    let e = ellipticity_check(&ctx, &fib, &commutator, 40, 1e-9)?;
    println!("abAB is {:?} (invariant under alpha^{:?})", e.verdict, e.invariant_power);

    let sample: Vec<Word> = ["a", "b", "ab", "aB", "abAB", "aab", "abb"].iter().map(|s| Word::parse(s, 2)).collect::<Result<_, _>>()?;
    let report = product_trees_check(&fib, &sample, 40, 1e-9)?;
    for row in &report.rows {
        println!("{:>6}: {:?} / {:?} {}", row.class, row.length, row.length_inverse, row.status);
    }
    println!("elliptic in only one tree: {}, epsilon {:?}", report.mismatches, report.epsilon);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
