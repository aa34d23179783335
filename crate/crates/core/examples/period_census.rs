//! Periods of all short words and a few boundary points under a
//! permutation of five generators with cycle type (2, 3).

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{attraction_rate, periods_census, OmegaConfig, Point};
use freedyn::words::Word;

pub fn run() -> anyhow::Result<()> {
    let sigma = Automorphism::from_strs(&["b", "a", "d", "e", "c"])?;
    let seeds = ["(a)^inf", "(c)^inf", "(ac)^inf"].map(|s| Point::parse(s, 5)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let report = periods_census(&sigma, 2, &seeds, &OmegaConfig::default(), Some(6));
    println!("periods: {:?}", report.periods);
    println!("{} seeds, {} inconclusive, above bound: {:?}", report.entries.len(), report.inconclusive, report.violations);

    let fib = Automorphism::from_strs(&["ab", "a"])?;
    let rate = attraction_rate(&fib, &Word::parse("a", 2)?, 40, 8)?;
    println!("fibonacci: common prefix of successive images grows at rate {rate:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
