//! Fixed words and a fixed boundary point of a -> a, b -> aba, which is
//! attracting from one side and repelling from the other. Its square
//! root a -> A, b -> AB swaps the two ends of `a`.

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{classify_fixed_point, fixed_words, omega_limit, omega_limit_boundary, OmegaConfig, Point};
use freedyn::words::Word;

pub fn run() -> anyhow::Result<()> {
    let alpha = Automorphism::from_strs(&["a", "aba"])?;
    let cfg = OmegaConfig::default();
    let fixed: Vec<String> = fixed_words(&alpha, 3).iter().map(Word::to_string).collect();
    println!("fixed words up to length 3: {}", fixed.join(" "));

    let x = Point::parse("(a)^inf", 2)?;
    let class = classify_fixed_point(&alpha, &x, 32, &cfg)?;
    println!("{x}: {:?}, fixed element {:?}", class.kind, class.fixed_element.map(|w| w.to_string()));
    for p in class.evidence.iter().take(4) {
        println!("  perturb {} at depth {}: forward {:?}, backward {:?}", p.seed, p.depth, p.forward, p.backward);
    }

    for seed in ["b", "abab", "B", "aBB"] {
        let lim = omega_limit(&alpha, &Word::parse(seed, 2)?, &cfg)?;
        println!("limit of {seed}: {}", lim.points[0]);
    }

    let beta = Automorphism::from_strs(&["A", "AB"])?;
    println!("beta^2 = {}", beta.power(2));
    let lim = omega_limit_boundary(&beta, &x, &cfg)?;
    let pts: Vec<String> = lim.points.iter().map(Point::to_string).collect();
    println!("beta moves {x} through a cycle of period {}: {}", lim.period, pts.join(" -> "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
