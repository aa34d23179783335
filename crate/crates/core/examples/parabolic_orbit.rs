//! A word whose forward and backward orbits converge to the same
//! boundary point, under a -> a, b -> ba, c -> caa, d -> dca.

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{omega_limit, OmegaConfig, Point};
use freedyn::words::Word;

pub fn run() -> anyhow::Result<()> {
    let gamma = Automorphism::from_strs(&["a", "ba", "caa", "dca"])?;
    let g = Word::parse("baD", 4)?;
    let target = Point::parse("b(A)^inf", 4)?;
    let cfg = OmegaConfig::default();
    for (name, map) in [("forward", gamma.clone()), ("backward", gamma.inverse())] {
        let lim = omega_limit(&map, &g, &cfg)?;
        println!(
            "{name}: period {}, limit {}, equals {target}: {}",
            lim.period,
            lim.points[0].snippet(32),
            lim.points[0].same_limit(&target, cfg.cert_depth)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
