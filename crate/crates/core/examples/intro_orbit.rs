//! The orbit of `a` under a -> cb, b -> a, c -> ba and the limit cycles
//! of `a` and `A`.

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{omega_limit, orbit, verify_cycle, OmegaConfig};
use freedyn::words::Word;

pub fn run() -> anyhow::Result<()> {
    let alpha = Automorphism::from_strs(&["cb", "a", "ba"])?;
    let trace = orbit(&alpha, &Word::parse("a", 3)?, 6);
    for (i, t) in trace.terms.iter().enumerate() {
        println!("alpha^{i}(a) = {t}");
    }

    let cfg = OmegaConfig::default();
    for seed in ["a", "A"] {
        let lim = omega_limit(&alpha, &Word::parse(seed, 3)?, &cfg)?;
        println!(
            "{seed}: period {} certified to depth {}, cyclic: {}",
            lim.period,
            lim.certificate.depth,
            verify_cycle(&alpha, &lim, cfg.cert_depth)
        );
        for p in &lim.points {
            println!("  {}", p.snippet(40));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
