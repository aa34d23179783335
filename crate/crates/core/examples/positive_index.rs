//! Searching twists `i_w ∘ α^q` for one with at least four fixed boundary
//! points.

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{positive_index_search, OmegaConfig};

pub fn run() -> anyhow::Result<()> {
    let fib = Automorphism::from_strs(&["ab", "a"])?;
    match positive_index_search(&fib, 4, 2, 200, &OmegaConfig::default()) {
        Ok(hit) => {
            println!("q = {}, w = {} after {} candidates", hit.q, hit.w, hit.tried);
            for p in &hit.fixed_points {
                println!("  fixed {}", p.snippet(32));
            }
        }
        Err(e) => println!("{e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
