//! The graph joining backward limits to forward limits of short words,
//! printed in DOT.

use freedyn::automorphisms::Automorphism;
use freedyn::dynamics::{gamma_graph, OmegaConfig, Point};
use freedyn::words::all_reduced_words;

pub fn run() -> anyhow::Result<()> {
    let alpha = Automorphism::from_strs(&["a", "aba"])?;
    let seeds: Vec<Point> = all_reduced_words(2, 2).into_iter().filter(|w| !w.is_empty()).map(Point::Finite).collect();
    let g = gamma_graph(&alpha, &seeds, &OmegaConfig::default());
    println!("{} repelling, {} attracting, {} edges", g.repelling.len(), g.attracting.len(), g.edges.len());
    print!("{}", g.to_dot());
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
