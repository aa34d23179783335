//! Improving a rose map to a train track, then reading off its strata,
//! gates and indivisible Nielsen paths.

use freedyn::automorphisms::Automorphism;
use freedyn::graphmaps::{find_inps, strata, try_make_train_track, GraphMap};

pub fn run() -> anyhow::Result<()> {
    let alpha = Automorphism::from_strs(&["ba", "baB"])?;
    let rose = GraphMap::rose_from_automorphism(&alpha);
    println!("rose is a train track: {}", rose.is_train_track(6)?);
    for s in strata(&rose, 1e-9) {
        println!("  rose stratum {:?} lambda {:?}", s.class, s.pf.map(|p| p.lambda));
    }

    let out = try_make_train_track(&rose, 100, 6);
    println!("success: {} after moves {:?}", out.is_success(), out.trace());
    let f = out.map();
    print!("{}", f.to_text());
    for s in strata(f, 1e-9) {
        println!("  stratum {:?} lambda {:?}", s.class, s.pf.map(|p| p.lambda));
    }
    let ts = f.turn_structure()?;
    let gates: Vec<Vec<String>> = ts.gates().iter().map(|g| g.iter().map(|&d| f.graph().dir_name(d)).collect()).collect();
    println!("gates: {gates:?}");
    for p in find_inps(f, 8)? {
        println!("Nielsen path {} with {} illegal turns", p.path.display(f.graph()), p.illegal_turns);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
