//! Driving the command line in-process on the bundled data files.

pub fn run() -> anyhow::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let intro = format!("{data}/intro.aut");
    for args in [
        vec!["freedyn", "verify", "--aut", &intro],
        vec!["freedyn", "omega", "--aut", &intro, "--word", "a"],
        vec!["freedyn", "pf", "--matrix", "1,1;1,0"],
    ] {
        let out = freedyn::cli::run(&args);
        print!("$ {}\n{}", args[1..].join(" "), out.stdout);
        anyhow::ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run()
}
